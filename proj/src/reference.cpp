#include "drgsb/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "drgsb/flow.hpp"

namespace drgsb {

NibaValues niba_parameters(double alpha, double delta0, double omega_c) {
    if (!(alpha > 0.0) || !(alpha <= 0.5))
        throw std::domain_error("niba_parameters: requires 0 < alpha <= 1/2");
    if (!(delta0 > 0.0) || !(omega_c > 0.0))
        throw std::domain_error("niba_parameters: delta0 and omega_c must be > 0");
    const double tk = kondo_scale(alpha, delta0, omega_c);
    // cos(pi a) Gamma(1-2a) rewritten with x = 1-2a as
    // sinc(pi x/2) * (pi/2) * Gamma(1+x): finite and smooth through x = 0.
    const double x = 1.0 - 2.0 * alpha;
    const double y = 0.5 * std::numbers::pi * x;
    const double sinc = y > 1e-8 ? std::sin(y) / y : 1.0 - y * y / 6.0;
    const double f = sinc * 0.5 * std::numbers::pi * std::tgamma(1.0 + x);
    NibaValues v;
    v.delta = tk * std::pow(f, 1.0 / (2.0 * (1.0 - alpha)));
    v.gamma = 2.0 * v.delta * std::sin(std::numbers::pi * alpha / (2.0 * (1.0 - alpha)));
    v.q = v.delta / v.gamma;
    return v;
}

ComparisonRecord drg_vs_niba_report(double delta_inf, double gamma_inf,
                                    const NibaValues& n) {
    if (!std::isfinite(delta_inf) || !std::isfinite(gamma_inf) ||
        !std::isfinite(n.delta) || !std::isfinite(n.gamma))
        throw std::invalid_argument("drg_vs_niba_report: inputs must be finite");
    ComparisonRecord r;
    r.delta_rel = std::fabs(delta_inf - n.delta) / n.delta;
    if (gamma_inf > 0.0) {
        r.tau_infinite = false;
        const double tau = 1.0 / gamma_inf;
        const double tau_n = 1.0 / n.gamma;
        r.tau_rel = std::fabs(tau - tau_n) / tau_n;
        r.q_rel = std::fabs(delta_inf / gamma_inf - n.q) / n.q;
    } else {
        r.tau_infinite = true;
        r.tau_rel = std::numeric_limits<double>::infinity();
        r.q_rel = std::numeric_limits<double>::infinity();
    }
    return r;
}

} // namespace drgsb
