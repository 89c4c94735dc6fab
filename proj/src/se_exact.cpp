#include "drgsb/se_exact.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "drgsb/errors.hpp"

namespace drgsb {

AmplitudeSeries solve_volterra(const SpectralParams& p, double delta0, double dt,
                               double t_max) {
    p.validate();
    if (!p.ohmic_exponential())
        throw UnsupportedConfigError("solve_volterra: requires the Ohmic exponential-cutoff kernel");
    if (!(delta0 > 0.0)) throw std::invalid_argument("solve_volterra: delta0 must be > 0");
    if (!(dt > 0.0) || dt > 0.01 / p.omega_c + 1e-15)
        throw std::invalid_argument("solve_volterra: need 0 < dt <= 0.01/omega_c");
    if (!(t_max > dt)) throw std::invalid_argument("solve_volterra: t_max too small");

    const std::size_t n = static_cast<std::size_t>(std::llround(t_max / dt));
    std::vector<std::complex<double>> mu(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        mu[j] = memory_kernel(dt * static_cast<double>(j), p);

    AmplitudeSeries out;
    out.dt = dt;
    out.params = p;
    out.delta0 = delta0;
    out.u.assign(n + 1, {0.0, 0.0});
    out.u[0] = 1.0;

    // Trapezoidal in both the ODE part and the memory integral; the implicit
    // endpoint terms are collected into a constant scalar denominator.
    const std::complex<double> ihalf(0.0, 0.5 * dt * delta0);
    const std::complex<double> denom = 1.0 + ihalf + 0.125 * dt * dt * mu[0];
    const std::complex<double> anum = 1.0 - ihalf;
    std::complex<double> z_prev = 0.0;  // full memory integral at the previous node
    for (std::size_t k = 0; k < n; ++k) {
        // open part of the integral at node k+1: dt*(mu_{k+1} u_0/2 + sum_{j=1}^{k} mu_{k+1-j} u_j)
        std::complex<double> zt = 0.5 * mu[k + 1] * out.u[0];
        for (std::size_t m = 1; m <= k; ++m) zt += mu[m] * out.u[k + 1 - m];
        zt *= dt;
        out.u[k + 1] = (anum * out.u[k] - 0.25 * dt * (z_prev + zt)) / denom;
        z_prev = zt + 0.5 * dt * mu[0] * out.u[k + 1];
    }
    return out;
}

RateSeries extract_rates(const AmplitudeSeries& a) {
    if (a.u.size() < 3)
        throw std::invalid_argument("extract_rates: series too short for centered differences");
    RateSeries out;
    out.t.reserve(a.u.size() - 2);
    out.rates.reserve(a.u.size() - 2);
    constexpr double floor_mag = 1e-12;
    for (std::size_t k = 1; k + 1 < a.u.size(); ++k) {
        if (std::abs(a.u[k]) <= floor_mag) {
            out.truncated = true;
            break;
        }
        const std::complex<double> udot = (a.u[k + 1] - a.u[k - 1]) / (2.0 * a.dt);
        const std::complex<double> r = udot / a.u[k];
        out.t.push_back(a.dt * static_cast<double>(k));
        out.rates.push_back({-r.imag(), -r.real()});
    }
    return out;
}

RatePair rate_average(const RateSeries& s, double t_lo, double t_hi) {
    double d = 0.0, g = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        if (s.t[i] < t_lo || s.t[i] > t_hi) continue;
        d += s.rates[i].delta;
        g += s.rates[i].gamma;
        ++n;
    }
    if (n == 0) throw std::invalid_argument("rate_average: empty window");
    return {d / static_cast<double>(n), g / static_cast<double>(n)};
}

RatePair born_markov_rates(const SpectralParams& p, double delta0) {
    p.validate();
    if (!p.ohmic_exponential())
        throw UnsupportedConfigError("born_markov_rates: requires s = 1, exponential cutoff");
    if (!(delta0 > 0.0))
        throw std::invalid_argument("born_markov_rates: delta0 must be > 0");
    if (p.alpha == 0.0) return {delta0, 0.0};

    using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double J0 = spectral_density(delta0, p);
    auto J = [&](double w) { return spectral_density(w, p); };

    // PV int_0^inf J(w)/(delta0 - w) dw: the symmetric window around delta0 is
    // regularized by subtracting J(delta0) (whose PV over the window is zero).
    double err1 = 0.0, err2 = 0.0, err3 = 0.0;
    auto sub = [&](double w) {
        const double den = delta0 - w;
        if (std::fabs(den) < 1e-14 * delta0) {
            // removable point: limit is -J'(delta0)
            const double h = 1e-6 * delta0;
            return (J(delta0 + h) - J(delta0 - h)) / (-2.0 * h);
        }
        return (J(w) - J0) / den;
    };
    const double i1 = quad::integrate(sub, 0.0, delta0, 12, 1e-12, &err1);
    const double i2 = quad::integrate(sub, delta0, 2.0 * delta0, 12, 1e-12, &err2);
    const double w_top = 60.0 * p.omega_c + 2.0 * delta0;  // J ~ e^{-60} beyond
    const double i3 = quad::integrate([&](double w) { return J(w) / (delta0 - w); },
                                      2.0 * delta0, w_top, 12, 1e-12, &err3);
    const double pv = i1 + i2 + i3;
    const double scale = std::max(std::fabs(pv), J0);
    if (err1 + err2 + err3 > 1e-7 * scale)
        throw ConvergenceError("born_markov_rates: quadrature error " +
                               std::to_string(err1 + err2 + err3) + " vs scale " +
                               std::to_string(scale));
    return {delta0 + pv / (2.0 * std::numbers::pi), 0.5 * J0};
}

} // namespace drgsb
