#include "drgsb/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "drgsb/errors.hpp"
#include "drgsb/ode.hpp"

namespace drgsb {

namespace {

double thermal_factor(double lambda, const SpectralParams& p) {
    if (p.temperature == 0.0) return 1.0;
    return 2.0 * bath_occupation(lambda, p.temperature) + 1.0;
}

void check_state(const FlowState& st) {
    if (!(st.lambda > 0.0) || !std::isfinite(st.lambda))
        throw std::invalid_argument("flow: Lambda must be > 0");
    if (!(st.delta > 0.0) || !std::isfinite(st.delta))
        throw std::invalid_argument("flow: Delta must be > 0");
    if (!(st.gamma >= 0.0) || !std::isfinite(st.gamma))
        throw std::invalid_argument("flow: gamma must be >= 0");
}

[[noreturn]] void singular(const FlowState& st) {
    std::ostringstream os;
    os << "flow: resonant denominator vanished at Lambda = " << st.lambda
       << " (Delta = " << st.delta << ", gamma = " << st.gamma
       << "); use a smaller step or a nonzero gamma seed";
    throw SingularFlowError(os.str());
}

} // namespace

FlowDerivative flow_rhs_sb(const FlowState& st, const SpectralParams& p) {
    check_state(st);
    const double J = spectral_density(st.lambda, p);
    const double d2 = st.delta * st.delta;
    const double l2 = st.lambda * st.lambda;
    const double det = d2 - l2;
    const double den = det * det + st.gamma * st.gamma * l2;
    if (den == 0.0) singular(st);
    const double th = thermal_factor(st.lambda, p) * J / den;
    return {st.delta / (2.0 * std::numbers::pi) * th * det,
            d2 / std::numbers::pi * th * st.gamma};
}

FlowDerivative flow_rhs_se(const FlowState& st, const SpectralParams& p) {
    check_state(st);
    const double J = spectral_density(st.lambda, p);
    const double det = st.delta - st.lambda;
    const double den = det * det + st.gamma * st.gamma;
    if (den == 0.0) singular(st);
    const double pref = J / (4.0 * std::numbers::pi * den);
    return {pref * det, pref * st.gamma};
}

FlowConfig FlowConfig::resolved() const {
    FlowConfig c = *this;
    c.bath.validate();
    if (c.bath.s != 1.0)
        throw UnsupportedConfigError("flow: only the Ohmic bath (s = 1) is supported");
    if (!(c.delta0 > 0.0)) throw std::invalid_argument("flow: delta0 must be > 0");
    if (c.gamma_seed < 0.0) c.gamma_seed = 1e-6 * c.delta0;
    if (c.lambda_start < 0.0) c.lambda_start = 10.0 * c.bath.omega_c;
    if (c.lambda_min < 0.0) c.lambda_min = c.delta0 / 100.0;
    if (!(c.lambda_start > c.lambda_min) || !(c.lambda_min > 0.0))
        throw std::invalid_argument("flow: need lambda_start > lambda_min > 0");
    if (!(c.eta > 0.0) || !(c.eta <= 1.0))
        throw std::invalid_argument("flow: eta must be in (0, 1]");
    if (!(c.max_rel_param_step > 0.0) || !(c.max_rel_lambda_step > 0.0))
        throw std::invalid_argument("flow: step-control bounds must be > 0");
    return c;
}

FlowTrajectory::FlowTrajectory(FlowConfig cfg, std::vector<double> lambda,
                               std::vector<double> delta, std::vector<double> gamma)
    : cfg_(std::move(cfg)), lambda_(std::move(lambda)), delta_(std::move(delta)),
      gamma_(std::move(gamma)) {
    if (lambda_.size() < 2 || lambda_.size() != delta_.size() ||
        lambda_.size() != gamma_.size())
        throw std::invalid_argument("FlowTrajectory: inconsistent sample arrays");
    for (std::size_t i = 0; i + 1 < lambda_.size(); ++i)
        if (!(lambda_[i] > lambda_[i + 1]))
            throw std::invalid_argument("FlowTrajectory: Lambda must strictly decrease");
    ln_lambda_.reserve(lambda_.size());
    for (double l : lambda_) ln_lambda_.push_back(std::log(l));
    gamma_log_ = true;
    for (double g : gamma_)
        if (!(g > 0.0)) { gamma_log_ = false; break; }
}

std::size_t FlowTrajectory::bracket(double lambda) const {
    if (!(lambda <= lambda_.front()) || !(lambda >= lambda_.back()))
        throw std::domain_error("FlowTrajectory: Lambda outside trajectory span");
    // lambda_ decreasing: find i with lambda_[i] >= lambda >= lambda_[i+1]
    const auto it = std::lower_bound(lambda_.begin(), lambda_.end(), lambda,
                                     [](double a, double b) { return a > b; });
    std::size_t i = static_cast<std::size_t>(it - lambda_.begin());
    if (i > 0) --i;
    if (i + 1 >= lambda_.size()) i = lambda_.size() - 2;
    return i;
}

double FlowTrajectory::delta_at(double lambda) const {
    const std::size_t i = bracket(lambda);
    const double w = (std::log(lambda) - ln_lambda_[i]) / (ln_lambda_[i + 1] - ln_lambda_[i]);
    return delta_[i] + w * (delta_[i + 1] - delta_[i]);
}

double FlowTrajectory::gamma_at(double lambda) const {
    const std::size_t i = bracket(lambda);
    const double w = (std::log(lambda) - ln_lambda_[i]) / (ln_lambda_[i + 1] - ln_lambda_[i]);
    if (gamma_log_)
        return std::exp(std::log(gamma_[i]) +
                        w * (std::log(gamma_[i + 1]) - std::log(gamma_[i])));
    return gamma_[i] + w * (gamma_[i + 1] - gamma_[i]);
}

namespace {

// Integrates one smooth segment [lam_hi -> lam_lo] in s = ln(lam_hi/Lambda),
// appending accepted samples. State y = (Delta, gamma); dy/ds = Lambda * RHS.
void integrate_segment(const FlowConfig& cfg, double lam_hi, double lam_lo,
                       OdeState<2>& y, std::vector<double>& lams,
                       std::vector<double>& deltas, std::vector<double>& gammas) {
    const double s_end = std::log(lam_hi / lam_lo);
    const bool se = cfg.model == FlowModel::SpontaneousEmission;
    auto rhs = [&](double s, const OdeState<2>& yy, OdeState<2>& dy) {
        const double lam = lam_hi * std::exp(-s);
        const FlowState st{lam, yy[0], yy[1]};
        const FlowDerivative d = se ? flow_rhs_se(st, cfg.bath) : flow_rhs_sb(st, cfg.bath);
        dy[0] = lam * d.ddelta_per_band;
        dy[1] = lam * d.dgamma_per_band;
    };
    constexpr double rtol = 1e-10, atol = 1e-30;
    double s = 0.0;
    double h = std::min(cfg.max_rel_lambda_step, s_end);
    while (s < s_end) {
        h = std::min(h, s_end - s);
        if (!(h > s_end * 1e-15) || !(h > 1e-15))
            throw ConvergenceError(
                "integrate_flow: step underflow at Lambda = " +
                std::to_string(lam_hi * std::exp(-s)) + " (Delta = " +
                std::to_string(y[0]) + ", gamma = " + std::to_string(y[1]) +
                "); the flow left its validity domain");
        OdeState<2> y5, err;
        bool ok = true;
        double en = 2.0;
        try {
            dopri5_step(rhs, s, y, h, y5, err);
            ok = std::isfinite(y5[0]) && std::isfinite(y5[1]) && y5[0] > 0.0;
            if (ok) en = error_norm(y, y5, err, rtol, atol);
        } catch (const std::exception&) {
            OdeState<2> probe;
            rhs(s, y, probe);  // rethrows when the current state itself is bad
            ok = false;        // otherwise a trial stage wandered out; retry smaller
        }
        if (ok && en <= 1.0) {
            // relative-change limiter on the flowing parameters
            const double rd = std::fabs(y5[0] - y[0]) / std::max(std::fabs(y[0]), 1e-300);
            const double rg = y[1] > 0.0
                                  ? std::fabs(y5[1] - y[1]) / y[1]
                                  : 0.0;
            const double rmax = std::max(rd, rg);
            if (rmax > cfg.max_rel_param_step) {
                h *= std::max(0.1, 0.7 * cfg.max_rel_param_step / rmax);
                continue;
            }
            s += h;
            y = y5;
            if (y[1] < 0.0) y[1] = 0.0;  // guard roundoff; RHS keeps gamma >= 0
            lams.push_back(lam_hi * std::exp(-s));
            deltas.push_back(y[0]);
            gammas.push_back(y[1]);
            h = std::min(next_step(h, en), cfg.max_rel_lambda_step);
        } else {
            h = ok ? std::max(next_step(h, en), 1e-3 * h) : 0.1 * h;
        }
    }
}

} // namespace

FlowTrajectory integrate_flow(const FlowConfig& raw) {
    const FlowConfig cfg = raw.resolved();
    std::vector<double> lams, deltas, gammas;
    lams.push_back(cfg.lambda_start);
    deltas.push_back(cfg.delta0);
    gammas.push_back(cfg.gamma_seed);
    OdeState<2> y{cfg.delta0, cfg.gamma_seed};

    // The sharp cutoff makes J discontinuous at omega_c: integrate piecewise.
    std::vector<double> edges{cfg.lambda_start};
    if (cfg.bath.cutoff == CutoffShape::Sharp && cfg.lambda_start > cfg.bath.omega_c &&
        cfg.lambda_min < cfg.bath.omega_c)
        edges.push_back(cfg.bath.omega_c);
    edges.push_back(cfg.lambda_min);

    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double hi = edges[k], lo = edges[k + 1];
        if (cfg.bath.cutoff == CutoffShape::Sharp && lo >= cfg.bath.omega_c) {
            // J vanishes on the whole segment: parameters are constant.
            lams.push_back(lo);
            deltas.push_back(y[0]);
            gammas.push_back(y[1]);
            continue;
        }
        integrate_segment(cfg, hi, lo, y, lams, deltas, gammas);
    }
    return FlowTrajectory(cfg, std::move(lams), std::move(deltas), std::move(gammas));
}

double kondo_scale(double alpha, double delta0, double omega_c) {
    if (!(alpha >= 0.0) || !(alpha < 1.0))
        throw std::domain_error("kondo_scale: requires 0 <= alpha < 1");
    if (!(delta0 > 0.0) || !(omega_c > 0.0))
        throw std::domain_error("kondo_scale: delta0 and omega_c must be > 0");
    return delta0 * std::pow(delta0 / omega_c, alpha / (1.0 - alpha));
}

double fixed_point_scale(const FlowTrajectory& traj) {
    const FlowConfig& cfg = traj.config();
    // Power-law segment: below the cutoff-active edge and well above resonance.
    const double w_hi = (cfg.bath.cutoff == CutoffShape::Sharp ? 0.8 : 0.25) *
                        cfg.bath.omega_c;
    const auto& lam = traj.lambdas();
    const auto& del = traj.deltas();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] > w_hi || lam[i] < 10.0 * del[i]) continue;
        const double x = std::log(lam[i]);
        const double yv = std::log(del[i]);
        sx += x; sy += yv; sxx += x * x; sxy += x * yv;
        ++n;
    }
    if (n < 8)
        throw NotFoundError("fixed_point_scale: no usable scaling segment in trajectory");
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0)
        throw NotFoundError("fixed_point_scale: degenerate scaling fit");
    const double slope = (dn * sxy - sx * sy) / denom;
    const double inter = (sy - slope * sx) / dn;
    // crossing of ln Delta_fit(x) = slope*x + inter with ln Lambda = x
    auto g = [&](double x) { return slope * x + inter - x; };
    double a = std::log(lam.back());
    double b = std::log(lam.front());
    if (!(g(a) * g(b) < 0.0))
        throw NotFoundError("fixed_point_scale: fitted crossing outside integrated range");
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(std::fabs(a), std::fabs(b));
         ++it) {
        const double m = 0.5 * (a + b);
        if (g(a) * g(m) <= 0.0) b = m; else a = m;
    }
    return std::exp(0.5 * (a + b));
}

RateSchedule to_time_schedule(const FlowTrajectory& traj, double eta) {
    if (!(eta > 0.0) || !(eta <= 1.0))
        throw std::invalid_argument("to_time_schedule: eta must be in (0, 1]");
    const auto& lam = traj.lambdas();
    const std::size_t n = lam.size();
    std::vector<double> t(n), d(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = eta / lam[i];  // Lambda decreasing makes t strictly increasing
        d[i] = traj.deltas()[i];
        g[i] = traj.gammas()[i];
    }
    return RateSchedule(std::move(t), std::move(d), std::move(g),
                        traj.config().delta0, traj.config().gamma_seed);
}

} // namespace drgsb
