#include "drgsb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "drgsb/errors.hpp"

namespace drgsb {

double SingleExcitationState::norm_squared() const {
    double n = std::norm(c_e);
    for (const auto& c : c_k) n += std::norm(c);
    return n;
}

namespace {

// Secular function f(x) = x - delta0 - sum_k kappa_k^2/(x - w_k); its roots are
// the arrowhead eigenvalues, interlaced with the coupled mode frequencies.
double secular(double x, double delta0, const std::vector<double>& w,
               const std::vector<double>& k2) {
    double acc = x - delta0;
    for (std::size_t i = 0; i < w.size(); ++i) acc -= k2[i] / (x - w[i]);
    return acc;
}

double bisect_root(double a, double b, double delta0, const std::vector<double>& w,
                   const std::vector<double>& k2) {
    double fa = secular(a, delta0, w, k2);
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // interval at floating-point resolution
        const double fm = secular(m, delta0, w, k2);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

DiscreteBathSolver::DiscreteBathSolver(const DiscreteBath& bath, double delta0)
    : delta0_(delta0) {
    if (bath.modes.empty())
        throw std::invalid_argument("DiscreteBathSolver: empty bath");
    for (std::size_t i = 0; i + 1 < bath.modes.size(); ++i)
        if (!(bath.modes[i].omega < bath.modes[i + 1].omega))
            throw std::invalid_argument("DiscreteBathSolver: frequencies must increase");
    omega_top_ = std::max(bath.modes.back().omega, delta0);
    for (const auto& m : bath.modes) {
        if (!(m.omega > 0.0) || !std::isfinite(m.g))
            throw std::invalid_argument("DiscreteBathSolver: invalid mode");
        if (m.g > 0.0) {
            omega_.push_back(m.omega);
            kappa2_.push_back(0.5 * m.g * m.g);  // kappa = g/sqrt(2)
        } else {
            decoupled_.push_back(m.omega);
        }
    }
    const std::size_t nc = omega_.size();
    eig_.reserve(nc + 1);
    weight_.reserve(nc + 1);
    if (nc == 0) {
        eig_.push_back(delta0_);
        weight_.push_back(1.0);
        return;
    }
    double kl1 = 0.0;
    for (double k2 : kappa2_) kl1 += std::sqrt(k2);
    // outer brackets from the Gershgorin-style bound, widened until bracketed
    double lo = std::min(delta0_, omega_.front()) - kl1 - 1.0;
    while (secular(lo, delta0_, omega_, kappa2_) >= 0.0)
        lo = omega_.front() - 2.0 * (omega_.front() - lo);
    double hi = std::max(delta0_, omega_.back()) + kl1 + 1.0;
    while (secular(hi, delta0_, omega_, kappa2_) <= 0.0)
        hi = omega_.back() + 2.0 * (hi - omega_.back());

    for (std::size_t r = 0; r <= nc; ++r) {
        const double a = r == 0 ? lo : omega_[r - 1];
        const double b = r == nc ? hi : omega_[r];
        const double pad = 1e-14 * (b - a) + 1e-300;
        eig_.push_back(bisect_root(a + pad, b - pad, delta0_, omega_, kappa2_));
    }
    for (double lam : eig_) {
        double s = 1.0;
        for (std::size_t i = 0; i < nc; ++i) {
            const double d = lam - omega_[i];
            s += kappa2_[i] / (d * d);
        }
        weight_.push_back(1.0 / s);
    }
}

std::complex<double> DiscreteBathSolver::amplitude_at(double t) const {
    std::complex<double> c = 0.0;
    for (std::size_t j = 0; j < eig_.size(); ++j)
        c += weight_[j] * std::polar(1.0, -eig_[j] * t);
    return c;
}

AmplitudeSeries DiscreteBathSolver::evolve(double dt, double t_max) const {
    if (!(dt > 0.0) || dt > 0.1 / omega_top_ + 1e-15)
        throw std::invalid_argument(
            "DiscreteBathSolver: dt too large to resolve the fastest mode (need dt <= 0.1/omega_max)");
    if (!(t_max > 0.0))
        throw std::invalid_argument("DiscreteBathSolver: t_max must be > 0");
    AmplitudeSeries out;
    out.dt = dt;
    out.delta0 = delta0_;
    const std::size_t n = static_cast<std::size_t>(std::llround(t_max / dt));
    out.u.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        out.u.push_back(amplitude_at(dt * static_cast<double>(k)));
    return out;
}

SingleExcitationState DiscreteBathSolver::state_at(double t) const {
    SingleExcitationState st;
    st.c_e = amplitude_at(t);
    st.c_k.assign(omega_.size() + decoupled_.size(), {0.0, 0.0});
    // coupled modes first; decoupled modes stay empty (they never populate)
    for (std::size_t j = 0; j < eig_.size(); ++j) {
        const std::complex<double> ph = weight_[j] * std::polar(1.0, -eig_[j] * t);
        for (std::size_t i = 0; i < omega_.size(); ++i)
            st.c_k[i] += ph * std::sqrt(kappa2_[i]) / (eig_[j] - omega_[i]);
    }
    return st;
}

double DiscreteBathSolver::norm_drift(double t_max) const {
    double drift = 0.0;
    for (int k = 0; k <= 8; ++k) {
        const double t = t_max * static_cast<double>(k) / 8.0;
        drift = std::max(drift, std::fabs(state_at(t).norm_squared() - 1.0));
    }
    return drift;
}

AmplitudeSeries evolve_discrete_bath(const DiscreteBath& bath, double delta0, double dt,
                                     double t_max) {
    return DiscreteBathSolver(bath, delta0).evolve(dt, t_max);
}

double recurrence_time(const DiscreteBath& bath) {
    if (bath.modes.size() < 2)
        throw std::invalid_argument("recurrence_time: need at least two modes");
    const double dw = bath.modes[1].omega - bath.modes[0].omega;
    for (std::size_t i = 0; i + 1 < bath.modes.size(); ++i) {
        const double step = bath.modes[i + 1].omega - bath.modes[i].omega;
        if (std::fabs(step - dw) > 1e-9 * dw)
            throw UnsupportedConfigError("recurrence_time: non-uniform frequency grid");
    }
    return 2.0 * std::numbers::pi / dw;
}

} // namespace drgsb
