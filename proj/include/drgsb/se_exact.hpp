// se_exact.hpp — exact spontaneous-emission solver: survival amplitude u(t)
// from the Volterra integro-differential equation, time-dependent rate
// extraction, and the constant-rate Born-Markov baseline.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "drgsb/bath.hpp"

namespace drgsb {

struct AmplitudeSeries {
    double dt{0.0};
    std::vector<std::complex<double>> u;  // u[0] = 1, uniform grid t_n = n dt
    SpectralParams params;
    double delta0{0.0};

    double t_max() const { return dt * static_cast<double>(u.size() - 1); }
};

struct RatePair {
    double delta{0.0};
    double gamma{0.0};
};

struct RateSeries {
    std::vector<double> t;
    std::vector<RatePair> rates;
    bool truncated{false};  // amplitude underflowed before the series end
};

// Second-order product-trapezoidal march of
//   u'(t) + i Delta0 u(t) + (1/2) \int_0^t mu(t-s) u(s) ds = 0,  u(0) = 1.
// Requires the Ohmic exponential-cutoff kernel and dt <= 0.01/omega_c.
AmplitudeSeries solve_volterra(const SpectralParams& p, double delta0, double dt,
                               double t_max);

// gamma(t) = -Re(u'/u), Delta(t) = -Im(u'/u) via centered differences on the
// interior grid; stops (and flags truncation) when |u| underflows 1e-12.
RateSeries extract_rates(const AmplitudeSeries& u);

// Mean rates over [t_lo, t_hi]; the window must contain samples.
RatePair rate_average(const RateSeries& series, double t_lo, double t_hi);

// Long-time Markov limit: gamma_BM = J(Delta0)/2 (the delta part of the kernel
// transform K(Delta0) = \int_0^inf mu(tau) e^{i Delta0 tau} dtau) and
// Delta_BM = Delta0 + Im K/2 with Im K from the principal-value integral
// (1/pi) PV \int J(w)/(Delta0 - w) dw, evaluated by subtracted quadrature.
RatePair born_markov_rates(const SpectralParams& p, double delta0);

} // namespace drgsb
