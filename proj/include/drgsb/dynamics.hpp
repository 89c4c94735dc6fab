// dynamics.hpp — time-local equations of motion for the TLS driven by a
// RateSchedule, plus damped-cosine extraction of long-time observables.

#pragma once

#include <vector>

#include "drgsb/schedule.hpp"

namespace drgsb {

struct BlochState {
    double sx{0.0};
    double sy{0.0};
    double sz{1.0};
};

struct BlochTrajectory {
    std::vector<double> t;        // strictly increasing from 0
    std::vector<BlochState> s;
    double rtol{0.0};             // integrator tolerance used
};

// Spin-boson form:
//   sx' = -gamma(t) (sx - 1),  sy' = Delta(t) sz - gamma(t) sy,  sz' = -Delta(t) sy.
// Adaptive dopri5 with local tolerance rtol (default 1e-9), sampled every dt_out.
BlochTrajectory evolve_bloch(const RateSchedule& schedule, const BlochState& init,
                             double t_max, double dt_out, double rtol = 1e-9);

// Spontaneous-emission Lindblad form (rotated basis, sz = +1 excited):
//   sp' = (i Delta(t) - gamma(t)) sp,  sz' = -2 gamma(t) (sz + 1),
// with sx, sy reconstructed from sp = (sx + i sy)/2.
BlochTrajectory evolve_se_lindblad(const RateSchedule& schedule, const BlochState& init,
                                   double t_max, double dt_out, double rtol = 1e-9);

enum class BlochComponent { Sx, Sy, Sz };

struct DampedCosineFit {
    double amplitude{0.0};   // envelope value at the window start
    double frequency{0.0};   // Delta_fit of A e^{-rate t/2} cos(Delta t + phase)
    double rate{0.0};        // gamma_fit
    double phase{0.0};       // referenced to absolute t
    double residual{0.0};    // RMS residual over the fit window
    bool overdamped{false};  // no sign change in window: pure-exponential fallback
};

// Nonlinear least squares of the window [t_lo, t_hi] against
// A e^{-gamma t/2} cos(Delta t + phi); falls back to a pure exponential fit of
// the magnitude when the component never changes sign in the window.
// Throws FitError when the window shows too few oscillations to pin a
// frequency, or when the fit does not converge.
DampedCosineFit fit_damped_cosine(const BlochTrajectory& traj, BlochComponent component,
                                  double t_lo, double t_hi);

// Q = Delta/gamma; gamma <= 0 is a domain error.
double quality_factor(double delta, double gamma);

} // namespace drgsb
