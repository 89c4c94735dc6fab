// oracle.hpp — brute-force verifier: exact single-excitation evolution of the
// spontaneous-emission Hamiltonian with a finite discretized bath. Couplings
// kappa_k = g_k/sqrt(2) are pinned so that c_e(t) obeys the same Volterra
// equation as u(t) in the continuum limit.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "drgsb/bath.hpp"
#include "drgsb/se_exact.hpp"

namespace drgsb {

struct SingleExcitationState {
    std::complex<double> c_e;
    std::vector<std::complex<double>> c_k;

    double norm_squared() const;
};

// Exact spectral propagator for the arrowhead Hamiltonian
//   i c_e' = delta0 c_e + sum_k kappa_k c_k,  i c_k' = w_k c_k + kappa_k c_e.
// Eigenpairs come from the secular equation; evolution is exactly unitary.
class DiscreteBathSolver {
public:
    DiscreteBathSolver(const DiscreteBath& bath, double delta0);

    // c_e(t) sampled on t_n = n dt; dt must resolve the fastest mode
    // (dt <= 0.1/omega_max) or a stability error is thrown.
    AmplitudeSeries evolve(double dt, double t_max) const;

    // Full state at one time (O(N^2)); used for norm audits.
    SingleExcitationState state_at(double t) const;

    // max_j |<psi(t_j)|psi(t_j)> - 1| over a handful of audit times in [0, t_max].
    double norm_drift(double t_max) const;

    const std::vector<double>& eigenvalues() const { return eig_; }

private:
    std::complex<double> amplitude_at(double t) const;
    double delta0_;
    double omega_top_{0.0};  // fastest frequency in the problem
    std::vector<double> omega_, kappa2_;  // coupled modes only
    std::vector<double> decoupled_;       // frequencies of zero-coupling modes
    std::vector<double> eig_;             // secular eigenvalues
    std::vector<double> weight_;          // v_e^2 per eigenvector
};

// Convenience wrapper: c_e(t) for the given bath.
AmplitudeSeries evolve_discrete_bath(const DiscreteBath& bath, double delta0, double dt,
                                     double t_max);

// Poincare recurrence time 2*pi/dw of a uniform-grid bath; non-uniform grids
// are unsupported.
double recurrence_time(const DiscreteBath& bath);

} // namespace drgsb
