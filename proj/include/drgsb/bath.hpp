// bath.hpp — Ohmic bath: spectral function, occupation, memory kernel,
// discretized-mode representation. Units: omega_c = 1 unless set otherwise;
// frequencies and rates in units of omega_c, times in 1/omega_c.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace drgsb {

enum class CutoffShape { Exponential, Sharp };

struct SpectralParams {
    double alpha{0.0};        // dimensionless coupling
    double s{1.0};            // spectral exponent (Ohmic = 1)
    double omega_c{1.0};      // cutoff frequency
    CutoffShape cutoff{CutoffShape::Exponential};
    double temperature{0.0};  // bath temperature in energy units (k_B = hbar = 1)

    // Throws std::invalid_argument on violated invariants.
    void validate() const;
    bool ohmic_exponential() const {
        return s == 1.0 && cutoff == CutoffShape::Exponential;
    }
};

// J(omega) = 2*pi*alpha * omega_c^{1-s} * omega^s * e^{-omega/omega_c}
// (exponential) or the same power law truncated at omega_c (sharp).
double spectral_density(double omega, const SpectralParams& p);

// Bose occupation n_b(omega) at the given temperature; exactly 0 at T = 0.
double bath_occupation(double omega, double temperature);

// mu(tau) = (1/pi) \int_0^inf J(w) e^{-i w tau} dw = 2 alpha wc^2 / (1 + i wc tau)^2
// for the Ohmic exponential-cutoff bath. Other shapes are unsupported.
std::complex<double> memory_kernel(double tau, const SpectralParams& p);

struct BathMode {
    double omega;  // mode frequency
    double g;      // coupling, J(w) = pi sum_k g_k^2 delta(w - w_k)
};

struct DiscreteBath {
    std::vector<BathMode> modes;  // strictly increasing frequencies
    double omega_max{0.0};

    std::size_t size() const { return modes.size(); }
    // Midpoint-rule estimate of (1/pi) \int J dw carried by the modes.
    double coupling_sum() const;
};

// Midpoint linear grid w_k = (k - 1/2) dw, dw = omega_max/n, g_k = sqrt(J(w_k) dw / pi).
DiscreteBath discretize_bath(const SpectralParams& p, std::size_t n, double omega_max);

} // namespace drgsb
