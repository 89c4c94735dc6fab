#include "drgsb/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "drgsb/errors.hpp"

namespace drgsb {

void SpectralParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("SpectralParams: alpha must be >= 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw std::invalid_argument("SpectralParams: omega_c must be > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw std::invalid_argument("SpectralParams: temperature must be >= 0");
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("SpectralParams: s must be > 0");
}

double spectral_density(double omega, const SpectralParams& p) {
    if (omega < 0.0 || !std::isfinite(omega))
        throw std::domain_error("spectral_density: omega must be >= 0");
    if (omega == 0.0) return 0.0;
    const double power = 2.0 * std::numbers::pi * p.alpha *
                         std::pow(p.omega_c, 1.0 - p.s) * std::pow(omega, p.s);
    switch (p.cutoff) {
        case CutoffShape::Exponential:
            return power * std::exp(-omega / p.omega_c);
        case CutoffShape::Sharp:
            return omega < p.omega_c ? power : 0.0;
    }
    return 0.0;
}

double bath_occupation(double omega, double temperature) {
    if (!(omega > 0.0))
        throw std::domain_error("bath_occupation: omega must be > 0");
    if (temperature == 0.0) return 0.0;
    if (temperature < 0.0)
        throw std::domain_error("bath_occupation: temperature must be >= 0");
    return 1.0 / std::expm1(omega / temperature);
}

std::complex<double> memory_kernel(double tau, const SpectralParams& p) {
    if (!p.ohmic_exponential())
        throw UnsupportedConfigError(
            "memory_kernel: closed form requires s = 1 and exponential cutoff");
    if (p.alpha == 0.0) return {0.0, 0.0};
    const std::complex<double> den(1.0, p.omega_c * tau);
    return 2.0 * p.alpha * p.omega_c * p.omega_c / (den * den);
}

double DiscreteBath::coupling_sum() const {
    double s2 = 0.0;
    for (const auto& m : modes) s2 += m.g * m.g;
    return s2;
}

DiscreteBath discretize_bath(const SpectralParams& p, std::size_t n, double omega_max) {
    p.validate();
    if (n < 1) throw std::invalid_argument("discretize_bath: n must be >= 1");
    if (!(omega_max > 0.0)) throw std::invalid_argument("discretize_bath: omega_max must be > 0");
    const double dw = omega_max / static_cast<double>(n);
    DiscreteBath bath;
    bath.omega_max = omega_max;
    bath.modes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (static_cast<double>(k) + 0.5) * dw;
        const double g = std::sqrt(spectral_density(w, p) * dw / std::numbers::pi);
        bath.modes.push_back({w, g});
    }
    return bath;
}

} // namespace drgsb
