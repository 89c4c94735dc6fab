#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "drgsb/bath.hpp"
#include "drgsb/errors.hpp"

using namespace drgsb;
using quad = boost::math::quadrature::gauss_kronrod<double, 31>;

namespace {

SpectralParams ohmic(double alpha, CutoffShape shape = CutoffShape::Exponential) {
    SpectralParams p;
    p.alpha = alpha;
    p.cutoff = shape;
    return p;
}

// Independent route for mu(tau): direct quadrature of the kernel transform.
std::complex<double> kernel_by_quadrature(double tau, const SpectralParams& p) {
    const double re = quad::integrate(
        [&](double w) { return spectral_density(w, p) * std::cos(w * tau); }, 0.0,
        80.0 * p.omega_c, 15, 1e-13);
    const double im = quad::integrate(
        [&](double w) { return spectral_density(w, p) * std::sin(w * tau); }, 0.0,
        80.0 * p.omega_c, 15, 1e-13);
    return std::complex<double>(re, -im) / std::numbers::pi;
}

} // namespace

TEST_CASE("spectral density closed-form values") {
    CHECK(spectral_density(0.0, ohmic(0.3)) == 0.0);
    CHECK(spectral_density(1.0, ohmic(0.1)) ==
          doctest::Approx(2.0 * std::numbers::pi * 0.1 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(spectral_density(0.5, ohmic(0.1, CutoffShape::Sharp)) ==
          doctest::Approx(2.0 * std::numbers::pi * 0.1 * 0.5).epsilon(1e-12));
    CHECK(spectral_density(1.5, ohmic(0.1, CutoffShape::Sharp)) == 0.0);
    CHECK_THROWS_AS((void)spectral_density(-0.1, ohmic(0.1)), std::domain_error);
}

TEST_CASE("spectral density is nonnegative and continuous for the exponential shape") {
    const auto p = ohmic(0.25);
    double prev = spectral_density(0.0, p);
    for (int i = 1; i <= 4000; ++i) {
        const double w = 8.0 * i / 4000.0;
        const double j = spectral_density(w, p);
        CHECK(j >= 0.0);
        CHECK(std::fabs(j - prev) < 1e-2);  // no jumps on a fine grid
        prev = j;
    }
}

TEST_CASE("bath occupation") {
    CHECK(bath_occupation(1.0, 0.0) == 0.0);
    // omega/T = ln 2 -> n_b = 1
    CHECK(bath_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // high-T divergence as T/omega
    CHECK(bath_occupation(1.0, 1e6) == doctest::Approx(1e6).epsilon(1e-3));
    CHECK_THROWS_AS((void)bath_occupation(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)bath_occupation(-1.0, 1.0), std::domain_error);
}

TEST_CASE("memory kernel matches direct quadrature of the transform") {
    const auto p = ohmic(0.05);
    CHECK(std::abs(memory_kernel(0.0, p) - std::complex<double>(0.1, 0.0)) < 1e-14);
    for (double tau : {0.0, 0.03, 0.7, 3.0, 20.0, 100.0}) {
        const auto closed = memory_kernel(tau, p);
        const auto direct = kernel_by_quadrature(tau, p);
        CHECK(std::abs(closed - direct) <= 1e-8 * std::abs(closed) + 1e-14);
    }
}

TEST_CASE("memory kernel asymptotics and symmetry") {
    const auto p = ohmic(0.05);
    for (double tau : {30.0, 100.0, 300.0}) {
        CHECK(std::abs(memory_kernel(tau, p)) ==
              doctest::Approx(2.0 * p.alpha / (tau * tau)).epsilon(5e-3));
        CHECK(memory_kernel(-tau, p) == std::conj(memory_kernel(tau, p)));
    }
    CHECK(memory_kernel(1.0, ohmic(0.0)) == std::complex<double>(0.0, 0.0));
    CHECK_THROWS_AS((void)memory_kernel(1.0, ohmic(0.1, CutoffShape::Sharp)),
                    UnsupportedConfigError);
    auto sub = ohmic(0.1);
    sub.s = 0.5;
    CHECK_THROWS_AS((void)memory_kernel(1.0, sub), UnsupportedConfigError);
}

TEST_CASE("discretize_bath matches the single-mode formula") {
    const auto p = ohmic(0.1);
    const auto bath = discretize_bath(p, 1, 1.0);
    REQUIRE(bath.size() == 1);
    CHECK(bath.modes[0].omega == doctest::Approx(0.5));
    CHECK(bath.modes[0].g * bath.modes[0].g ==
          doctest::Approx(spectral_density(0.5, p) / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("discretize_bath sum rule converges monotonically to the integral") {
    const auto p = ohmic(0.1);
    const double target = quad::integrate(
                              [&](double w) { return spectral_density(w, p); }, 0.0,
                              20.0, 15, 1e-13) /
                          std::numbers::pi;
    double prev_err = 1e9;
    for (std::size_t n : {250u, 500u, 1000u, 2000u}) {
        const auto bath = discretize_bath(p, n, 20.0);
        const double err = std::fabs(bath.coupling_sum() - target);
        CHECK(err < prev_err);
        prev_err = err;
    }
    // N = 2000 within 0.1% of 2 alpha omega_c^2
    const auto bath = discretize_bath(p, 2000, 20.0);
    CHECK(bath.coupling_sum() ==
          doctest::Approx(2.0 * p.alpha).epsilon(1e-3));
}

TEST_CASE("discretize_bath with alpha = 0 gives silent modes") {
    const auto bath = discretize_bath(ohmic(0.0), 16, 10.0);
    for (const auto& m : bath.modes) CHECK(m.g == 0.0);
}
