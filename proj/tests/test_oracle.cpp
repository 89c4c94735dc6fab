#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "drgsb/errors.hpp"
#include "drgsb/oracle.hpp"
#include "drgsb/se_exact.hpp"

using namespace drgsb;

namespace {

SpectralParams ohmic(double alpha) {
    SpectralParams p;
    p.alpha = alpha;
    return p;
}

} // namespace

TEST_CASE("decoupled bath leaves the excited amplitude rotating freely") {
    const auto bath = discretize_bath(ohmic(0.0), 64, 10.0);
    const auto a = evolve_discrete_bath(bath, 0.1, 0.01, 50.0);
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        const double t = a.dt * static_cast<double>(i);
        CHECK(std::abs(a.u[i] - std::polar(1.0, -0.1 * t)) < 1e-12);
    }
}

TEST_CASE("single resonant mode gives Rabi oscillation cos^2(kappa t)") {
    DiscreteBath bath;
    const double g = 0.02;
    bath.modes = {{0.1, g}};
    bath.omega_max = 0.2;
    const double kappa = g / std::sqrt(2.0);
    const auto a = evolve_discrete_bath(bath, 0.1, 0.5, 400.0);
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        const double t = a.dt * static_cast<double>(i);
        CHECK(std::norm(a.u[i]) ==
              doctest::Approx(std::cos(kappa * t) * std::cos(kappa * t)).epsilon(1e-9));
    }
}

TEST_CASE("norm conservation over a long run") {
    const auto bath = discretize_bath(ohmic(0.05), 2000, 10.0);
    const DiscreteBathSolver solver(bath, 0.1);
    CHECK(solver.norm_drift(500.0) < 1e-10);
}

TEST_CASE("single-excitation state norm is conserved pointwise") {
    const auto bath = discretize_bath(ohmic(0.05), 200, 10.0);
    const DiscreteBathSolver solver(bath, 0.1);
    for (double t : {0.0, 3.0, 25.0, 90.0}) {
        const auto st = solver.state_at(t);
        CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("oracle converges to the Volterra solution as the bath grows") {
    const double t_max = 60.0;
    const auto u = solve_volterra(ohmic(0.05), 0.1, 0.01, t_max);
    double prev = 1e9;
    for (std::size_t n : {250u, 500u, 1000u}) {
        const auto bath = discretize_bath(ohmic(0.05), n, 10.0);
        REQUIRE(recurrence_time(bath) > t_max);
        const auto ce = evolve_discrete_bath(bath, 0.1, 0.01, t_max);
        double sup = 0.0;
        for (std::size_t i = 0; i < ce.u.size(); ++i)
            sup = std::max(sup, std::abs(ce.u[i] - u.u[i]));
        CHECK(sup < prev);
        prev = sup;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("recurrence_time") {
    const auto bath = discretize_bath(ohmic(0.1), 2000, 10.0);  // dw = 0.005
    CHECK(recurrence_time(bath) ==
          doctest::Approx(400.0 * std::numbers::pi).epsilon(1e-12));
    const auto denser = discretize_bath(ohmic(0.1), 4000, 10.0);
    CHECK(recurrence_time(denser) == doctest::Approx(2.0 * recurrence_time(bath)));

    DiscreteBath skew;
    skew.modes = {{0.1, 0.01}, {0.2, 0.01}, {0.45, 0.01}};
    skew.omega_max = 0.5;
    CHECK_THROWS_AS((void)recurrence_time(skew), UnsupportedConfigError);
}

TEST_CASE("sampling step must resolve the fastest mode") {
    const auto bath = discretize_bath(ohmic(0.05), 100, 10.0);
    CHECK_THROWS_AS((void)evolve_discrete_bath(bath, 0.1, 0.5, 10.0),
                    std::invalid_argument);
}
