#include <doctest.h>

#include <cmath>
#include <numbers>

#include "drgsb/dynamics.hpp"
#include "drgsb/flow.hpp"
#include "drgsb/reference.hpp"

using namespace drgsb;

TEST_CASE("niba_parameters: weak-coupling limit") {
    const auto v = niba_parameters(1e-5, 0.01, 1.0);
    CHECK(v.delta == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(v.gamma < 1e-5);
    CHECK(v.q > 1e4);
}

TEST_CASE("niba_parameters: Toulouse point analytic limit") {
    const auto v = niba_parameters(0.5, 0.01, 1.0);
    const double tk = kondo_scale(0.5, 0.01, 1.0);
    CHECK(v.delta == doctest::Approx(0.5 * std::numbers::pi * tk).epsilon(1e-12));
    CHECK(v.gamma == doctest::Approx(2.0 * v.delta).epsilon(1e-12));
    CHECK(v.q == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("niba_parameters: continuous through alpha = 1/2") {
    // Delta_N(alpha) has |d ln Delta_N / d alpha| ~ |ln(delta0)|/(1-alpha)^2 ~ 16
    // at the endpoint, so the gaps shrink linearly in the offset; check the
    // linear rate and the smallness of the deepest gap.
    const auto lim = niba_parameters(0.5, 0.01, 1.0);
    double prev_gap = -1.0;
    for (int k = 3; k <= 6; ++k) {
        const auto v = niba_parameters(0.5 - std::pow(10.0, -k), 0.01, 1.0);
        const double gap = std::fabs(v.delta / lim.delta - 1.0);
        CHECK(gap < 2.0 * std::pow(10.0, -k + 1));
        if (prev_gap > 0.0) CHECK(gap / prev_gap == doctest::Approx(0.1).epsilon(0.05));
        prev_gap = gap;
    }
}

TEST_CASE("niba_parameters: Delta and Q strictly decreasing in alpha") {
    double prev_d = 1e9, prev_q = 1e9;
    for (double a = 0.05; a < 0.46; a += 0.05) {
        const auto v = niba_parameters(a, 0.01, 1.0);
        CHECK(v.delta < prev_d);
        CHECK(v.q < prev_q);
        prev_d = v.delta;
        prev_q = v.q;
    }
}

TEST_CASE("niba_parameters: domain guard") {
    CHECK_THROWS_AS((void)niba_parameters(0.0, 0.01, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)niba_parameters(0.51, 0.01, 1.0), std::domain_error);
}

TEST_CASE("Born-Markov-seeded quench oscillates at the NIBA frequency scale") {
    // the gamma flow needs an O(J(delta0)/2) seed for the renormalized
    // frequency to freeze at the Kondo scale rather than slide below it
    FlowConfig c;
    c.bath.alpha = 0.1;
    c.delta0 = 0.01;
    c.gamma_seed = 0.5 * spectral_density(c.delta0, c.bath);
    const auto traj = integrate_flow(c);
    const auto sch = to_time_schedule(traj, 1.0);
    const auto tr = evolve_bloch(sch, BlochState{}, 12000.0, 2.0);
    const auto fit = fit_damped_cosine(tr, BlochComponent::Sz, 1000.0, 12000.0);
    const auto nb = niba_parameters(0.1, 0.01, 1.0);
    CHECK(std::fabs(fit.frequency - nb.delta) / nb.delta < 0.25);
}

TEST_CASE("full-pipeline comparison record at alpha = 0.1 defaults") {
    FlowConfig c;
    c.bath.alpha = 0.1;
    c.delta0 = 0.01;
    const auto traj = integrate_flow(c);
    const auto nb = niba_parameters(0.1, 0.01, 1.0);
    const auto rec = drg_vs_niba_report(traj.delta_inf(), traj.gamma_inf(), nb);
    CHECK(!rec.tau_infinite);
    CHECK(std::isfinite(rec.delta_rel));
    CHECK(std::isfinite(rec.q_rel));
    CHECK(rec.q_rel < 1.0);  // the frozen-ratio Q tracks NIBA well
}

TEST_CASE("drg_vs_niba_report") {
    const auto n = niba_parameters(0.1, 0.01, 1.0);
    const auto same = drg_vs_niba_report(n.delta, n.gamma, n);
    CHECK(same.delta_rel == doctest::Approx(0.0));
    CHECK(same.tau_rel == doctest::Approx(0.0));
    CHECK(same.q_rel == doctest::Approx(0.0));
    CHECK(!same.tau_infinite);

    const auto frozen = drg_vs_niba_report(n.delta, 0.0, n);
    CHECK(frozen.tau_infinite);
    CHECK(std::isinf(frozen.tau_rel));
}
