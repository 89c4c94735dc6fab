#include "drgsb/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "drgsb/errors.hpp"
#include "drgsb/ode.hpp"

namespace drgsb {

namespace {

void check_window(double t_max, double dt_out) {
    if (!(t_max > 0.0)) throw std::invalid_argument("evolve: t_max must be > 0");
    if (!(dt_out > 0.0) || dt_out > t_max)
        throw std::invalid_argument("evolve: need 0 < dt_out <= t_max");
}

void check_init(const BlochState& s) {
    for (double v : {s.sx, s.sy, s.sz})
        if (!(v >= -1.0 && v <= 1.0))
            throw std::invalid_argument("evolve: initial components must lie in [-1, 1]");
}

// Adaptive dopri5 over [0, t_max] with output clamped to multiples of dt_out.
template <class Rhs>
BlochTrajectory run(Rhs&& rhs, OdeState<3> y, double t_max, double dt_out, double rtol,
                    BlochState (*unpack)(const OdeState<3>&)) {
    constexpr double atol = 1e-12;
    BlochTrajectory out;
    out.rtol = rtol;
    const std::size_t n_out = static_cast<std::size_t>(std::llround(t_max / dt_out));
    out.t.reserve(n_out + 1);
    out.s.reserve(n_out + 1);
    out.t.push_back(0.0);
    out.s.push_back(unpack(y));
    double t = 0.0;
    double h = dt_out;
    for (std::size_t k = 1; k <= n_out; ++k) {
        const double t_next = (k == n_out) ? t_max : dt_out * static_cast<double>(k);
        while (true) {
            const double rem = t_next - t;
            if (rem <= 1e-12 * dt_out) break;
            double h_try = std::min(h, rem);
            if (!(h_try > 1e-14 * t_max))
                throw ConvergenceError("evolve: step underflow at t = " + std::to_string(t));
            OdeState<3> y5, err;
            dopri5_step(rhs, t, y, h_try, y5, err);
            const double en = error_norm(y, y5, err, rtol, atol);
            if (en <= 1.0) {
                t += h_try;
                y = y5;
            }
            h = next_step(h_try, en);
        }
        t = t_next;
        out.t.push_back(t_next);
        out.s.push_back(unpack(y));
    }
    return out;
}

BlochState unpack_bloch(const OdeState<3>& y) { return {y[0], y[1], y[2]}; }

BlochState unpack_se(const OdeState<3>& y) {
    // y = (Re sp, Im sp, sz); sx = 2 Re sp, sy = 2 Im sp
    return {2.0 * y[0], 2.0 * y[1], y[2]};
}

} // namespace

BlochTrajectory evolve_bloch(const RateSchedule& sch, const BlochState& init,
                             double t_max, double dt_out, double rtol) {
    check_window(t_max, dt_out);
    check_init(init);
    auto rhs = [&sch](double t, const OdeState<3>& y, OdeState<3>& dy) {
        const double d = sch.delta_at(t);
        const double g = sch.gamma_at(t);
        dy[0] = -g * (y[0] - 1.0);
        dy[1] = d * y[2] - g * y[1];
        dy[2] = -d * y[1];
    };
    return run(rhs, OdeState<3>{init.sx, init.sy, init.sz}, t_max, dt_out, rtol,
               &unpack_bloch);
}

BlochTrajectory evolve_se_lindblad(const RateSchedule& sch, const BlochState& init,
                                   double t_max, double dt_out, double rtol) {
    check_window(t_max, dt_out);
    check_init(init);
    auto rhs = [&sch](double t, const OdeState<3>& y, OdeState<3>& dy) {
        const double d = sch.delta_at(t);
        const double g = sch.gamma_at(t);
        dy[0] = -d * y[1] - g * y[0];
        dy[1] = d * y[0] - g * y[1];
        dy[2] = -2.0 * g * (y[2] + 1.0);
    };
    return run(rhs, OdeState<3>{0.5 * init.sx, 0.5 * init.sy, init.sz}, t_max, dt_out,
               rtol, &unpack_se);
}

double quality_factor(double delta, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("quality_factor: gamma must be > 0");
    return delta / gamma;
}

} // namespace drgsb
