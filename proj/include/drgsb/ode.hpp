// ode.hpp — embedded Dormand-Prince 5(4) step for small fixed-size systems.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace drgsb {

template <std::size_t N>
using OdeState = std::array<double, N>;

// One trial step of the dopri5 pair. f(t, y, dydt) fills the derivative.
// Returns the 5th-order solution and the embedded error estimate per component.
template <std::size_t N, class F>
void dopri5_step(F&& f, double t, const OdeState<N>& y, double h,
                 OdeState<N>& y5, OdeState<N>& err) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeState<N> k1, k2, k3, k4, k5, k6, k7, tmp;
    f(t, y, k1);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                             a65 * k5[i]);
    f(t + h, tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
        y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + h, y5, k7);
    for (std::size_t i = 0; i < N; ++i)
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                      e7 * k7[i]);
}

// Weighted RMS error norm against atol + rtol*max(|y|,|y_new|); <= 1 accepts.
template <std::size_t N>
double error_norm(const OdeState<N>& y, const OdeState<N>& y5, const OdeState<N>& err,
                  double rtol, double atol) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
        const double r = err[i] / sc;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(N));
}

// Standard step-size update with safety factor and growth clamps.
inline double next_step(double h, double err_norm_value) {
    const double fac = err_norm_value > 0.0
                           ? 0.9 * std::pow(err_norm_value, -0.2)
                           : 5.0;
    return h * std::clamp(fac, 0.2, 5.0);
}

} // namespace drgsb
