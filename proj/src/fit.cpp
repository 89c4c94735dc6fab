#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "drgsb/dynamics.hpp"
#include "drgsb/errors.hpp"

namespace drgsb {

namespace {

double component_value(const BlochState& s, BlochComponent c) {
    switch (c) {
        case BlochComponent::Sx: return s.sx;
        case BlochComponent::Sy: return s.sy;
        case BlochComponent::Sz: return s.sz;
    }
    return 0.0;
}

// Solves the 4x4 normal system in place; returns false when singular.
bool solve4(std::array<std::array<double, 4>, 4>& a, std::array<double, 4>& b) {
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c2 = col; c2 < 4; ++c2) a[r][c2] -= f * a[col][c2];
            b[r] -= f * b[col];
        }
    }
    for (int r = 3; r >= 0; --r) {
        for (int c2 = r + 1; c2 < 4; ++c2) b[r] -= a[r][c2] * b[c2];
        b[r] /= a[r][r];
    }
    return true;
}

struct Window {
    std::vector<double> t, y;
};

double rms_residual(const Window& w, double A, double r, double om, double ph) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        const double m = A * std::exp(-r * w.t[i]) * std::cos(om * w.t[i] + ph);
        const double d = w.y[i] - m;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(w.t.size()));
}

// Linear solve for (a, b) in e^{-rt}(a cos om t + b sin om t).
void linear_amplitudes(const Window& w, double r, double om, double& a, double& b) {
    double caa = 0, cbb = 0, cab = 0, ya = 0, yb = 0;
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        const double e = std::exp(-r * w.t[i]);
        const double c = e * std::cos(om * w.t[i]);
        const double s = e * std::sin(om * w.t[i]);
        caa += c * c; cbb += s * s; cab += c * s;
        ya += w.y[i] * c; yb += w.y[i] * s;
    }
    const double det = caa * cbb - cab * cab;
    if (det == 0.0) { a = 0.0; b = 0.0; return; }
    a = (ya * cbb - yb * cab) / det;
    b = (yb * caa - ya * cab) / det;
}

DampedCosineFit exponential_fallback(const Window& w) {
    // ln|y| = ln A - r t on samples with |y| above noise floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    const double floor_mag = 1e-14;
    for (std::size_t i = 0; i < w.t.size(); ++i) {
        const double m = std::fabs(w.y[i]);
        if (m < floor_mag) continue;
        const double x = w.t[i], yv = std::log(m);
        sx += x; sy += yv; sxx += x * x; sxy += x * yv;
        ++n;
    }
    if (n < 3) throw FitError("fit_damped_cosine: too few usable samples for exponential fit");
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0) throw FitError("fit_damped_cosine: degenerate exponential fit");
    const double slope = (dn * sxy - sx * sy) / denom;
    const double inter = (sy - slope * sx) / dn;
    DampedCosineFit f;
    f.amplitude = std::exp(inter);
    f.rate = std::max(0.0, -2.0 * slope);
    f.frequency = 0.0;
    f.phase = w.y[0] < 0.0 ? std::acos(-1.0) : 0.0;
    f.overdamped = true;
    f.residual = rms_residual(w, w.y[0] < 0.0 ? -f.amplitude : f.amplitude,
                              f.rate / 2.0, 0.0, 0.0);
    return f;
}

} // namespace

DampedCosineFit fit_damped_cosine(const BlochTrajectory& traj, BlochComponent comp,
                                  double t_lo, double t_hi) {
    if (!(t_lo < t_hi))
        throw std::invalid_argument("fit_damped_cosine: need t_lo < t_hi");
    Window w;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        if (traj.t[i] < t_lo || traj.t[i] > t_hi) continue;
        w.t.push_back(traj.t[i] - t_lo);  // shift for conditioning
        w.y.push_back(component_value(traj.s[i], comp));
    }
    if (w.t.size() < 8)
        throw FitError("fit_damped_cosine: window contains too few samples");

    // Sign changes locate the oscillation; none -> overdamped fallback.
    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < w.t.size(); ++i) {
        if ((w.y[i] > 0.0 && w.y[i + 1] < 0.0) || (w.y[i] < 0.0 && w.y[i + 1] > 0.0))
            crossings.push_back(0.5 * (w.t[i] + w.t[i + 1]));
    }
    if (crossings.empty()) return exponential_fallback(w);
    // Half-period per crossing gap; require >= 3 full periods in the window.
    if (crossings.size() < 6)
        throw FitError("fit_damped_cosine: window spans fewer than 3 oscillation periods (" +
                       std::to_string(crossings.size()) + " sign changes)");
    double gap_sum = 0.0;
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i)
        gap_sum += crossings[i + 1] - crossings[i];
    const double half_period = gap_sum / static_cast<double>(crossings.size() - 1);
    double om = std::acos(-1.0) / half_period;

    // Decay guess from the envelope of running extrema magnitudes.
    double r = 0.0;
    {
        double m0 = 0.0, m1 = 0.0;
        const std::size_t half = w.t.size() / 2;
        for (std::size_t i = 0; i < half; ++i) m0 = std::max(m0, std::fabs(w.y[i]));
        for (std::size_t i = half; i < w.t.size(); ++i) m1 = std::max(m1, std::fabs(w.y[i]));
        if (m0 > 0.0 && m1 > 0.0 && m1 < m0)
            r = std::log(m0 / m1) / (w.t[half] - w.t[0]);
    }
    double a, b;
    linear_amplitudes(w, r, om, a, b);
    double A = std::hypot(a, b);
    double ph = std::atan2(-b, a);
    if (A == 0.0) A = 1e-12;

    // Levenberg-Marquardt refinement of (A, r, om, ph).
    double lambda_lm = 1e-3;
    double cost = rms_residual(w, A, r, om, ph);
    bool converged = false;
    for (int iter = 0; iter < 300; ++iter) {
        std::array<std::array<double, 4>, 4> JtJ{};
        std::array<double, 4> Jtr{};
        for (std::size_t i = 0; i < w.t.size(); ++i) {
            const double tt = w.t[i];
            const double e = std::exp(-r * tt);
            const double cph = std::cos(om * tt + ph);
            const double sph = std::sin(om * tt + ph);
            const double m = A * e * cph;
            const double res = w.y[i] - m;
            const std::array<double, 4> grad{e * cph, -tt * m, -A * e * tt * sph,
                                             -A * e * sph};
            for (int p = 0; p < 4; ++p) {
                Jtr[p] += grad[p] * res;
                for (int q = 0; q < 4; ++q) JtJ[p][q] += grad[p] * grad[q];
            }
        }
        auto Alm = JtJ;
        for (int p = 0; p < 4; ++p) Alm[p][p] *= (1.0 + lambda_lm);
        auto step = Jtr;
        if (!solve4(Alm, step)) { lambda_lm *= 10.0; continue; }
        const double A2 = A + step[0], r2 = r + step[1], om2 = om + step[2],
                     ph2 = ph + step[3];
        const double cost2 = rms_residual(w, A2, r2, om2, ph2);
        if (cost2 < cost) {
            const double rel = std::fabs(cost2 - cost) / std::max(cost, 1e-300);
            A = A2; r = r2; om = om2; ph = ph2; cost = cost2;
            lambda_lm = std::max(lambda_lm * 0.3, 1e-12);
            if (rel < 1e-12) { converged = true; break; }
        } else {
            lambda_lm *= 10.0;
            if (lambda_lm > 1e10) { converged = true; break; }  // no descent left
        }
    }
    if (!converged && cost > 1e-6 * std::fabs(A))
        throw FitError("fit_damped_cosine: no convergence, RMS residual = " +
                       std::to_string(cost));

    DampedCosineFit f;
    if (A < 0.0) { A = -A; ph += std::acos(-1.0); }
    if (om < 0.0) { om = -om; ph = -ph; }
    f.amplitude = A;
    f.rate = std::max(0.0, 2.0 * r);
    f.frequency = om;
    // undo the window shift: cos(om (t - t_lo) + ph) = cos(om t + (ph - om t_lo))
    f.phase = std::remainder(ph - om * t_lo, 2.0 * std::acos(-1.0));
    f.residual = cost;
    f.overdamped = false;
    return f;
}

} // namespace drgsb
