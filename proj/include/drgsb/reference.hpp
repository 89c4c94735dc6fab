// reference.hpp — literature closed forms used only as long-time comparison
// targets: NIBA effective frequency, decay rate and quality factor.

#pragma once

namespace drgsb {

struct NibaValues {
    double delta;  // Delta_N = T_K [cos(pi a) Gamma(1-2a)]^{1/(2(1-a))}
    double gamma;  // gamma_N = 2 Delta_N sin(pi a / (2(1-a)))
    double q;      // Delta_N / gamma_N
};

// Valid for 0 < alpha <= 1/2; the alpha = 1/2 endpoint uses the analytic limit
// cos(pi a) Gamma(1-2a) -> pi/2 (evaluated in a form continuous through it).
NibaValues niba_parameters(double alpha, double delta0, double omega_c);

struct ComparisonRecord {
    double delta_rel;    // |Delta_drg - Delta_N| / Delta_N
    double tau_rel;      // |tau_drg - tau_N| / tau_N (tau = 1/gamma)
    double q_rel;        // |Q_drg - Q_N| / Q_N
    bool tau_infinite;   // gamma_drg = 0: tau undefined, flagged not computed
};

ComparisonRecord drg_vs_niba_report(double delta_inf, double gamma_inf,
                                    const NibaValues& niba);

} // namespace drgsb
