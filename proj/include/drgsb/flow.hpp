// flow.hpp — DRG flow of the TLS frequency Delta and decay rate gamma as
// high-frequency bath modes are removed, for the full spin-boson model and the
// spontaneous-emission (RWA) model, plus the Lambda = eta/t time map.
//
// Mode-removal convention: lowering the cutoff by |dLambda| updates each
// parameter as P <- P + RHS_P * |dLambda|. This is the unique orientation that
// reproduces the scaling solution Delta(Lambda) = Delta0 (Lambda/omega_c)^alpha,
// the Kondo scale, a growing decay rate, and the red Lamb shift of the
// spontaneous-emission flow.

#pragma once

#include <cstddef>
#include <vector>

#include "drgsb/bath.hpp"
#include "drgsb/schedule.hpp"

namespace drgsb {

enum class FlowModel { SpinBoson, SpontaneousEmission };

struct FlowState {
    double lambda;  // running cutoff, > 0
    double delta;   // renormalized TLS frequency, > 0
    double gamma;   // renormalized decay rate, >= 0
};

struct FlowDerivative {
    double ddelta_per_band;  // increment of Delta per unit removed bandwidth
    double dgamma_per_band;  // increment of gamma per unit removed bandwidth
};

// Spin-boson flow:
//   dDelta = (Delta/2pi) J(L) (2 n_b(L)+1) (Delta^2-L^2)/D,
//   dgamma = (Delta^2/pi) J(L) (2 n_b(L)+1) gamma/D,
//   D = (Delta^2-L^2)^2 + gamma^2 L^2.
// Throws SingularFlowError when D = 0.
FlowDerivative flow_rhs_sb(const FlowState& state, const SpectralParams& p);

// Spontaneous-emission flow:
//   dDelta = J(L)/(4pi) (Delta-L)/((Delta-L)^2+gamma^2),
//   dgamma = J(L)/(4pi) gamma/((Delta-L)^2+gamma^2).
FlowDerivative flow_rhs_se(const FlowState& state, const SpectralParams& p);

struct FlowConfig {
    SpectralParams bath;
    double delta0{0.01};
    double gamma_seed{-1.0};    // < 0 selects the default 1e-6 * delta0
    double lambda_start{-1.0};  // < 0 selects the default 10 * omega_c
    double lambda_min{-1.0};    // < 0 selects the default delta0 / 100
    double eta{1.0};
    FlowModel model{FlowModel::SpinBoson};
    double max_rel_param_step{1e-3};
    double max_rel_lambda_step{1e-3};

    // Resolves defaults; throws std::invalid_argument / UnsupportedConfigError
    // on violated invariants (s != 1 is unsupported by the flow).
    FlowConfig resolved() const;
};

class FlowTrajectory {
public:
    FlowTrajectory(FlowConfig cfg, std::vector<double> lambda,
                   std::vector<double> delta, std::vector<double> gamma);

    const std::vector<double>& lambdas() const { return lambda_; }
    const std::vector<double>& deltas() const { return delta_; }
    const std::vector<double>& gammas() const { return gamma_; }
    const FlowConfig& config() const { return cfg_; }

    double delta_inf() const { return delta_.back(); }
    double gamma_inf() const { return gamma_.back(); }

    // Linear interpolation in (ln Lambda, Delta) and (ln Lambda, ln gamma)
    // (gamma linear when it touches zero). Lambda must lie in the span.
    double delta_at(double lambda) const;
    double gamma_at(double lambda) const;

    std::size_t size() const { return lambda_.size(); }

private:
    std::size_t bracket(double lambda) const;
    FlowConfig cfg_;
    std::vector<double> lambda_, delta_, gamma_, ln_lambda_;
    bool gamma_log_;
};

// Adaptive downward integration of the mode-removal flow from lambda_start to
// lambda_min; per-step relative change of Delta, gamma and Lambda is capped by
// the config. Throws SingularFlowError / ConvergenceError on failure.
FlowTrajectory integrate_flow(const FlowConfig& cfg);

// T_K = delta0 (delta0/omega_c)^{alpha/(1-alpha)}, valid for 0 <= alpha < 1.
double kondo_scale(double alpha, double delta0, double omega_c);

// Scale at which the flow's scaling law reaches self-consistency Delta = Lambda:
// fits ln Delta against ln Lambda over the power-law segment of the trajectory
// (Lambda >= 10 Delta, below the cutoff-active edge) and bisects the fitted
// crossing. Throws NotFoundError when the segment is too short or the crossing
// lies outside the integrated range.
double fixed_point_scale(const FlowTrajectory& traj);

// Maps the trajectory onto real time t = eta/Lambda. Head (bare) values apply
// for t < eta/lambda_start, frozen terminals for t > eta/lambda_min.
RateSchedule to_time_schedule(const FlowTrajectory& traj, double eta);

} // namespace drgsb
