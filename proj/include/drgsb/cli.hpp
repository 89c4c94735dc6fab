// cli.hpp — command implementations behind the drgsb executable: experiment
// orchestration and deterministic CSV emission. Exit codes: 0 success,
// 1 numerical failure, 2 usage error.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace drgsb {

inline constexpr const char* kArtifactVersion = "drgsb 0.1.0";

// Configuration problems detected before any computation; mapped to exit 2.
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

struct RunConfig {
    std::string subcommand;
    double alpha{0.0};
    double delta0{0.01};
    double eta{1.0};
    double gamma_seed{-1.0};      // < 0: default 1e-6 * delta0
    bool gamma_seed_bm{false};    // seed with the Born-Markov rate J(delta0)/2
    std::string cutoff{"exp"};    // "exp" | "sharp"
    double temperature{0.0};
    double lambda_start{-1.0};    // < 0: default 10 * omega_c
    double lambda_min{-1.0};      // < 0: default delta0 / 100
    double t_max{-1.0};           // < 0: per-command default
    double dt_out{-1.0};          // < 0: per-command default
    double dt{-1.0};              // < 0: default 0.005 (se solver grid)
    int n_modes{2000};
    double omega_max{10.0};
    bool oracle{false};
    bool force{false};
    std::string mode{"sb"};       // sweep: "sb" | "se"
    std::vector<double> eta_list;
    std::vector<double> alpha_list;
    double alpha_min{-1.0}, alpha_max{-1.0};
    int alpha_count{0};
    int jobs{0};                  // 0: hardware concurrency
    std::string output{"-"};      // "-" = stdout
};

// Each returns the process exit code and reports failures on `err`.
int cmd_flow(const RunConfig& cfg, std::ostream& err);
int cmd_quench(const RunConfig& cfg, std::ostream& err);
int cmd_se(const RunConfig& cfg, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& err);

int run_command(const RunConfig& cfg, std::ostream& err);

// Scientific notation with 12 significant digits; used for every CSV float.
std::string fmt_sci(double v);

} // namespace drgsb
