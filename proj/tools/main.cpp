// drgsb — quench dynamics of the Ohmic spin-boson model via dynamical
// renormalization-group flow, with exact spontaneous-emission benchmarks.

#include <CLI11.hpp>
#include <iostream>

#include "drgsb/cli.hpp"

namespace {

void add_common_flags(CLI::App* app, drgsb::RunConfig& cfg, bool needs_alpha = true) {
    auto* a = app->add_option("--alpha", cfg.alpha, "bath coupling constant");
    if (needs_alpha) a->required();
    app->add_option("--delta0", cfg.delta0, "bare TLS frequency in units of omega_c");
    app->add_option("--eta", cfg.eta, "time-map coefficient Lambda = eta/t, in (0,1]");
    app->add_option("--gamma-seed", cfg.gamma_seed,
                    "initial decay rate (default 1e-6*delta0)");
    app->add_flag("--gamma-seed-bm", cfg.gamma_seed_bm,
                  "seed gamma with the Born-Markov rate J(delta0)/2");
    app->add_option("--cutoff", cfg.cutoff, "spectral cutoff shape: exp | sharp");
    app->add_option("--temperature", cfg.temperature, "bath temperature (energy units)");
    app->add_option("--lambda-start", cfg.lambda_start,
                    "initial cutoff (default 10*omega_c)");
    app->add_option("--lambda-min", cfg.lambda_min,
                    "stopping cutoff (default delta0/100)");
    app->add_flag("--force", cfg.force, "run even for alpha > 0.5");
    app->add_option("-o,--output", cfg.output, "output CSV path ('-' = stdout)");
}

} // namespace

int main(int argc, char** argv) {
    drgsb::RunConfig cfg;
    CLI::App app{"Ohmic spin-boson quench dynamics via flow-equation renormalization"};
    app.require_subcommand(1);

    auto* flow = app.add_subcommand("flow", "integrate the (Delta, gamma) flow, emit lambda,delta,gamma");
    add_common_flags(flow, cfg);

    auto* quench = app.add_subcommand("quench", "full pipeline: flow -> schedule -> Bloch dynamics");
    add_common_flags(quench, cfg);
    quench->add_option("--tmax", cfg.t_max, "simulated time span (default 50/delta0)");
    quench->add_option("--dt-out", cfg.dt_out, "output sampling step (default tmax/2000)");
    quench->add_option("--eta-list", cfg.eta_list, "run several eta values, one file each")
        ->delimiter(',');

    auto* se = app.add_subcommand("se", "spontaneous emission: exact vs DRG vs Born-Markov");
    add_common_flags(se, cfg);
    se->add_option("--tmax", cfg.t_max, "simulated time span (default 200)");
    se->add_option("--dt-out", cfg.dt_out, "output sampling step (default 0.1)");
    se->add_option("--dt", cfg.dt, "Volterra solver step (default 0.005, max 0.01)");
    se->add_flag("--oracle", cfg.oracle, "add the discretized-bath column");
    se->add_option("--n-modes", cfg.n_modes, "oracle bath modes (default 2000)");
    se->add_option("--omega-max", cfg.omega_max, "oracle bath truncation (default 10)");

    auto* sweep = app.add_subcommand("sweep", "long-time values over a grid of alpha");
    add_common_flags(sweep, cfg, /*needs_alpha=*/false);
    sweep->add_option("--mode", cfg.mode, "sb (NIBA comparison) or se (exact/BM comparison)");
    sweep->add_option("--alpha-list", cfg.alpha_list, "explicit alpha grid")->delimiter(',');
    sweep->add_option("--alpha-min", cfg.alpha_min, "grid start");
    sweep->add_option("--alpha-max", cfg.alpha_max, "grid end");
    sweep->add_option("--alpha-count", cfg.alpha_count, "grid size");
    sweep->add_option("--tmax", cfg.t_max, "se-mode Volterra span (default 400)");
    sweep->add_option("--dt", cfg.dt, "se-mode Volterra step (default 0.005)");
    sweep->add_option("--jobs", cfg.jobs, "parallel sweep points (default: cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return drgsb::run_command(cfg, std::cerr);
}
