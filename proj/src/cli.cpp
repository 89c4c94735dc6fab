#include "drgsb/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "drgsb/dynamics.hpp"
#include "drgsb/errors.hpp"
#include "drgsb/flow.hpp"
#include "drgsb/oracle.hpp"
#include "drgsb/reference.hpp"
#include "drgsb/se_exact.hpp"

namespace drgsb {

std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

namespace {

CutoffShape parse_cutoff(const std::string& s) {
    if (s == "exp") return CutoffShape::Exponential;
    if (s == "sharp") return CutoffShape::Sharp;
    throw UsageError("cutoff must be 'exp' or 'sharp'");
}

struct Resolved {
    FlowConfig flow;
    double t_max;
    double dt_out;
    double dt;
};

Resolved resolve(const RunConfig& cfg, FlowModel model) {
    if (!(cfg.alpha >= 0.0)) throw UsageError("alpha must be >= 0");
    if (cfg.alpha > 0.5 && !cfg.force)
        throw UsageError("the flow equations are unreliable for alpha > 0.5; "
                         "pass --force to proceed anyway");
    if (!(cfg.delta0 > 0.0)) throw UsageError("delta0 must be > 0");
    Resolved r;
    r.flow.bath.alpha = cfg.alpha;
    r.flow.bath.cutoff = parse_cutoff(cfg.cutoff);
    r.flow.bath.temperature = cfg.temperature;
    r.flow.delta0 = cfg.delta0;
    r.flow.gamma_seed = cfg.gamma_seed;
    if (cfg.gamma_seed_bm) {
        if (cfg.gamma_seed >= 0.0)
            throw UsageError("--gamma-seed and --gamma-seed-bm are exclusive");
        r.flow.gamma_seed = 0.5 * spectral_density(cfg.delta0, r.flow.bath);
    }
    r.flow.lambda_start = cfg.lambda_start;
    r.flow.lambda_min = cfg.lambda_min;
    r.flow.eta = cfg.eta;
    r.flow.model = model;
    try {
        r.flow = r.flow.resolved();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    r.t_max = cfg.t_max;
    r.dt_out = cfg.dt_out;
    r.dt = cfg.dt < 0.0 ? 0.005 : cfg.dt;
    return r;
}

class CsvOutput {
public:
    explicit CsvOutput(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_config_block(std::ostream& os, const RunConfig& cfg, const Resolved& r,
                        const std::vector<std::string>& extra = {}) {
    os << "# " << kArtifactVersion << "\n";
    os << "# command = " << cfg.subcommand << "\n";
    os << "# alpha = " << fmt_sci(r.flow.bath.alpha) << "\n";
    os << "# delta0 = " << fmt_sci(r.flow.delta0) << "\n";
    os << "# omega_c = " << fmt_sci(r.flow.bath.omega_c) << "\n";
    os << "# cutoff = " << cfg.cutoff << "\n";
    os << "# temperature = " << fmt_sci(r.flow.bath.temperature) << "\n";
    os << "# gamma_seed = " << fmt_sci(r.flow.gamma_seed)
       << (cfg.gamma_seed_bm ? " (born-markov J(delta0)/2)" : "") << "\n";
    os << "# lambda_start = " << fmt_sci(r.flow.lambda_start) << "\n";
    os << "# lambda_min = " << fmt_sci(r.flow.lambda_min) << "\n";
    os << "# eta = " << fmt_sci(r.flow.eta) << "\n";
    if (r.t_max > 0.0) os << "# t_max = " << fmt_sci(r.t_max) << "\n";
    if (r.dt_out > 0.0) os << "# dt_out = " << fmt_sci(r.dt_out) << "\n";
    for (const auto& line : extra) os << "# " << line << "\n";
    // terminal rates scale with the seed (roughly (seed)^(alpha/2)); keep the
    // seed recorded with every table so runs stay comparable
    if (cfg.subcommand != "se")
        os << "# note: delta_inf/gamma_inf depend on gamma_seed; see README" << "\n";
}

} // namespace

int cmd_flow(const RunConfig& cfg, std::ostream&) {
    Resolved r = resolve(cfg, FlowModel::SpinBoson);
    const FlowTrajectory traj = integrate_flow(r.flow);
    CsvOutput out(cfg.output);
    std::ostream& os = out.os();
    write_config_block(os, cfg, r);
    os << "lambda,delta,gamma\n";
    for (std::size_t i = 0; i < traj.size(); ++i)
        os << fmt_sci(traj.lambdas()[i]) << ',' << fmt_sci(traj.deltas()[i]) << ','
           << fmt_sci(traj.gammas()[i]) << "\n";
    os << "# terminal delta_inf=" << fmt_sci(traj.delta_inf())
       << " gamma_inf=" << fmt_sci(traj.gamma_inf()) << "\n";
    return 0;
}

namespace {

void write_quench_csv(std::ostream& os, const RunConfig& cfg, const Resolved& r,
                      double eta) {
    FlowConfig fc = r.flow;
    fc.eta = eta;
    const FlowTrajectory traj = integrate_flow(fc);
    const RateSchedule sch = to_time_schedule(traj, eta);
    const double t_max = r.t_max > 0.0 ? r.t_max : 50.0 / fc.delta0;
    const double dt_out = r.dt_out > 0.0 ? r.dt_out : t_max / 2000.0;
    const BlochTrajectory b = evolve_bloch(sch, BlochState{}, t_max, dt_out);
    Resolved shown = r;
    shown.flow.eta = eta;
    shown.t_max = t_max;
    shown.dt_out = dt_out;
    write_config_block(os, cfg, shown,
                       {"terminal delta_inf=" + fmt_sci(sch.delta_inf()) +
                        " gamma_inf=" + fmt_sci(sch.gamma_inf())});
    os << "t,sx,sy,sz,delta_t,gamma_t\n";
    for (std::size_t i = 0; i < b.t.size(); ++i)
        os << fmt_sci(b.t[i]) << ',' << fmt_sci(b.s[i].sx) << ',' << fmt_sci(b.s[i].sy)
           << ',' << fmt_sci(b.s[i].sz) << ',' << fmt_sci(sch.delta_at(b.t[i])) << ','
           << fmt_sci(sch.gamma_at(b.t[i])) << "\n";
}

std::string eta_tagged_path(const std::string& path, double eta) {
    char tag[32];
    std::snprintf(tag, sizeof tag, "_eta%g", eta);
    const auto dot = path.rfind('.');
    const auto slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

} // namespace

int cmd_quench(const RunConfig& cfg, std::ostream&) {
    Resolved r = resolve(cfg, FlowModel::SpinBoson);
    if (cfg.eta_list.empty()) {
        CsvOutput out(cfg.output);
        write_quench_csv(out.os(), cfg, r, r.flow.eta);
        return 0;
    }
    if (cfg.output == "-")
        throw UsageError("--eta-list writes one file per eta and needs --output");
    for (double eta : cfg.eta_list) {
        if (!(eta > 0.0) || !(eta <= 1.0)) throw UsageError("eta values must be in (0, 1]");
        CsvOutput out(eta_tagged_path(cfg.output, eta));
        write_quench_csv(out.os(), cfg, r, eta);
    }
    return 0;
}

int cmd_se(const RunConfig& cfg, std::ostream&) {
    Resolved r = resolve(cfg, FlowModel::SpontaneousEmission);
    if (r.flow.bath.cutoff != CutoffShape::Exponential)
        throw UsageError("se requires the exponential cutoff (exact kernel)");
    const double t_max = r.t_max > 0.0 ? r.t_max : 200.0;
    const double dt_out = r.dt_out > 0.0 ? r.dt_out : 0.1;
    // align the solver grid with the output grid
    const std::size_t stride = static_cast<std::size_t>(
        std::max(1.0, std::ceil(dt_out / std::min(r.dt, 0.01) - 1e-9)));
    const double dt = dt_out / static_cast<double>(stride);

    const AmplitudeSeries u = solve_volterra(r.flow.bath, r.flow.delta0, dt, t_max + dt);
    const RateSeries rates = extract_rates(u);

    const FlowTrajectory traj = integrate_flow(r.flow);
    const RateSchedule drg = to_time_schedule(traj, r.flow.eta);
    const BlochTrajectory sz_drg = evolve_se_lindblad(drg, BlochState{}, t_max, dt_out);

    const RatePair bm = born_markov_rates(r.flow.bath, r.flow.delta0);
    const RateSchedule bm_sch = RateSchedule::constant(bm.delta, bm.gamma);
    const BlochTrajectory sz_bm = evolve_se_lindblad(bm_sch, BlochState{}, t_max, dt_out);

    std::optional<AmplitudeSeries> ce;
    std::vector<std::string> extra{
        "dt = " + fmt_sci(dt),
        "drg terminal delta_inf=" + fmt_sci(drg.delta_inf()) +
            " gamma_inf=" + fmt_sci(drg.gamma_inf()),
        "born-markov delta=" + fmt_sci(bm.delta) + " gamma=" + fmt_sci(bm.gamma)};
    if (cfg.oracle) {
        if (cfg.n_modes < 1) throw UsageError("--n-modes must be >= 1");
        if (!(cfg.omega_max > 0.0)) throw UsageError("--omega-max must be > 0");
        const DiscreteBath bath =
            discretize_bath(r.flow.bath, static_cast<std::size_t>(cfg.n_modes),
                            cfg.omega_max);
        ce = evolve_discrete_bath(bath, r.flow.delta0, dt, t_max);
        extra.push_back("oracle n_modes=" + std::to_string(cfg.n_modes) +
                        " omega_max=" + fmt_sci(cfg.omega_max) +
                        " recurrence_time=" + fmt_sci(recurrence_time(bath)));
    }

    CsvOutput out(cfg.output);
    std::ostream& os = out.os();
    Resolved shown = r;
    shown.t_max = t_max;
    shown.dt_out = dt_out;
    write_config_block(os, cfg, shown, extra);
    os << "t,sz_exact,sz_drg,sz_bm,gamma_exact_t,delta_exact_t";
    if (ce) os << ",sz_oracle";
    os << "\n";
    const std::size_t n_out = static_cast<std::size_t>(std::llround(t_max / dt_out));
    for (std::size_t k = 0; k <= n_out; ++k) {
        const std::size_t i = k * stride;
        const double t = dt_out * static_cast<double>(k);
        const double sz_ex = 2.0 * std::norm(u.u[i]) - 1.0;
        double g_t, d_t;
        if (k == 0) {
            d_t = r.flow.delta0;  // exact initial values: u'(0)/u(0) = -i delta0
            g_t = 0.0;
        } else if (i - 1 < rates.t.size()) {
            d_t = rates.rates[i - 1].delta;
            g_t = rates.rates[i - 1].gamma;
        } else {
            d_t = std::nan("");
            g_t = std::nan("");
        }
        os << fmt_sci(t) << ',' << fmt_sci(sz_ex) << ',' << fmt_sci(sz_drg.s[k].sz)
           << ',' << fmt_sci(sz_bm.s[k].sz) << ',' << fmt_sci(g_t) << ','
           << fmt_sci(d_t);
        if (ce) os << ',' << fmt_sci(2.0 * std::norm(ce->u[i]) - 1.0);
        os << "\n";
    }
    return 0;
}

namespace {

std::vector<double> sweep_alphas(const RunConfig& cfg) {
    if (!cfg.alpha_list.empty()) {
        auto v = cfg.alpha_list;
        std::sort(v.begin(), v.end());
        return v;
    }
    if (cfg.alpha_count < 2 || cfg.alpha_min < 0.0 || !(cfg.alpha_max > cfg.alpha_min))
        throw UsageError("sweep needs --alpha-list or --alpha-min/--alpha-max/--alpha-count");
    std::vector<double> v(static_cast<std::size_t>(cfg.alpha_count));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = cfg.alpha_min + (cfg.alpha_max - cfg.alpha_min) *
                                   static_cast<double>(i) /
                                   static_cast<double>(cfg.alpha_count - 1);
    return v;
}

struct SweepRow {
    std::vector<double> values;
    std::string error;
};

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

} // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream&) {
    if (cfg.mode != "sb" && cfg.mode != "se") throw UsageError("--mode must be sb or se");
    const bool se_mode = cfg.mode == "se";
    const std::vector<double> alphas = sweep_alphas(cfg);
    for (double a : alphas)
        if (a > 0.5 && !cfg.force)
            throw UsageError("sweep includes alpha > 0.5; pass --force to proceed");

    // one resolve() pass for validation and defaults using the first alpha
    RunConfig probe = cfg;
    probe.alpha = alphas.front();
    Resolved base = resolve(probe, se_mode ? FlowModel::SpontaneousEmission
                                           : FlowModel::SpinBoson);
    if (se_mode && base.flow.bath.cutoff != CutoffShape::Exponential)
        throw UsageError("se sweep requires the exponential cutoff");
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 400.0;

    auto run_point = [&](double a) -> SweepRow {
        SweepRow row;
        try {
            RunConfig pc = cfg;
            pc.alpha = a;
            Resolved r = resolve(pc, se_mode ? FlowModel::SpontaneousEmission
                                             : FlowModel::SpinBoson);
            const FlowTrajectory traj = integrate_flow(r.flow);
            if (se_mode) {
                const AmplitudeSeries u =
                    solve_volterra(r.flow.bath, r.flow.delta0, std::min(r.dt, 0.01),
                                   t_max);
                const RateSeries rs = extract_rates(u);
                const RatePair ex = rate_average(rs, 0.5 * t_max, 0.975 * t_max);
                const RatePair bm = born_markov_rates(r.flow.bath, r.flow.delta0);
                row.values = {a, traj.delta_inf(), traj.gamma_inf(),
                              ex.delta, ex.gamma, bm.delta, bm.gamma};
            } else {
                const NibaValues nb = niba_parameters(a, r.flow.delta0,
                                                      r.flow.bath.omega_c);
                const double gi = traj.gamma_inf();
                const double tau = gi > 0.0 ? 1.0 / gi
                                            : std::numeric_limits<double>::infinity();
                const double q = gi > 0.0 ? traj.delta_inf() / gi
                                          : std::numeric_limits<double>::infinity();
                row.values = {a, traj.delta_inf(), gi, tau, q,
                              nb.delta, nb.gamma, nb.q};
            }
        } catch (const std::exception& e) {
            row.error = sanitize(e.what());
        }
        return row;
    };

    const std::size_t jobs = cfg.jobs > 0
                                 ? static_cast<std::size_t>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    std::vector<SweepRow> rows(alphas.size());
    for (std::size_t base_i = 0; base_i < alphas.size(); base_i += jobs) {
        const std::size_t hi = std::min(alphas.size(), base_i + jobs);
        std::vector<std::future<SweepRow>> futs;
        for (std::size_t i = base_i; i < hi; ++i)
            futs.push_back(std::async(std::launch::async, run_point, alphas[i]));
        for (std::size_t i = base_i; i < hi; ++i) rows[i] = futs[i - base_i].get();
    }

    CsvOutput out(cfg.output);
    std::ostream& os = out.os();
    Resolved shown = base;
    shown.t_max = se_mode ? t_max : -1.0;
    write_config_block(os, cfg, shown, {"mode = " + cfg.mode});
    const std::size_t ncol = se_mode ? 7 : 8;
    os << (se_mode ? "alpha,delta_drg,gamma_drg,delta_exact,gamma_exact,delta_bm,gamma_bm"
                   : "alpha,delta_inf,gamma_inf,tau,q_drg,delta_niba,gamma_niba,q_niba")
       << ",error\n";
    bool any_failed = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].error.empty()) {
            for (std::size_t c = 0; c < ncol; ++c)
                os << (c ? "," : "") << fmt_sci(rows[i].values[c]);
            os << ",\n";
        } else {
            any_failed = true;
            os << fmt_sci(alphas[i]);
            for (std::size_t c = 1; c < ncol; ++c) os << ",";
            os << "," << rows[i].error << "\n";
        }
    }
    return any_failed ? 1 : 0;
}

int run_command(const RunConfig& cfg, std::ostream& err) {
    try {
        if (cfg.subcommand == "flow") return cmd_flow(cfg, err);
        if (cfg.subcommand == "quench") return cmd_quench(cfg, err);
        if (cfg.subcommand == "se") return cmd_se(cfg, err);
        if (cfg.subcommand == "sweep") return cmd_sweep(cfg, err);
        err << "error: unknown command '" << cfg.subcommand << "'\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace drgsb
