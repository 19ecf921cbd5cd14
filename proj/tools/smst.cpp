// Command-line front end: seeded simulation sweeps, the rho / bounds /
// thresholds numerics, and CSV table generation.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smst/cascade.hpp"
#include "smst/ode_bounds.hpp"
#include "smst/rho_numerics.hpp"
#include "smst/runner.hpp"
#include "smst/thresholds.hpp"
#include "smst/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
}

struct Manifest {
    std::string command;
    json config;
    json extra = json::object();
    std::vector<std::string> files;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void flush(const fs::path& dir) {
        json j{{"command", command},
               {"version", smst::kVersion},
               {"config", config},
               {"config_hash", fnv1a(config.dump())},
               {"files", files},
               {"wall_seconds",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
        j.update(extra);
        write_file(dir / "manifest.json", j.dump(2) + "\n");
    }
};

fs::path prepare_out(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

// Flat key=value config: each key names a long option of the subcommand.
// Values fill only options absent from the command line, so flags win.
void apply_flat_config(CLI::App* sub, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config file: " + path);
    auto trim = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config")
            throw std::runtime_error(path + ": unknown config key: " + key);
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    int n = 100000;
    int k_max = 5;
    int seeds = 10;
    std::vector<std::uint64_t> seed_list;
    std::uint64_t seed = 1;
    double t_max = std::numeric_limits<double>::infinity();
    std::string mode = "det";
    double sample_dt = 0.05;
    bool track_chi = false;
    bool dump_trace = false;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    std::string out = "out/simulate";
    std::string config;
};

int cmd_simulate(const SimulateArgs& args) {
    smst::EdgeStreamConfig base;
    base.n = args.n;
    base.mode = smst::arrival_mode_from_string(args.mode);
    base.t_max = args.t_max;

    std::vector<std::uint64_t> seeds = args.seed_list;
    if (seeds.empty()) {
        seeds.reserve(args.seeds);
        for (int i = 0; i < args.seeds; ++i) seeds.push_back(smst::derive_seed(args.seed, i));
    }

    smst::RunOptions opts;
    opts.sample_dt = args.sample_dt;
    opts.track_chi = args.track_chi;

    const fs::path dir = prepare_out(args.out);
    Manifest manifest;
    manifest.command = "simulate";
    manifest.config = {{"n", args.n},
                       {"k_max", args.k_max},
                       {"mode", args.mode},
                       {"seed", args.seed},
                       {"seeds", seeds},
                       {"t_max", std::isfinite(args.t_max) ? json(args.t_max) : json()},
                       {"sample_dt", args.sample_dt},
                       {"chi", args.track_chi},
                       {"workers", args.workers}};
    std::vector<std::string> errors;
    auto runs = smst::run_replicates(base, args.k_max, opts, seeds, args.workers, &errors);

    json failures = json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        char name[32];
        if (!errors[i].empty()) {
            failures.push_back({{"replicate", i}, {"seed", seeds[i]}, {"error", errors[i]}});
            continue;
        }
        std::snprintf(name, sizeof(name), "seed_%04zu.json", i);
        write_file(dir / name, smst::summary_to_json(runs[i]) + "\n");
        manifest.files.emplace_back(name);
        if (args.dump_trace) {
            std::snprintf(name, sizeof(name), "trace_%04zu.csv", i);
            std::ofstream os(dir / name, std::ios::binary);
            smst::write_trace_csv(os, runs[i].trace);
            manifest.files.emplace_back(name);
        }
    }
    manifest.extra["failures"] = failures;

    const auto stats = smst::aggregate_summaries(runs);
    write_file(dir / "aggregate.json", smst::aggregate_to_json(stats) + "\n");
    {
        std::ofstream os(dir / "aggregate.csv", std::ios::binary);
        smst::write_aggregate_csv(os, stats);
    }
    manifest.files.emplace_back("aggregate.json");
    manifest.files.emplace_back("aggregate.csv");
    manifest.flush(dir);

    std::cout << "simulate: " << runs.size() << " runs, n=" << args.n << ", K=" << args.k_max
              << " -> " << dir.string() << "\n";
    if (!failures.empty())
        std::cout << "  WARNING: " << failures.size() << " replicate(s) failed; see manifest\n";
    for (int k = 0; k < stats.k_max; ++k) {
        std::cout << "  gamma_" << (k + 1) << ": mean=" << format_double(stats.mean[k])
                  << " censored=" << stats.censored[k] << "\n";
    }
    return 0;
}

// --------------------------------------------------------------------- rho

struct RhoArgs {
    int k_max = 5;
    double dt = 0.01;
    double window = 10.0;
    std::string out = "out/rho";
    std::string config;
};

int cmd_rho(const RhoArgs& args) {
    const fs::path dir = prepare_out(args.out);
    auto fam = smst::build_rho_family(args.k_max, args.dt, args.window);

    Manifest manifest;
    manifest.command = "rho";
    manifest.config = {{"k_max", args.k_max}, {"dt", args.dt}, {"window", args.window}};

    json family = json::array();
    for (int k = 1; k <= args.k_max; ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "rho_%d.csv", k);
        std::ostringstream csv;
        csv << "t,rho\n";
        csv.precision(10);
        const auto& rho = fam.rho[k];
        for (std::size_t i = 0; i < rho.size(); ++i)
            csv << rho.t_at(i) << ',' << rho.values[i] << '\n';
        write_file(dir / name, csv.str());
        manifest.files.emplace_back(name);

        family.push_back({{"k", k},
                          {"translation", fam.translation[k]},
                          {"xi_hat", fam.xi_hat[k]},
                          {"gamma", fam.gamma[k].value},
                          {"gamma_truncated", fam.gamma[k].truncated},
                          {"gamma_tail_residual", fam.gamma[k].tail_residual}});
    }
    write_file(dir / "family.json", json{{"family", family}}.dump(2) + "\n");
    manifest.files.emplace_back("family.json");
    manifest.flush(dir);

    std::cout << "rho: wrote curves for k=1.." << args.k_max << " -> " << dir.string() << "\n";
    for (int k = 1; k <= args.k_max; ++k)
        std::cout << "  k=" << k << " xi_hat=" << format_double(fam.xi_hat[k])
                  << " gamma=" << format_double(fam.gamma[k].value) << "\n";
    return 0;
}

// ------------------------------------------------------------------ bounds

struct BoundsArgs {
    int k_max = 9;
    double dt = 1e-5;
    double horizon = 250.0;
    double store_dt = 1e-3;
    bool rk4 = false;
    std::string out = "out/bounds";
    std::string config;
};

int cmd_bounds(const BoundsArgs& args) {
    const fs::path dir = prepare_out(args.out);
    smst::GSystemOptions opts;
    opts.dt = args.dt;
    opts.horizon = args.horizon;
    opts.store_dt = args.store_dt;
    opts.integrator = args.rk4 ? smst::GIntegrator::RK4 : smst::GIntegrator::Euler;
    const auto sys = smst::solve_g_system(args.k_max, opts);

    Manifest manifest;
    manifest.command = "bounds";
    manifest.config = {{"k_max", args.k_max},
                       {"dt", args.dt},
                       {"horizon", args.horizon},
                       {"store_dt", args.store_dt},
                       {"integrator", args.rk4 ? "rk4" : "euler"},
                       {"tail_met", sys.tail_met},
                       {"end_time", sys.end_time}};

    {
        std::ostringstream csv;
        csv << "t";
        for (int k = 1; k <= args.k_max; ++k) csv << ",g" << k;
        csv << '\n';
        csv.precision(10);
        for (std::size_t i = 0; i < sys.g.front().size(); ++i) {
            csv << sys.g.front().t_at(i);
            for (int k = 0; k < args.k_max; ++k) csv << ',' << sys.g[k].values[i];
            csv << '\n';
        }
        write_file(dir / "g_curves.csv", csv.str());
        manifest.files.emplace_back("g_curves.csv");
    }
    {
        std::ostringstream csv;
        csv << "k,gamma_lower,gamma_upper,Gamma_lower,Gamma_upper,Gamma_bar\n";
        csv.precision(10);
        for (int k = 1; k <= args.k_max; ++k) {
            const auto b = smst::closed_bounds(k);
            csv << k << ',' << b.gamma_lower << ',' << b.gamma_upper << ',' << b.Gamma_lower
                << ',' << b.Gamma_upper << ',' << sys.gamma_bar[k - 1] << '\n';
        }
        write_file(dir / "bounds.csv", csv.str());
        manifest.files.emplace_back("bounds.csv");
    }
    manifest.flush(dir);

    std::cout << "bounds: K=" << args.k_max << " dt=" << args.dt
              << (sys.tail_met ? "" : " (horizon reached before tail criterion)") << " -> "
              << dir.string() << "\n";
    for (int k = 1; k <= std::min(args.k_max, 9); ++k)
        std::cout << "  Gamma_bar_" << k << " = " << format_double(sys.gamma_bar[k - 1]) << "\n";
    return 0;
}

// -------------------------------------------------------------- thresholds

struct ThresholdArgs {
    int k_max = 2;
    double step = std::numbers::pi / 2.0 * 1e-5;
    double rho_dt = 0.01;
    double rho_window = 10.0;
    std::string out = "out/thresholds";
    std::string config;
};

int cmd_thresholds(const ThresholdArgs& args) {
    const fs::path dir = prepare_out(args.out);
    Manifest manifest;
    manifest.command = "thresholds";
    manifest.config = {{"k_max", args.k_max},
                       {"step", args.step},
                       {"rho_dt", args.rho_dt},
                       {"rho_window", args.rho_window}};

    json results = json::array();
    std::vector<smst::ThresholdResult> rows;
    rows.push_back(smst::solve_theta_ode(smst::phi_k2(), args.step, 2));
    if (args.k_max > 2) {
        // k >= 3 inverts the sampled rho_{k-1}; flagged as conditional.
        auto fam = smst::build_rho_family(args.k_max - 1, args.rho_dt, args.rho_window);
        for (int k = 3; k <= args.k_max; ++k)
            rows.push_back(smst::solve_theta_ode(smst::phi_from_grid(fam.rho[k - 1]), args.step, k));
    }
    for (const auto& r : rows) {
        results.push_back({{"k", r.k},
                           {"s_k", r.s_k},
                           {"sigma_k", r.sigma_k},
                           {"step", r.step},
                           {"assumption_flag", r.assumption_flag}});
    }
    const auto core = smst::core3_threshold();
    json j{{"thresholds", results}, {"c3", core.c3}, {"c3_lambda_star", core.lambda_star}};
    write_file(dir / "thresholds.json", j.dump(2) + "\n");
    manifest.files.emplace_back("thresholds.json");
    manifest.flush(dir);

    std::cout << "thresholds -> " << dir.string() << "\n";
    for (const auto& r : rows)
        std::cout << "  k=" << r.k << " s_k=" << format_double(r.s_k)
                  << " sigma_k=" << format_double(r.sigma_k)
                  << (r.assumption_flag ? " (conditional on smoothness of rho_{k-1})" : "")
                  << "\n";
    std::cout << "  c3=" << format_double(core.c3) << "\n";
    return 0;
}

// ------------------------------------------------------------------ report

struct ReportArgs {
    int k_max = 5;
    double dt = 0.01;
    double window = 10.0;
    double ode_dt = 1e-5;
    std::string sim_dir;
    std::string out = "out/report";
    std::string config;
};

int cmd_report(const ReportArgs& args) {
    const fs::path dir = prepare_out(args.out);
    Manifest manifest;
    manifest.command = "report";
    manifest.config = {{"k_max", args.k_max},
                       {"dt", args.dt},
                       {"window", args.window},
                       {"ode_dt", args.ode_dt},
                       {"sim_dir", args.sim_dir}};

    // Analytic gamma table from the fixed-point curves.
    auto fam = smst::build_rho_family(args.k_max, args.dt, args.window);
    {
        std::ostringstream csv;
        csv << "k,gamma\n";
        csv.precision(10);
        for (int k = 1; k <= args.k_max; ++k) csv << k << ',' << fam.gamma[k].value << '\n';
        write_file(dir / "gamma_table.csv", csv.str());
        manifest.files.emplace_back("gamma_table.csv");
    }

    // Closed-form and ODE bounds.
    {
        smst::GSystemOptions opts;
        opts.dt = args.ode_dt;
        const auto sys = smst::solve_g_system(args.k_max, opts);
        std::ostringstream csv;
        csv << "k,gamma_lower,gamma_upper,Gamma_lower,Gamma_upper,Gamma_bar\n";
        csv.precision(10);
        for (int k = 1; k <= args.k_max; ++k) {
            const auto b = smst::closed_bounds(k);
            csv << k << ',' << b.gamma_lower << ',' << b.gamma_upper << ',' << b.Gamma_lower
                << ',' << b.Gamma_upper << ',' << sys.gamma_bar[k - 1] << '\n';
        }
        write_file(dir / "Gamma_bounds.csv", csv.str());
        manifest.files.emplace_back("Gamma_bounds.csv");
    }

    // Thresholds: sigma_2 exactly, later ones from the sampled inverses.
    {
        std::ostringstream csv;
        csv << "k,s_k,sigma_k,assumption_flag\n";
        csv.precision(10);
        const auto r2 = smst::solve_theta_ode(smst::phi_k2());
        csv << 2 << ',' << r2.s_k << ',' << r2.sigma_k << ',' << 0 << '\n';
        for (int k = 3; k <= args.k_max; ++k) {
            const auto r = smst::solve_theta_ode(smst::phi_from_grid(fam.rho[k - 1]),
                                                 std::numbers::pi / 2.0 * 1e-5, k);
            csv << k << ',' << r.s_k << ',' << r.sigma_k << ',' << 1 << '\n';
        }
        write_file(dir / "thresholds.csv", csv.str());
        manifest.files.emplace_back("thresholds.csv");
    }

    // Simulation-based gamma_k - (2k-1), from a previous simulate run.
    {
        const fs::path agg_path = fs::path(args.sim_dir) / "aggregate.json";
        if (args.sim_dir.empty() || !fs::exists(agg_path)) {
            std::cerr << "report: missing simulation aggregate; run the `simulate` subcommand "
                         "first and pass its output directory via --sim-dir (expected "
                      << (args.sim_dir.empty() ? std::string("--sim-dir DIR") : agg_path.string())
                      << ")\n";
            return 2;
        }
        std::ifstream is(agg_path);
        json agg = json::parse(is);
        std::ostringstream csv;
        csv << "k,gamma_mean_minus_2km1,std_err,censored\n";
        csv.precision(10);
        for (const auto& row : agg.at("gamma")) {
            const int k = row.at("k").get<int>();
            if (row.at("mean").is_null()) continue;
            const double mean = row.at("mean").get<double>();
            csv << k << ',' << (mean - (2.0 * k - 1.0)) << ',';
            if (!row.at("std_err").is_null()) csv << row.at("std_err").get<double>();
            csv << ',' << row.at("censored").get<int>() << '\n';
        }
        write_file(dir / "gamma_minus_2km1.csv", csv.str());
        manifest.files.emplace_back("gamma_minus_2km1.csv");
    }

    manifest.flush(dir);
    std::cout << "report -> " << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Successive minimum spanning trees: cascade simulation and numerics"};
    app.set_version_flag("--version", smst::kVersion);
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Seeded forest-cascade simulation sweep");
    simulate->add_option("--n", sim.n, "Vertex count")->check(CLI::Range(2, 100000000));
    simulate->add_option("--k-max", sim.k_max, "Number of forests")->check(CLI::PositiveNumber);
    simulate->add_option("--seeds", sim.seeds, "Replicate count")->check(CLI::PositiveNumber);
    simulate->add_option("--seed-list", sim.seed_list, "Explicit per-replicate stream seeds");
    simulate->add_option("--seed", sim.seed, "Master seed for derived replicate seeds");
    simulate->add_option("--t-max", sim.t_max, "Time horizon (default: run until level K spans)");
    simulate->add_option("--mode", sim.mode, "Arrival mode: det|poisson")
        ->check(CLI::IsMember({"det", "poisson"}));
    simulate->add_option("--sample-dt", sim.sample_dt, "Trace sampling interval");
    simulate->add_flag("--chi", sim.track_chi, "Sample susceptibility (O(n) per sample)");
    simulate->add_flag("--trace", sim.dump_trace, "Write per-seed trace CSVs");
    simulate->add_option("--workers", sim.workers, "Parallel worker count");
    simulate->add_option("--out", sim.out, "Output directory");
    simulate->add_option("--config", sim.config,
                    "Flat key=value config file; command-line flags win");

    RhoArgs rho;
    auto* rho_cmd = app.add_subcommand("rho", "Fixed-point giant-component curves rho_k");
    rho_cmd->add_option("--k-max", rho.k_max)->check(CLI::PositiveNumber);
    rho_cmd->add_option("--dt", rho.dt, "Grid step")->check(CLI::PositiveNumber);
    rho_cmd->add_option("--window", rho.window, "Grid length per level")
        ->check(CLI::PositiveNumber);
    rho_cmd->add_option("--out", rho.out, "Output directory");
    rho_cmd->add_option("--config", rho.config,
                    "Flat key=value config file; command-line flags win");

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Occupancy ODE system and cost bounds");
    bounds_cmd->add_option("--k-max", bounds.k_max)->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--dt", bounds.dt, "Euler step")->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--horizon", bounds.horizon)->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--store-dt", bounds.store_dt, "Curve sampling interval");
    bounds_cmd->add_flag("--rk4", bounds.rk4, "Integrate with RK4 instead of Euler");
    bounds_cmd->add_option("--out", bounds.out, "Output directory");
    bounds_cmd->add_option("--config", bounds.config,
                    "Flat key=value config file; command-line flags win");

    ThresholdArgs thr;
    auto* thr_cmd = app.add_subcommand("thresholds", "Giant-component thresholds and c3");
    thr_cmd->add_option("--k-max", thr.k_max, "Highest level (k>2 uses sampled inverses)")
        ->check(CLI::Range(2, 64));
    thr_cmd->add_option("--step", thr.step, "Theta step")->check(CLI::PositiveNumber);
    thr_cmd->add_option("--rho-dt", thr.rho_dt);
    thr_cmd->add_option("--rho-window", thr.rho_window);
    thr_cmd->add_option("--out", thr.out, "Output directory");
    thr_cmd->add_option("--config", thr.config,
                    "Flat key=value config file; command-line flags win");

    ReportArgs rep;
    auto* rep_cmd = app.add_subcommand("report", "Summary tables (CSV)");
    rep_cmd->add_option("--k-max", rep.k_max)->check(CLI::PositiveNumber);
    rep_cmd->add_option("--dt", rep.dt);
    rep_cmd->add_option("--window", rep.window);
    rep_cmd->add_option("--ode-dt", rep.ode_dt);
    rep_cmd->add_option("--sim-dir", rep.sim_dir, "Directory of a previous simulate run");
    rep_cmd->add_option("--out", rep.out, "Output directory");
    rep_cmd->add_option("--config", rep.config,
                    "Flat key=value config file; command-line flags win");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            if (!sim.config.empty()) apply_flat_config(simulate, sim.config);
            return cmd_simulate(sim);
        }
        if (rho_cmd->parsed()) {
            if (!rho.config.empty()) apply_flat_config(rho_cmd, rho.config);
            return cmd_rho(rho);
        }
        if (bounds_cmd->parsed()) {
            if (!bounds.config.empty()) apply_flat_config(bounds_cmd, bounds.config);
            return cmd_bounds(bounds);
        }
        if (thr_cmd->parsed()) {
            if (!thr.config.empty()) apply_flat_config(thr_cmd, thr.config);
            return cmd_thresholds(thr);
        }
        if (rep_cmd->parsed()) {
            if (!rep.config.empty()) apply_flat_config(rep_cmd, rep.config);
            return cmd_report(rep);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
