// Acceptance suite: runs each shipping criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "smst/cascade.hpp"
#include "smst/ode_bounds.hpp"
#include "smst/oracle.hpp"
#include "smst/rho_numerics.hpp"
#include "smst/rng.hpp"
#include "smst/runner.hpp"
#include "smst/thresholds.hpp"

using namespace smst;

namespace {

struct Gate {
    int failures = 0;
    void report(const std::string& name, bool ok, const std::string& detail) {
        printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
               detail.empty() ? "" : " -- ", detail.c_str());
        fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

constexpr double kZeta3 = 1.2020569031595943;

// ---------------------------------------------------------------------------

void criterion_sim_gamma(Gate& gate, const AggregateStats& stats) {
    const double targets[] = {1.2026, 3.0913, 5.0469, 7.0299, 9.0159};
    const double tols[] = {0.01, 0.03, 0.04, 0.05, 0.05};
    bool ok = true;
    std::ostringstream detail;
    for (int k = 0; k < 5; ++k) {
        const double diff = std::abs(stats.mean[k] - targets[k]);
        if (!(diff <= tols[k]) || stats.censored[k] != 0) ok = false;
        detail << "g" << (k + 1) << "=" << fmt(stats.mean[k]) << " ";
    }
    const double se1 = stats.std_err[0];
    const bool brackets = std::abs(stats.mean[0] - kZeta3) <= 3.0 * se1;
    if (!brackets) ok = false;
    detail << "| gamma_1 within 3se of zeta(3): " << (brackets ? "yes" : "NO");
    gate.report("1. simulation gamma estimates (100 seeds, n=1e5, K=5)", ok, detail.str());
}

void criterion_oracle(Gate& gate) {
    Rng rng(424242);
    int mismatches = 0;
    for (int instance = 0; instance < 200; ++instance) {
        const int n = 2 + static_cast<int>(rng.uniform_below(49));
        const int k_max = 1 + static_cast<int>(rng.uniform_below(5));
        const int m = 1 + static_cast<int>(rng.uniform_below(4 * k_max * n + 16));
        std::vector<WeightedEdge> edges;
        edges.reserve(m);
        for (int i = 0; i < m; ++i) {
            const int u = static_cast<int>(rng.uniform_below(n));
            int v = u;
            while (v == u) v = static_cast<int>(rng.uniform_below(n));
            edges.push_back({u, v, rng.next_double()});
        }
        auto expected = oracle_successive_msts(edges, n, k_max);
        auto actual = cascade_successive_msts(edges, n, k_max);
        for (int k = 0; k < k_max; ++k) {
            std::sort(expected.trees[k].begin(), expected.trees[k].end());
            std::sort(actual.trees[k].begin(), actual.trees[k].end());
            if (expected.trees[k] != actual.trees[k]) ++mismatches;
        }
    }
    gate.report("2. oracle equivalence (200 instances, n<=50, K<=5)", mismatches == 0,
                mismatches == 0 ? "0 mismatches" : fmt(mismatches) + " mismatched levels");
}

void criterion_zeta3_route(Gate& gate) {
    const auto rho1 = next_rho(rho0_step(0.01, 10.0), 0.0);
    const auto res = gamma_from_rho(rho0_step(0.01, 10.0), rho1.rho);
    const bool ok = std::abs(res.value - 1.2021) <= 5e-3;
    gate.report("3. fixed-point route to zeta(3)", ok,
                "gamma_1 = " + fmt(res.value) + " (target 1.2021 +- 0.005)");
}

void criterion_mass(Gate& gate, const RhoFamily& fam) {
    bool ok = true;
    std::ostringstream detail;
    for (int k = 1; k <= 5; ++k) {
        const double m = mass_integral(fam.rho[k]);
        if (std::abs(m - k) > 0.02) ok = false;
        detail << "m" << k << "=" << fmt(m) << " ";
    }
    gate.report("4. mass identities |mass(rho_k) - k| <= 0.02", ok, detail.str());
}

void criterion_gamma_table(Gate& gate, const RhoFamily& fam) {
    const double targets[] = {1.202, 3.095, 5.057, 7.043, 9.038};
    bool ok = true;
    std::ostringstream detail;
    for (int k = 1; k <= 5; ++k) {
        const double g = fam.gamma[k].value;
        if (std::abs(g - targets[k - 1]) > 0.01) ok = false;
        detail << "g" << k << "=" << fmt(g) << " ";
    }
    gate.report("5. analytic gamma table (k=1..5, +-0.01)", ok, detail.str());
}

void criterion_ode_bounds(Gate& gate, const GSystem& sys, const AggregateStats& sim) {
    bool ok = sys.tail_met;
    std::ostringstream detail;
    const double g1 = sys.gamma_bar[0];
    const double g2 = sys.gamma_bar[1];
    const double g5 = sys.gamma_bar[4];
    if (std::abs(g1 - 2.0 * std::log(2.0)) > 1e-3) ok = false;
    if (std::abs(g2 - 4.5542) > 2e-3) ok = false;
    if (std::abs(g5 - 25.7045) > 5e-3) ok = false;
    detail << "Gbar1=" << fmt(g1) << " Gbar2=" << fmt(g2) << " Gbar5=" << fmt(g5);

    double max_gap = 0.0, min_gap = 1e9;
    for (int k = 1; k <= 50; ++k) {
        const double gap = sys.gamma_bar[k - 1] - static_cast<double>(k) * k;
        max_gap = std::max(max_gap, gap);
        min_gap = std::min(min_gap, gap);
    }
    if (!(max_gap <= 1.0) || !(min_gap > 0.0)) ok = false;
    detail << " | gap in (0,1]: max=" << fmt(max_gap) << " min=" << fmt(min_gap);

    // upper-bound property against the simulated cumulative costs
    double cum = 0.0;
    bool upper_ok = true;
    for (int k = 0; k < 5; ++k) {
        cum += sim.mean[k];
        if (cum > sys.gamma_bar[k] + 0.05) upper_ok = false;
    }
    if (!upper_ok) ok = false;
    detail << " | sim cumulative <= Gbar+0.05: " << (upper_ok ? "yes" : "NO");
    gate.report("6. ODE bounds (dt=1e-5, k<=50)", ok, detail.str());
}

void criterion_thresholds(Gate& gate, const RhoFamily& fam) {
    const auto r2 = solve_theta_ode(phi_k2());
    const auto core = core3_threshold();
    bool ok = true;
    if (std::abs(r2.s_k - 0.91511) > 1e-4) ok = false;
    if (std::abs(r2.sigma_k - 2.69521) > 1e-4) ok = false;
    if (std::abs(core.c3 - 3.35) > 0.01) ok = false;
    if (!(r2.sigma_k < core.c3)) ok = false;
    const double xi2_gap = std::abs(r2.sigma_k - fam.xi_hat[2]);
    if (xi2_gap > 0.02) ok = false;
    std::ostringstream detail;
    detail << "s2=" << fmt(r2.s_k) << " sigma2=" << fmt(r2.sigma_k) << " c3=" << fmt(core.c3)
           << " |sigma2-xi_hat2|=" << fmt(xi2_gap);
    gate.report("7. thresholds s2, sigma2, c3", ok, detail.str());
}

void criterion_structure_laws(Gate& gate, const RhoFamily& fam, const SimSummary& run) {
    const auto edge_curve = edge_count_curve(fam.rho[1]);
    const auto& rho2 = fam.rho[2];
    double sup_c1 = 0.0, sup_edges = 0.0, sup_chi = 0.0;
    for (const auto& row : run.trace.rows) {
        if (row.t > 6.0) continue;
        // chi concentrates on (C1/n)^2 at every level
        sup_chi = std::max(sup_chi, std::abs(row.chi_frac - row.c1_frac * row.c1_frac));
        if (row.level != 2) continue;
        sup_c1 = std::max(sup_c1, std::abs(row.c1_frac - rho2(row.t)));
        sup_edges = std::max(sup_edges, std::abs(row.edges_frac - edge_curve(row.t)));
    }
    const bool ok = sup_c1 <= 0.02 && sup_edges <= 0.02 && sup_chi <= 0.03;
    std::ostringstream detail;
    detail << "sup|C1/n-rho2|=" << fmt(sup_c1) << " sup|e/n-int|=" << fmt(sup_edges)
           << " sup|chi/n-(C1/n)^2|=" << fmt(sup_chi);
    gate.report("8. structure laws at n=1e5 (level 2, t<=6)", ok, detail.str());
}

void criterion_invariants(Gate& gate, const RhoFamily& fam, const GSystem& sys,
                          const SimSummary& structure_run) {
    bool ok = true;
    std::ostringstream detail;

    // domination rho_k <= rho_{k-1}
    bool dom = true;
    for (int k = 2; k <= 5 && dom; ++k) {
        const auto& cur = fam.rho[k];
        const auto& prev = fam.rho[k - 1];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const double t = cur.t_at(i);
            if (t > prev.t_end()) break;
            const double p = prev(t);
            if (cur.values[i] > p + 1e-12 || (p > 1e-6 && !(cur.values[i] < p))) {
                dom = false;
                break;
            }
        }
    }
    detail << "domination=" << (dom ? "ok" : "VIOLATED");
    ok = ok && dom;

    // threshold spacing
    bool spacing = true;
    for (int k = 2; k <= 5; ++k) {
        if (fam.xi_hat[k] < fam.xi_hat[k - 1] + 1.0 - 0.02) spacing = false;
    }
    detail << " xi_spacing=" << (spacing ? "ok" : "VIOLATED");
    ok = ok && spacing;

    // g-system ordering
    bool order = true;
    for (std::size_t i = 0; i < sys.g[0].size() && order; ++i) {
        double prev = 1.0;
        for (int k = 0; k < sys.k_max; ++k) {
            if (sys.g[k].values[i] > prev + 1e-12) {
                order = false;
                break;
            }
            prev = sys.g[k].values[i];
        }
    }
    detail << " g_ordering=" << (order ? "ok" : "VIOLATED");
    ok = ok && order;

    // largest component nondecreasing per level in the structure run
    bool monotone = true;
    std::vector<double> last(structure_run.k_max, 0.0);
    for (const auto& row : structure_run.trace.rows) {
        if (row.c1_frac < last[row.level - 1] - 1e-12) monotone = false;
        last[row.level - 1] = row.c1_frac;
    }
    detail << " monotone_C1=" << (monotone ? "ok" : "VIOLATED");
    ok = ok && monotone;

    // deterministic reproducibility, independent of worker count
    EdgeStreamConfig base;
    base.n = 10000;
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < 3; ++i) seeds.push_back(derive_seed(17, i));
    RunOptions opts;
    opts.sample_dt = 0.25;
    const auto runs_a = run_replicates(base, 3, opts, seeds, 1);
    const auto runs_b = run_replicates(base, 3, opts, seeds, 3);
    bool reproducible = true;
    for (std::size_t i = 0; i < runs_a.size(); ++i) {
        if (summary_to_json(runs_a[i]) != summary_to_json(runs_b[i])) reproducible = false;
    }
    detail << " reproducible=" << (reproducible ? "ok" : "VIOLATED");
    ok = ok && reproducible;

    gate.report("9. invariant suites", ok, detail.str());
}

void criterion_band_proxy(Gate& gate, int workers) {
    // Desk-scale proxy for the large-n experiment: gamma_k - (2k-1) stays in
    // (-0.3, 0.3) for k <= 20 at n = 1e5.
    EdgeStreamConfig base;
    base.n = 100000;
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < 3; ++i) seeds.push_back(derive_seed(99, i));
    RunOptions opts;
    opts.record_trace = false;
    const auto runs = run_replicates(base, 20, opts, seeds, workers);
    const auto stats = aggregate_summaries(runs);
    bool ok = true;
    double worst = 0.0;
    int worst_k = 1;
    for (int k = 1; k <= 20; ++k) {
        if (stats.censored[k - 1] != 0) {
            ok = false;
            continue;
        }
        const double dev = stats.mean[k - 1] - (2.0 * k - 1.0);
        if (std::abs(dev) > std::abs(worst)) {
            worst = dev;
            worst_k = k;
        }
        if (std::abs(dev) > 0.3) ok = false;
    }
    gate.report("10. gamma-(2k-1) band proxy (n=1e5, k<=20, +-0.3)", ok,
                "worst dev " + fmt(worst) + " at k=" + fmt(worst_k));
}

}  // namespace

int main(int argc, char** argv) {
    int workers = 0;  // 0 = hardware default inside run_replicates
    int seeds = 100;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--workers" && i + 1 < argc) workers = std::atoi(argv[++i]);
        if (arg == "--seeds" && i + 1 < argc) seeds = std::atoi(argv[++i]);
    }
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) workers = 2;
    }

    Gate gate;

    // Shared artifacts.
    printf("building rho family (k<=5, dt=0.01, window 10)...\n");
    const auto fam = build_rho_family(5);

    printf("running %d cascade replicates at n=1e5, K=5 on %d workers...\n", seeds, workers);
    EdgeStreamConfig sim_cfg;
    sim_cfg.n = 100000;
    std::vector<std::uint64_t> sim_seeds;
    for (int i = 0; i < seeds; ++i) sim_seeds.push_back(derive_seed(1, i));
    RunOptions sim_opts;
    sim_opts.record_trace = false;
    const auto sim_runs = run_replicates(sim_cfg, 5, sim_opts, sim_seeds, workers);
    const auto sim_stats = aggregate_summaries(sim_runs);

    printf("solving the occupancy ODE system (K=50, dt=1e-5)...\n");
    GSystemOptions ode_opts;
    ode_opts.dt = 1e-5;
    ode_opts.store_dt = 0.01;
    const auto gsys = solve_g_system(50, ode_opts);

    printf("single structure-law run at n=1e5, K=2, chi sampled...\n");
    EdgeStreamConfig structure_cfg;
    structure_cfg.n = 100000;
    structure_cfg.seed = derive_seed(8, 0);
    structure_cfg.t_max = 6.0;
    RunOptions structure_opts;
    structure_opts.sample_dt = 0.05;
    structure_opts.track_chi = true;
    const auto structure_run = run_cascade(structure_cfg, 2, structure_opts);

    criterion_sim_gamma(gate, sim_stats);
    criterion_oracle(gate);
    criterion_zeta3_route(gate);
    criterion_mass(gate, fam);
    criterion_gamma_table(gate, fam);
    criterion_ode_bounds(gate, gsys, sim_stats);
    criterion_thresholds(gate, fam);
    criterion_structure_laws(gate, fam, structure_run);
    criterion_invariants(gate, fam, gsys, structure_run);
    criterion_band_proxy(gate, workers);

    if (gate.failures == 0) {
        printf("all acceptance criteria passed\n");
    } else {
        printf("%d acceptance criteria FAILED\n", gate.failures);
    }
    return gate.failures;
}
