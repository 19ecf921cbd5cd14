#include "smst/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace smst {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate) {
    std::uint64_t z = master ^ (0x9e3779b97f4a7c15ULL * (replicate + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

AggregateStats aggregate_summaries(const std::vector<SimSummary>& runs) {
    AggregateStats stats;
    stats.seeds_total = static_cast<int>(runs.size());
    for (const auto& run : runs)
        stats.k_max = std::max(stats.k_max, static_cast<int>(run.levels.size()));
    if (stats.k_max == 0) return stats;
    stats.mean.assign(stats.k_max, std::numeric_limits<double>::quiet_NaN());
    stats.std_err.assign(stats.k_max, std::numeric_limits<double>::quiet_NaN());
    stats.completed.assign(stats.k_max, 0);
    stats.censored.assign(stats.k_max, 0);

    for (int k = 0; k < stats.k_max; ++k) {
        double sum = 0.0;
        int count = 0;
        for (const auto& run : runs) {
            if (k >= static_cast<int>(run.levels.size())) continue;
            if (run.levels[k].completed) {
                sum += run.levels[k].gamma_hat;
                ++count;
            } else {
                ++stats.censored[k];
            }
        }
        stats.completed[k] = count;
        if (count == 0) continue;
        const double mean = sum / count;
        stats.mean[k] = mean;
        if (count >= 2) {
            double ss = 0.0;
            for (const auto& run : runs) {
                if (k >= static_cast<int>(run.levels.size()) || !run.levels[k].completed) continue;
                const double d = run.levels[k].gamma_hat - mean;
                ss += d * d;
            }
            stats.std_err[k] = std::sqrt(ss / (count - 1)) / std::sqrt(count);
        }
    }
    return stats;
}

std::vector<SimSummary> run_replicates(const EdgeStreamConfig& base, int k_max,
                                       const RunOptions& opts,
                                       const std::vector<std::uint64_t>& seeds, int workers,
                                       std::vector<std::string>* errors) {
    std::vector<SimSummary> results(seeds.size());
    std::vector<std::string> errs(seeds.size());
    if (seeds.empty()) {
        if (errors) errors->clear();
        return results;
    }
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(seeds.size()));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= seeds.size()) return;
            EdgeStreamConfig cfg = base;
            cfg.seed = seeds[i];
            try {
                results[i] = run_cascade(cfg, k_max, opts);
            } catch (const std::exception& e) {
                errs[i] = e.what();
            } catch (...) {
                errs[i] = "unknown error";
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();

    if (errors) {
        *errors = std::move(errs);
    } else {
        for (std::size_t i = 0; i < errs.size(); ++i) {
            if (!errs[i].empty())
                throw std::runtime_error("replicate " + std::to_string(i) + " failed: " + errs[i]);
        }
    }
    return results;
}

void write_trace_csv(std::ostream& os, const CascadeTrace& trace) {
    os << "t,k,c1_frac,edges_frac";
    if (trace.has_chi) os << ",chi_frac";
    os << '\n';
    os.precision(10);
    for (const auto& row : trace.rows) {
        os << row.t << ',' << row.level << ',' << row.c1_frac << ',' << row.edges_frac;
        if (trace.has_chi) os << ',' << row.chi_frac;
        os << '\n';
    }
}

namespace {

nlohmann::json config_json(const EdgeStreamConfig& cfg) {
    return {{"n", cfg.n},
            {"mode", to_string(cfg.mode)},
            {"seed", cfg.seed},
            {"t_max", std::isfinite(cfg.t_max) ? nlohmann::json(cfg.t_max) : nlohmann::json()}};
}

}  // namespace

std::string summary_to_json(const SimSummary& summary, bool include_timing) {
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t k = 0; k < summary.levels.size(); ++k) {
        const auto& lvl = summary.levels[k];
        nlohmann::json j{{"k", k + 1},
                         {"gamma_hat", lvl.gamma_hat},
                         {"completed", lvl.completed},
                         {"accepted_edges", lvl.accepted_edges}};
        j["completion_time"] =
            lvl.completed ? nlohmann::json(lvl.completion_time) : nlohmann::json();
        levels.push_back(std::move(j));
    }
    nlohmann::json j{{"config", config_json(summary.config)},
                     {"k_max", summary.k_max},
                     {"levels", std::move(levels)},
                     {"total_arrivals", summary.total_arrivals},
                     {"end_time", summary.end_time}};
    if (include_timing) j["wall_seconds"] = summary.wall_seconds;
    return j.dump(2);
}

std::string aggregate_to_json(const AggregateStats& stats) {
    nlohmann::json per_k = nlohmann::json::array();
    for (int k = 0; k < stats.k_max; ++k) {
        nlohmann::json j{{"k", k + 1},
                         {"completed", stats.completed[k]},
                         {"censored", stats.censored[k]}};
        j["mean"] = stats.completed[k] > 0 ? nlohmann::json(stats.mean[k]) : nlohmann::json();
        j["std_err"] =
            stats.completed[k] >= 2 ? nlohmann::json(stats.std_err[k]) : nlohmann::json();
        per_k.push_back(std::move(j));
    }
    nlohmann::json j{{"seeds_total", stats.seeds_total}, {"gamma", std::move(per_k)}};
    return j.dump(2);
}

void write_aggregate_csv(std::ostream& os, const AggregateStats& stats) {
    os << "k,mean,std_err,completed,censored\n";
    os.precision(10);
    for (int k = 0; k < stats.k_max; ++k) {
        os << (k + 1) << ',';
        if (stats.completed[k] > 0) os << stats.mean[k];
        os << ',';
        if (stats.completed[k] >= 2) os << stats.std_err[k];
        os << ',' << stats.completed[k] << ',' << stats.censored[k] << '\n';
    }
}

}  // namespace smst
