#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "smst/disjoint_set.hpp"
#include "smst/rng.hpp"

namespace smst {

enum class ArrivalMode { DeterministicSpacing, PoissonProcess };

std::string to_string(ArrivalMode mode);
ArrivalMode arrival_mode_from_string(const std::string& s);

struct EdgeStreamConfig {
    int n = 2;
    ArrivalMode mode = ArrivalMode::DeterministicSpacing;
    std::uint64_t seed = 1;
    // Scaled-time horizon; infinity means "run until the last level spans".
    double t_max = std::numeric_limits<double>::infinity();
};

// Arrivals in time order: endpoints are distinct uniform vertices (self-loops
// resampled), repeats allowed. Deterministic mode places edge i at t = 2i/n;
// Poisson mode draws inter-arrival times Exp((n-1)/2).
class EdgeStream {
public:
    struct Edge {
        int u;
        int v;
        double t;
    };

    explicit EdgeStream(const EdgeStreamConfig& cfg);
    Edge next();
    std::int64_t emitted() const { return count_; }

private:
    int n_;
    ArrivalMode mode_;
    double rate_;
    double t_ = 0.0;
    std::int64_t count_ = 0;
    Rng rng_;
};

// The stack of forests F_1..F_K. Each arriving edge is offered to level 1,
// then 2, ... and is kept by the first forest where it joins two components.
class CascadeState {
public:
    CascadeState(int n, int k_max);

    // Returns the accepting level in [0, k_max), or -1 if every level
    // already connects u and v. t must be nondecreasing across calls;
    // the edge's cost t/n is charged to the accepting level.
    int insert(int u, int v, double t);

    int n() const { return n_; }
    int k_max() const { return k_max_; }

    DisjointSetForest& forest(int k) { return forests_[k]; }
    const DisjointSetForest& forest(int k) const { return forests_[k]; }

    double cost_sum(int k) const { return cost_sum_[k]; }
    std::int64_t accepted_edges(int k) const { return accepted_[k]; }
    bool spanning(int k) const { return accepted_[k] == n_ - 1; }
    std::optional<double> completion_time(int k) const { return completion_[k]; }

    std::int64_t total_arrivals() const { return arrivals_; }
    std::int64_t rejected_by_all() const { return rejected_all_; }

    // e(G_{k+1}) in 0-based terms: edges that survived rejection at levels <= k.
    std::int64_t edges_reaching_level(int k) const;

private:
    int n_;
    int k_max_;
    std::vector<DisjointSetForest> forests_;
    std::vector<double> cost_sum_;
    std::vector<std::int64_t> accepted_;
    std::vector<std::optional<double>> completion_;
    std::int64_t arrivals_ = 0;
    std::int64_t rejected_all_ = 0;
    double last_t_ = 0.0;
};

struct TraceRow {
    double t;
    int level;          // 1-based in output
    double c1_frac;     // C1(G_k(t)) / n
    double edges_frac;  // e(G_k(t)) / n
    double chi_frac;    // chi(G_k(t)) / n, NaN when not sampled
};

struct CascadeTrace {
    double sample_dt = 0.05;
    bool has_chi = false;
    std::vector<TraceRow> rows;
};

struct LevelSummary {
    double gamma_hat = 0.0;  // w(F_k) at completion; a lower bound if censored
    bool completed = false;
    double completion_time = std::numeric_limits<double>::quiet_NaN();
    std::int64_t accepted_edges = 0;
};

struct SimSummary {
    EdgeStreamConfig config;
    int k_max = 1;
    std::vector<LevelSummary> levels;
    CascadeTrace trace;
    std::int64_t total_arrivals = 0;
    double end_time = 0.0;
    double wall_seconds = 0.0;
};

struct RunOptions {
    double sample_dt = 0.05;
    bool track_chi = false;  // chi costs an O(n) scan per sample
    bool record_trace = true;
};

SimSummary run_cascade(const EdgeStreamConfig& cfg, int k_max, const RunOptions& opts = {});

}  // namespace smst
