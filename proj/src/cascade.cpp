#include "smst/cascade.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace smst {

std::string to_string(ArrivalMode mode) {
    return mode == ArrivalMode::DeterministicSpacing ? "det" : "poisson";
}

ArrivalMode arrival_mode_from_string(const std::string& s) {
    if (s == "det" || s == "deterministic" || s == "deterministic-spacing")
        return ArrivalMode::DeterministicSpacing;
    if (s == "poisson" || s == "poisson-process") return ArrivalMode::PoissonProcess;
    throw std::invalid_argument("unknown arrival mode: " + s);
}

EdgeStream::EdgeStream(const EdgeStreamConfig& cfg)
    : n_(cfg.n),
      mode_(cfg.mode),
      rate_(0.5 * (cfg.n - 1)),
      rng_(Rng::keyed(cfg.seed, 0)) {
    if (n_ < 2) throw std::invalid_argument("EdgeStream: n must be >= 2");
}

EdgeStream::Edge EdgeStream::next() {
    ++count_;
    if (mode_ == ArrivalMode::DeterministicSpacing) {
        t_ = 2.0 * static_cast<double>(count_) / n_;
    } else {
        t_ += rng_.exponential(rate_);
    }
    const int u = static_cast<int>(rng_.uniform_below(static_cast<std::uint64_t>(n_)));
    int v = u;
    while (v == u) v = static_cast<int>(rng_.uniform_below(static_cast<std::uint64_t>(n_)));
    return {u, v, t_};
}

CascadeState::CascadeState(int n, int k_max)
    : n_(n),
      k_max_(k_max),
      cost_sum_(k_max, 0.0),
      accepted_(k_max, 0),
      completion_(k_max) {
    if (n < 2) throw std::invalid_argument("CascadeState: n must be >= 2");
    if (k_max < 1) throw std::invalid_argument("CascadeState: k_max must be >= 1");
    forests_.reserve(k_max);
    for (int k = 0; k < k_max; ++k) forests_.emplace_back(n);
}

int CascadeState::insert(int u, int v, double t) {
    if (t < last_t_) throw std::logic_error("CascadeState::insert: time went backwards");
    last_t_ = t;
    ++arrivals_;
    if (u == v) throw std::invalid_argument("CascadeState::insert: self-loop");
    for (int k = 0; k < k_max_; ++k) {
        if (forests_[k].unite(u, v)) {
            cost_sum_[k] += t / n_;
            ++accepted_[k];
            if (accepted_[k] == n_ - 1) completion_[k] = t;
            return k;
        }
    }
    ++rejected_all_;
    return -1;
}

std::int64_t CascadeState::edges_reaching_level(int k) const {
    std::int64_t total = rejected_all_;
    for (int j = k; j < k_max_; ++j) total += accepted_[j];
    return total;
}

namespace {

void sample_rows(const CascadeState& state, double t, bool track_chi, CascadeTrace& trace) {
    const double n = static_cast<double>(state.n());
    for (int k = 0; k < state.k_max(); ++k) {
        TraceRow row;
        row.t = t;
        row.level = k + 1;
        row.c1_frac = state.forest(k).max_component() / n;
        row.edges_frac = static_cast<double>(state.edges_reaching_level(k)) / n;
        row.chi_frac = std::numeric_limits<double>::quiet_NaN();
        if (track_chi) row.chi_frac = compute_susceptibility(state.forest(k)).chi / n;
        trace.rows.push_back(row);
    }
}

}  // namespace

SimSummary run_cascade(const EdgeStreamConfig& cfg, int k_max, const RunOptions& opts) {
    const auto start = std::chrono::steady_clock::now();

    CascadeState state(cfg.n, k_max);
    EdgeStream stream(cfg);

    SimSummary out;
    out.config = cfg;
    out.k_max = k_max;
    out.trace.sample_dt = opts.sample_dt;
    out.trace.has_chi = opts.track_chi;

    double next_sample = 0.0;
    double t = 0.0;
    while (!state.spanning(k_max - 1)) {
        const auto edge = stream.next();
        if (opts.record_trace) {
            const double cutoff = std::min(edge.t, cfg.t_max);
            while (next_sample <= cutoff) {
                sample_rows(state, next_sample, opts.track_chi, out.trace);
                next_sample += opts.sample_dt;
            }
        }
        if (edge.t > cfg.t_max) break;
        state.insert(edge.u, edge.v, edge.t);
        t = edge.t;
    }
    if (opts.record_trace && state.spanning(k_max - 1)) {
        // Close the trace with the final state.
        sample_rows(state, next_sample, opts.track_chi, out.trace);
    }

    out.levels.resize(k_max);
    for (int k = 0; k < k_max; ++k) {
        auto& lvl = out.levels[k];
        lvl.gamma_hat = state.cost_sum(k);
        lvl.completed = state.spanning(k);
        lvl.accepted_edges = state.accepted_edges(k);
        if (auto ct = state.completion_time(k)) lvl.completion_time = *ct;
    }
    out.total_arrivals = state.total_arrivals();
    out.end_time = t;
    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace smst
