#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "smst/cascade.hpp"

namespace smst {

// Per-replicate stream seed: mixed from the master seed so replicate i is
// reproducible on its own, independent of worker count and scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate);

struct AggregateStats {
    int k_max = 0;
    int seeds_total = 0;
    std::vector<double> mean;     // over completed runs only
    std::vector<double> std_err;  // sample stddev / sqrt(count); NaN below 2 samples
    std::vector<int> completed;
    std::vector<int> censored;
};

// Runs with an empty level vector (failed replicates) are skipped; they are
// neither completed nor censored.
AggregateStats aggregate_summaries(const std::vector<SimSummary>& runs);

// Runs one cascade per seed on a bounded worker pool. Results come back in
// seed order; each run is single-threaded and owned by one worker. A failing
// replicate leaves an empty summary and its message in *errors; with errors
// omitted the first failure is rethrown after the pool drains.
std::vector<SimSummary> run_replicates(const EdgeStreamConfig& base, int k_max,
                                       const RunOptions& opts,
                                       const std::vector<std::uint64_t>& seeds, int workers,
                                       std::vector<std::string>* errors = nullptr);

void write_trace_csv(std::ostream& os, const CascadeTrace& trace);
// Timing is left out of the per-seed files so reruns are byte-identical.
std::string summary_to_json(const SimSummary& summary, bool include_timing = false);
std::string aggregate_to_json(const AggregateStats& stats);
void write_aggregate_csv(std::ostream& os, const AggregateStats& stats);

}  // namespace smst
