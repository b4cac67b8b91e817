#pragma once

#include "maplan/benchmark.hpp"
#include "maplan/sim.hpp"

namespace maplan {

struct ProblemSource {
    bool is_file = false;
    std::string path;        // when is_file
    BenchmarkParams params;  // otherwise
    std::string label;

    Problem load() const;
};

ProblemSource source_from_file(std::string path);
ProblemSource source_from_params(const BenchmarkParams &params);

struct SweepSpec {
    std::vector<ProblemSource> problems;
    std::vector<RepairStrategy> strategies;
    std::vector<double> p_values;
    int repetitions = 20;
    uint64_t base_seed = 1;
    FailureKind failure = FailureKind::ActionFailure;
    int c = 1;
    Limits limits;
};

SweepSpec parse_sweep_spec(const std::string &text);

struct RawRow {
    std::string problem;
    RepairStrategy strategy;
    double p;
    int rep;
    EpisodeReport report;
};

struct MetricAgg {
    double mean = 0, min = 0, max = 0, stddev = 0;
    bool has_ratio = false;
    double ratio_to_replan = 0;
};

struct AggregateRow {
    std::string problem;
    RepairStrategy strategy;
    double p;
    MetricAgg messages, execution_length, expansions;
};

struct SweepResult {
    std::vector<RawRow> rows;  // cell-identity order: problem, strategy, p, rep
    std::vector<AggregateRow> aggregates;
};

// Deterministic cell seeds: episode seed = derive_seed(base_seed, job index)
// with jobs flattened in cell-identity order; injective within one sweep.
uint64_t sweep_episode_seed(const SweepSpec &spec, size_t cell_index, int rep);

// Runs every cell; cells are independent and run in parallel when OpenMP is
// available (`jobs` = 0 picks the hardware default, 1 forces serial). Output
// ordering does not depend on the job count.
SweepResult run_sweep(const SweepSpec &spec, int jobs = 0);

std::string raw_csv(const SweepResult &result);
std::string aggregate_csv(const SweepResult &result);
std::string summary_table(const SweepResult &result);

// Sweep-wide mean of per-p message ratios for one (problem, strategy); the
// acceptance trends are stated over this quantity.
double mean_message_ratio(const SweepResult &result, const std::string &problem,
                          RepairStrategy strategy);
double mean_execution_ratio(const SweepResult &result, const std::string &problem,
                            RepairStrategy strategy);

}  // namespace maplan
