#pragma once

// Experiment harness: runs (algorithm x sweep-point x seed) grids over
// generated scenarios, aggregates makespan / completion-rate statistics, and
// renders them as CSV. Instances are derived from the cell seed alone, so
// every algorithm in a cell solves the same instances and comparisons between
// algorithms are paired by seed index.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcn/aarlm.hpp"
#include "vcn/baselines.hpp"
#include "vcn/instance.hpp"
#include "vcn/scenario.hpp"

namespace vcn {

enum class AlgoKind { Random, Anneal, Aarlm, Exact };

std::string to_string(AlgoKind kind);
std::optional<AlgoKind> algo_from_string(std::string_view name);

// Per-cell knobs. `jobs` bounds the worker pool used across seeds; results are
// merged by seed index afterwards, so output never depends on it. Wall-clock
// runtimes are recorded only when `timings` is set; otherwise the runtime
// columns hold 0 and repeated runs produce byte-identical files.
struct CellConfig {
    AarlmConfig aarlm;
    AnnealConfig anneal;
    std::uint64_t exact_node_budget = 50'000'000;
    int jobs = 1;
    bool timings = false;
};

// One solved instance inside a cell.
struct SeedRun {
    std::uint64_t instance_seed = 0;
    double makespan_ms = 0;
    double completion_rate = 0;
    double runtime_s = 0;
    bool proven_optimal = true;  // false only for budget-exhausted exact runs
};

// One (sweep point, algorithm) cell: aggregate statistics plus the per-seed
// runs behind them, kept for paired analysis.
struct SweepResult {
    SweepAxis axis = SweepAxis::NumTasks;
    int axis_value = 0;
    AlgoKind algorithm = AlgoKind::Random;
    int seeds = 0;
    double mean_makespan_ms = 0;
    double std_makespan_ms = 0;
    double mean_completion_rate = 0;
    double std_completion_rate = 0;
    double mean_runtime_s = 0;
    std::string flags;  // empty, or "budget_exhausted" for incomplete exact cells
    std::vector<SeedRun> runs;
};

// Solves `num_seeds` instances drawn from `spec` (sub-seed per index) with one
// algorithm and aggregates. Every produced assignment is validated before it
// contributes; a violation indicates a solver bug and throws std::logic_error.
SweepResult run_cell(const ScenarioSpec& spec, AlgoKind algorithm, int num_seeds,
                     const CellConfig& cfg = {});

// Cross product of points x algorithms, point-major / algorithm-minor, each
// cell via run_cell on the spec produced by sweep_specs.
std::vector<SweepResult> run_sweep(const ScenarioSpec& base, SweepAxis axis,
                                   const std::vector<int>& points,
                                   const std::vector<AlgoKind>& algorithms,
                                   int num_seeds, const CellConfig& cfg = {});

// --- Trend evaluation -------------------------------------------------------
//
// The reference curves this harness reproduces make two kinds of claims:
// monotone trends (delay grows with task count, shrinks with mode count;
// completion rate moves the other way) and orderings between algorithms
// (aarlm <= anneal <= random on delay, the reverse on completion rate).
// Thresholds: Spearman |rho| >= 0.8 with the expected sign for a trend, and
// the expected order on >= 80% of sweep points for an ordering.

struct AlgoTrend {
    AlgoKind algorithm = AlgoKind::Random;
    double makespan_rho = 0;    // Spearman(mean makespan, axis value)
    double completion_rho = 0;  // Spearman(mean completion rate, axis value)
    bool makespan_trend_ok = false;
    bool completion_trend_ok = false;
};

// Claim: metric(first) <= metric(second) at each sweep point, counted over the
// points where both algorithms ran.
struct PairOrdering {
    AlgoKind first = AlgoKind::Random;
    AlgoKind second = AlgoKind::Random;
    int points = 0;
    int satisfied = 0;
    bool ok() const { return points == 0 || 5 * satisfied >= 4 * points; }
};

struct TrendReport {
    SweepAxis axis = SweepAxis::NumTasks;
    std::vector<AlgoTrend> trends;                 // one per algorithm present
    std::vector<PairOrdering> makespan_orderings;  // first <= second on makespan
    std::vector<PairOrdering> completion_orderings;  // first <= second on rate
    std::string to_string() const;                 // human-readable summary
};

// Evaluates trends and orderings on finished sweep rows (all one axis).
TrendReport trend_checks(const std::vector<SweepResult>& results);

// --- CSV rendering -----------------------------------------------------------

// Aggregate CSV, one row per SweepResult. Header:
// axis,axis_value,algorithm,seeds,mean_makespan_ms,std_makespan_ms,
// mean_completion_rate,std_completion_rate,mean_runtime_s,flags
std::string sweep_csv(const std::vector<SweepResult>& results);

// Per-run CSV for paired analysis, one row per (cell, seed index).
std::string per_seed_csv(const std::vector<SweepResult>& results);

}  // namespace vcn
