#ifndef VCN_BASELINES_HPP
#define VCN_BASELINES_HPP

#include <cstdint>
#include <optional>

#include "vcn/instance.hpp"

// Reference solvers: uniform random mode selection, simulated annealing on
// the queued makespan, and a branch-and-bound oracle that proves optimality
// on small instances. All are deterministic functions of (instance, config).

namespace vcn {

struct AnnealConfig {
    // Defaults to the starting assignment's makespan when unset.
    std::optional<double> initial_temperature;
    double cooling_factor = 0.95;
    // Defaults to 4 * num_tasks when unset.
    std::optional<int> steps_per_temperature;
    double min_temperature = 1e-3;  // ms
    std::uint64_t seed = 0;
};

struct AnnealResult {
    Assignment assignment;
    DelayReport report;  // queued model
};

struct ExactResult {
    Assignment assignment;
    double makespan_ms = 0;
    bool proven_optimal = false;
    std::uint64_t nodes_explored = 0;
};

// Each task independently picks one of its supported modes uniformly.
Assignment random_assign(const Instance& inst, std::uint64_t seed);

// Standard simulated annealing. Starts from random_assign(inst, cfg.seed);
// a neighbor moves one uniformly chosen task to a uniformly chosen other
// supported mode (a step is a no-op when the task has no alternative);
// energy is the queued makespan; worse moves are accepted with probability
// exp(-delta/T) under geometric cooling. Returns the best assignment seen.
AnnealResult anneal_solve(const Instance& inst, const AnnealConfig& cfg = {});

// Depth-first branch and bound over task-to-mode choices in descending data
// size order. The node bound is max(current max load over non-empty modes,
// min buffer delay + remaining data / total representative bandwidth).
// When the search finishes within node_budget the result is the proven
// queued-makespan optimum; otherwise the best assignment found so far is
// returned with proven_optimal = false.
ExactResult exact_solve(const Instance& inst,
                        std::uint64_t node_budget = 50'000'000);

}  // namespace vcn

#endif  // VCN_BASELINES_HPP
