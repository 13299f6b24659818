#ifndef VCN_AARLM_HPP
#define VCN_AARLM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcn/instance.hpp"

// AARLM (agile adaptation reinforcement learning model): a deterministic
// policy-iteration solver for the min-max mode assignment problem. A greedy
// initial assignment fills the fastest modes up to a load-balance target,
// then episodes of reward-driven task moves shift work off the most loaded
// mode, tracked in a table of visited states. Moves are accepted only on a
// strictly positive reward (makespan decrease), so the procedure cannot
// cycle and the best state is monotone over a run.

namespace vcn {

// An assignment plus cached per-mode queued loads. Caches are rebuilt from
// scratch per affected mode on every move, so they stay bitwise equal to a
// full recomputation (asserted in debug builds).
struct SearchState {
    Assignment assignment;
    std::vector<double> mode_load_cache;
    std::vector<int> mode_task_count;
    double makespan_cache = 0;
    std::uint64_t state_key = 0;  // hash of assignment.mode_of
};

// Relocation of one task between modes.
struct MoveAction {
    int task = -1;
    int from_mode = -1;
    int to_mode = -1;
    bool operator==(const MoveAction&) const = default;
};

struct QEntry {
    double makespan_ms = 0;
    std::optional<MoveAction> best_known_action;
    double cumulative_reward = 0;  // discounted running sum at last visit
};

// Visited-state table. States are keyed by the full mode vector, not by the
// hash, so distinct assignments can never collide.
class QTable {
public:
    struct VectorHash {
        std::size_t operator()(const std::vector<int>& v) const;
    };
    using Map = std::unordered_map<std::vector<int>, QEntry, VectorHash>;

    // Inserts or refreshes a state; updates the best pointer on a strictly
    // smaller makespan (first entry wins ties).
    void record_visit(const std::vector<int>& mode_of, double makespan_ms,
                      double cumulative_reward);
    void record_action(const std::vector<int>& mode_of, const MoveAction& action);

    const Map& entries() const { return entries_; }
    const std::vector<int>& best_mode_of() const { return best_mode_of_; }
    double best_makespan() const { return best_makespan_; }
    bool empty() const { return entries_.empty(); }

private:
    Map entries_;
    std::vector<int> best_mode_of_;
    double best_makespan_ = 0;
};

struct AarlmConfig {
    int episodes = 100;
    // Per-episode move budget; defaults to the instance's task count.
    std::optional<int> moves_per_episode;
    double discount = 0.9;  // affects reported cumulative rewards only
    // Reserved for seeded tie-breaking; the procedure itself is
    // deterministic (all ties break toward the lowest index).
    std::uint64_t seed = 0;
};

// One attempted move, accepted or not. makespan_ms is the makespan the move
// would produce, i.e. the pre-move makespan minus reward_ms.
struct TraceRecord {
    int episode = 0;
    int step = 0;
    int task = -1;
    int from_mode = -1;
    int to_mode = -1;
    double reward_ms = 0;
    double makespan_ms = 0;
    bool accepted = false;
};

struct AarlmResult {
    Assignment assignment;
    QTable qtable;
    DelayReport report;  // queued model
    std::vector<TraceRecord> trace;
    Assignment initial;
    double initial_makespan = 0;
};

// Load-balance target: total pending data over the summed representative
// mode bandwidths. The greedy fill keeps adding tasks to a mode while its
// load is at or below this value.
double load_balance_target(const Instance& inst);

SearchState make_search_state(const Instance& inst, Assignment asg);

// Applies a relocation and refreshes the two affected mode loads.
SearchState apply_move(const Instance& inst, const SearchState& state,
                       const MoveAction& action);

// Greedy fill: repeatedly pick the highest-bandwidth mode whose load is
// still within the balance target and give it the largest unassigned task
// that supports it; once no such mode remains, place each leftover task
// (largest first) on the supported mode with the smallest resulting load.
SearchState initial_assignment(const Instance& inst);

// Makespan decrease achieved by going from `before` to `after`; positive
// iff the transition strictly reduced the maximum delay.
double reward(const SearchState& before, const SearchState& after);

struct StepResult {
    std::optional<MoveAction> action;
    SearchState state;   // post-move state if accepted, the input otherwise
    double reward_ms = 0;
    // Makespan of the state the move produces, whether or not it was taken.
    double candidate_makespan_ms = 0;
};

// One policy-improvement move: take the most loaded mode, pick the task on
// it whose transmission delay is closest to the load excess over the
// balance target, and send it to the least loaded supported mode. The move
// is applied only when its reward is strictly positive; it is still
// reported when rejected. Returns no action when the most loaded mode has
// no task that can leave it.
StepResult improvement_step(const Instance& inst, const SearchState& state);

// Full run: greedy initialization, then `episodes` restarts from the best
// state in the table, each applying up to `moves_per_episode` improvement
// steps. Returns the best assignment ever visited; its makespan never
// exceeds the initial assignment's.
AarlmResult aarlm_solve(const Instance& inst, const AarlmConfig& cfg = {});

// Episode trace serialization: a header line followed by one CSV record per
// attempted move.
std::string trace_to_csv(const std::vector<TraceRecord>& trace);

}  // namespace vcn

#endif  // VCN_AARLM_HPP
