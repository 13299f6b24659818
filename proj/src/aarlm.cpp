#include "vcn/aarlm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vcn/rng.hpp"
#include "vcn/text.hpp"

namespace vcn {

namespace {

std::uint64_t hash_mode_vector(const std::vector<int>& mode_of) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (int m : mode_of)
        h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(m)));
    return h;
}

double max_nonempty_load(const std::vector<double>& loads,
                         const std::vector<int>& counts) {
    double worst = 0;
    for (std::size_t c = 0; c < loads.size(); ++c)
        if (counts[c] > 0) worst = std::max(worst, loads[c]);
    return worst;
}

#ifndef NDEBUG
bool caches_consistent(const Instance& inst, const SearchState& s) {
    for (int c = 0; c < inst.num_modes(); ++c) {
        if (s.mode_load_cache[c] != mode_load(inst, s.assignment, c)) return false;
    }
    return s.makespan_cache == makespan(inst, s.assignment, DelayModel::Queued);
}
#endif

// Shared step body with the balance target precomputed by the caller.
StepResult step_with_target(const Instance& inst, const SearchState& state,
                            double target) {
    assert(caches_consistent(inst, state));
    int from = 0;
    for (int c = 1; c < inst.num_modes(); ++c)
        if (state.mode_load_cache[c] > state.mode_load_cache[from]) from = c;

    const double excess = state.mode_load_cache[from] - target;
    int task = -1;
    double best_diff = 0;
    for (int j = 0; j < inst.num_tasks(); ++j) {
        if (state.assignment.mode_of[j] != from) continue;
        const double diff = std::abs(inst.transmission_delay(j, from) - excess);
        if (task < 0 || diff < best_diff) {
            task = j;
            best_diff = diff;
        }
    }
    if (task < 0)
        return {std::nullopt, state, 0.0, state.makespan_cache};  // mode is empty

    int to = -1;
    for (int c = 0; c < inst.num_modes(); ++c) {
        if (c == from || !inst.supports(task, c)) continue;
        if (to < 0 || state.mode_load_cache[c] < state.mode_load_cache[to]) to = c;
    }
    if (to < 0)
        return {std::nullopt, state, 0.0, state.makespan_cache};  // cannot leave

    const MoveAction action{task, from, to};
    SearchState next = apply_move(inst, state, action);
    const double r = reward(state, next);
    const double candidate = next.makespan_cache;
    if (r > 0) return {action, std::move(next), r, candidate};
    return {action, state, r, candidate};
}

}  // namespace

std::size_t QTable::VectorHash::operator()(const std::vector<int>& v) const {
    return static_cast<std::size_t>(hash_mode_vector(v));
}

void QTable::record_visit(const std::vector<int>& mode_of, double makespan_ms,
                          double cumulative_reward) {
    auto [it, inserted] = entries_.try_emplace(mode_of);
    it->second.makespan_ms = makespan_ms;
    it->second.cumulative_reward = cumulative_reward;
    if (best_mode_of_.empty() || makespan_ms < best_makespan_) {
        best_mode_of_ = mode_of;
        best_makespan_ = makespan_ms;
    }
}

void QTable::record_action(const std::vector<int>& mode_of,
                           const MoveAction& action) {
    auto it = entries_.find(mode_of);
    if (it == entries_.end())
        throw std::logic_error("action recorded for an unvisited state");
    it->second.best_known_action = action;
}

double load_balance_target(const Instance& inst) {
    return inst.total_data() / inst.total_mode_bandwidth();
}

SearchState make_search_state(const Instance& inst, Assignment asg) {
    if (!is_valid(inst, asg))
        throw std::invalid_argument("assignment is not valid for this instance");
    SearchState s;
    s.assignment = std::move(asg);
    s.mode_load_cache.resize(inst.num_modes());
    s.mode_task_count.assign(inst.num_modes(), 0);
    for (int j = 0; j < inst.num_tasks(); ++j)
        ++s.mode_task_count[s.assignment.mode_of[j]];
    for (int c = 0; c < inst.num_modes(); ++c)
        s.mode_load_cache[c] = mode_load(inst, s.assignment, c);
    s.makespan_cache = max_nonempty_load(s.mode_load_cache, s.mode_task_count);
    s.state_key = hash_mode_vector(s.assignment.mode_of);
    return s;
}

SearchState apply_move(const Instance& inst, const SearchState& state,
                       const MoveAction& action) {
    assert(state.assignment.mode_of[action.task] == action.from_mode);
    assert(inst.supports(action.task, action.to_mode));
    SearchState next = state;
    next.assignment.mode_of[action.task] = action.to_mode;
    next.mode_load_cache[action.from_mode] =
        mode_load(inst, next.assignment, action.from_mode);
    next.mode_load_cache[action.to_mode] =
        mode_load(inst, next.assignment, action.to_mode);
    --next.mode_task_count[action.from_mode];
    ++next.mode_task_count[action.to_mode];
    next.makespan_cache = max_nonempty_load(next.mode_load_cache, next.mode_task_count);
    next.state_key = hash_mode_vector(next.assignment.mode_of);
    assert(caches_consistent(inst, next));
    return next;
}

SearchState initial_assignment(const Instance& inst) {
    const double target = load_balance_target(inst);
    const int n = inst.num_tasks();
    const int m = inst.num_modes();

    // Tasks by descending data size, modes by descending representative
    // bandwidth; ties toward the lower index.
    std::vector<int> task_order(n);
    std::iota(task_order.begin(), task_order.end(), 0);
    std::stable_sort(task_order.begin(), task_order.end(), [&](int a, int b) {
        return inst.data_size(a) > inst.data_size(b);
    });
    std::vector<int> mode_order(m);
    std::iota(mode_order.begin(), mode_order.end(), 0);
    std::stable_sort(mode_order.begin(), mode_order.end(), [&](int a, int b) {
        return inst.mode_bandwidth(a) > inst.mode_bandwidth(b);
    });

    Assignment asg;
    asg.mode_of.assign(n, -1);
    std::vector<double> load(m);
    for (int c = 0; c < m; ++c) load[c] = inst.buffer_delay(c);
    std::vector<int> unassigned_support(m, 0);  // movable work left per mode
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < m; ++c)
            if (inst.supports(j, c)) ++unassigned_support[c];

    int remaining = n;
    while (remaining > 0) {
        // Fastest mode still within the balance target that can take a task.
        int mode = -1;
        for (int c : mode_order) {
            if (unassigned_support[c] > 0 && leq_tol(load[c], target)) {
                mode = c;
                break;
            }
        }
        if (mode < 0) break;
        // Largest unassigned task supporting it.
        for (int j : task_order) {
            if (asg.mode_of[j] == -1 && inst.supports(j, mode)) {
                asg.mode_of[j] = mode;
                load[mode] += inst.transmission_delay(j, mode);
                for (int c = 0; c < m; ++c)
                    if (inst.supports(j, c)) --unassigned_support[c];
                --remaining;
                break;
            }
        }
    }

    // Completion rule: leftovers go to the supported mode with the smallest
    // resulting load, largest task first.
    if (remaining > 0) {
        for (int j : task_order) {
            if (asg.mode_of[j] != -1) continue;
            int best = -1;
            double best_load = 0;
            for (int c = 0; c < m; ++c) {
                if (!inst.supports(j, c)) continue;
                const double would = load[c] + inst.transmission_delay(j, c);
                if (best < 0 || would < best_load) {
                    best = c;
                    best_load = would;
                }
            }
            asg.mode_of[j] = best;
            load[best] = best_load;
        }
    }

    return make_search_state(inst, std::move(asg));
}

double reward(const SearchState& before, const SearchState& after) {
    return before.makespan_cache - after.makespan_cache;
}

StepResult improvement_step(const Instance& inst, const SearchState& state) {
    return step_with_target(inst, state, load_balance_target(inst));
}

AarlmResult aarlm_solve(const Instance& inst, const AarlmConfig& cfg) {
    if (cfg.episodes < 1)
        throw std::invalid_argument("episodes must be >= 1");
    if (cfg.moves_per_episode && *cfg.moves_per_episode < 1)
        throw std::invalid_argument("moves_per_episode must be >= 1");
    if (!(cfg.discount >= 0.0 && cfg.discount < 1.0))
        throw std::invalid_argument("discount must be in [0, 1)");
    const int moves = cfg.moves_per_episode.value_or(inst.num_tasks());
    const double target = load_balance_target(inst);

    AarlmResult result;
    SearchState init = initial_assignment(inst);
    result.initial = init.assignment;
    result.initial_makespan = init.makespan_cache;
    result.qtable.record_visit(init.assignment.mode_of, init.makespan_cache, 0.0);

    for (int episode = 1; episode <= cfg.episodes; ++episode) {
        // Restart from the lowest-makespan state seen so far.
        SearchState state = make_search_state(
            inst, Assignment{result.qtable.best_mode_of()});
        double cumulative = 0;
        for (int step = 1; step <= moves; ++step) {
            StepResult sr = step_with_target(inst, state, target);
            if (!sr.action) break;
            result.trace.push_back({episode, step, sr.action->task,
                                    sr.action->from_mode, sr.action->to_mode,
                                    sr.reward_ms, sr.candidate_makespan_ms,
                                    sr.reward_ms > 0});
            if (sr.reward_ms <= 0) break;  // the same move would repeat
            cumulative = cfg.discount * cumulative + sr.reward_ms;
            result.qtable.record_action(state.assignment.mode_of, *sr.action);
            result.qtable.record_visit(sr.state.assignment.mode_of,
                                       sr.state.makespan_cache, cumulative);
            state = std::move(sr.state);
        }
    }

    result.assignment = Assignment{result.qtable.best_mode_of()};
    result.report = delay_report(inst, result.assignment, DelayModel::Queued);
    return result;
}

std::string trace_to_csv(const std::vector<TraceRecord>& trace) {
    std::string out =
        "episode,step,task,from_mode,to_mode,reward_ms,makespan_ms,accepted\n";
    for (const TraceRecord& r : trace) {
        out += std::to_string(r.episode) + ',' + std::to_string(r.step) + ',' +
               std::to_string(r.task) + ',' + std::to_string(r.from_mode) + ',' +
               std::to_string(r.to_mode) + ',';
        append_number(out, r.reward_ms);
        out += ',';
        append_number(out, r.makespan_ms);
        out += ',';
        out += r.accepted ? "1" : "0";
        out += '\n';
    }
    return out;
}

}  // namespace vcn
