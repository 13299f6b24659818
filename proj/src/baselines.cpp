#include "vcn/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vcn/rng.hpp"

namespace vcn {

namespace {

constexpr std::uint64_t kanneal_walk_salt = 0x616e6e65616cULL;

double max_nonempty(const std::vector<double>& loads, const std::vector<int>& counts) {
    double worst = 0;
    for (std::size_t c = 0; c < loads.size(); ++c)
        if (counts[c] > 0) worst = std::max(worst, loads[c]);
    return worst;
}

struct BnbContext {
    const Instance* inst;
    std::vector<int> task_order;          // descending data size
    std::vector<double> remaining_after;  // data left after position i
    double min_buffer = 0;
    double peak_bandwidth_sum = 0;        // sum over modes of max task bandwidth
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    double best_energy = 0;
    std::vector<int> best_modes;          // indexed by task, not by position
    std::vector<int> chosen;              // current path, indexed by task
};

// Loads are passed by value per level so every leaf's mode load is a clean
// left-to-right sum, free of add/undo drift.
void bnb_descend(BnbContext& ctx, int pos, const std::vector<double>& loads,
                 const std::vector<int>& counts) {
    if (ctx.exhausted) return;
    if (++ctx.nodes > ctx.budget) {
        ctx.exhausted = true;
        return;
    }
    const Instance& inst = *ctx.inst;
    if (pos == static_cast<int>(ctx.task_order.size())) {
        const double energy = max_nonempty(loads, counts);
        if (energy < ctx.best_energy) {
            ctx.best_energy = energy;
            ctx.best_modes = ctx.chosen;
        }
        return;
    }
    const int task = ctx.task_order[pos];
    const double tail_bound =
        ctx.min_buffer + ctx.remaining_after[pos] / ctx.peak_bandwidth_sum;

    // Supported modes by ascending resulting load, ties toward lower index.
    struct Child {
        int mode;
        double load;
    };
    std::vector<Child> children;
    children.reserve(inst.num_modes());
    for (int c = 0; c < inst.num_modes(); ++c) {
        if (!inst.supports(task, c)) continue;
        children.push_back({c, loads[c] + inst.transmission_delay(task, c)});
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) { return a.load < b.load; });

    for (const Child& child : children) {
        std::vector<double> next_loads = loads;
        next_loads[child.mode] = child.load;
        std::vector<int> next_counts = counts;
        ++next_counts[child.mode];
        const double bound =
            std::max(max_nonempty(next_loads, next_counts), tail_bound);
        if (bound >= ctx.best_energy) continue;
        ctx.chosen[task] = child.mode;
        bnb_descend(ctx, pos + 1, next_loads, next_counts);
        ctx.chosen[task] = -1;
        if (ctx.exhausted) return;
    }
}

// Greedy incumbent: largest task first onto the supported mode with the
// smallest resulting load.
Assignment greedy_min_load(const Instance& inst, const std::vector<int>& order) {
    Assignment asg;
    asg.mode_of.assign(inst.num_tasks(), -1);
    std::vector<double> load(inst.num_modes());
    for (int c = 0; c < inst.num_modes(); ++c) load[c] = inst.buffer_delay(c);
    for (int j : order) {
        int best = -1;
        double best_load = 0;
        for (int c = 0; c < inst.num_modes(); ++c) {
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
    return asg;
}

}  // namespace

Assignment random_assign(const Instance& inst, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Assignment asg;
    asg.mode_of.resize(inst.num_tasks());
    std::vector<int> supported;
    for (int j = 0; j < inst.num_tasks(); ++j) {
        supported.clear();
        for (int c = 0; c < inst.num_modes(); ++c)
            if (inst.supports(j, c)) supported.push_back(c);
        asg.mode_of[j] = supported[uniform_below(rng, supported.size())];
    }
    return asg;
}

AnnealResult anneal_solve(const Instance& inst, const AnnealConfig& cfg) {
    if (!(cfg.cooling_factor > 0.0 && cfg.cooling_factor < 1.0))
        throw std::invalid_argument("cooling_factor must be in (0, 1)");
    if (!(cfg.min_temperature > 0))
        throw std::invalid_argument("min_temperature must be positive");
    if (cfg.initial_temperature && !(*cfg.initial_temperature > 0))
        throw std::invalid_argument("initial_temperature must be positive");
    if (cfg.steps_per_temperature && *cfg.steps_per_temperature < 1)
        throw std::invalid_argument("steps_per_temperature must be >= 1");

    const int n = inst.num_tasks();
    const int m = inst.num_modes();
    Assignment current = random_assign(inst, cfg.seed);
    std::mt19937_64 rng(derive_seed(cfg.seed, kanneal_walk_salt));

    std::vector<double> load(m);
    std::vector<int> count(m, 0);
    for (int j = 0; j < n; ++j) ++count[current.mode_of[j]];
    for (int c = 0; c < m; ++c) load[c] = mode_load(inst, current, c);
    double energy = max_nonempty(load, count);

    Assignment best = current;
    double best_energy = energy;

    const int steps = cfg.steps_per_temperature.value_or(4 * n);
    double temperature = cfg.initial_temperature.value_or(energy);

    while (temperature >= cfg.min_temperature) {
        for (int step = 0; step < steps; ++step) {
            const int task = static_cast<int>(uniform_below(rng, n));
            const int from = current.mode_of[task];
            int alternatives = 0;
            for (int c = 0; c < m; ++c)
                if (c != from && inst.supports(task, c)) ++alternatives;
            if (alternatives == 0) continue;
            int pick = static_cast<int>(uniform_below(rng, alternatives));
            int to = -1;
            for (int c = 0; c < m; ++c) {
                if (c == from || !inst.supports(task, c)) continue;
                if (pick-- == 0) {
                    to = c;
                    break;
                }
            }

            current.mode_of[task] = to;
            const double new_from = mode_load(inst, current, from);
            const double new_to = mode_load(inst, current, to);
            const double old_from = load[from];
            const double old_to = load[to];
            load[from] = new_from;
            load[to] = new_to;
            --count[from];
            ++count[to];
            const double candidate = max_nonempty(load, count);
            const double delta = candidate - energy;
            const bool accept =
                delta <= 0 ||
                uniform_real(rng, 0.0, 1.0) < std::exp(-delta / temperature);
            if (accept) {
                energy = candidate;
                if (energy < best_energy) {
                    best_energy = energy;
                    best = current;
                }
            } else {
                current.mode_of[task] = from;
                load[from] = old_from;
                load[to] = old_to;
                ++count[from];
                --count[to];
            }
        }
        temperature *= cfg.cooling_factor;
    }

    AnnealResult result;
    result.assignment = std::move(best);
    result.report = delay_report(inst, result.assignment, DelayModel::Queued);
    return result;
}

ExactResult exact_solve(const Instance& inst, std::uint64_t node_budget) {
    if (node_budget == 0) throw std::invalid_argument("node budget must be >= 1");
    const int n = inst.num_tasks();
    const int m = inst.num_modes();

    BnbContext ctx;
    ctx.inst = &inst;
    ctx.budget = node_budget;
    ctx.task_order.resize(n);
    std::iota(ctx.task_order.begin(), ctx.task_order.end(), 0);
    std::stable_sort(ctx.task_order.begin(), ctx.task_order.end(),
                     [&](int a, int b) { return inst.data_size(a) > inst.data_size(b); });
    ctx.remaining_after.assign(n, 0.0);
    double tail = 0;
    for (int pos = n - 1; pos >= 0; --pos) {
        ctx.remaining_after[pos] = tail + inst.data_size(ctx.task_order[pos]);
        tail = ctx.remaining_after[pos];
    }
    ctx.min_buffer = inst.buffer_delay(0);
    for (int c = 1; c < m; ++c)
        ctx.min_buffer = std::min(ctx.min_buffer, inst.buffer_delay(c));
    ctx.peak_bandwidth_sum = 0;
    for (int c = 0; c < m; ++c) {
        double peak = 0;
        for (int j = 0; j < n; ++j) peak = std::max(peak, inst.bandwidth(j, c));
        ctx.peak_bandwidth_sum += peak;
    }

    const Assignment incumbent = greedy_min_load(inst, ctx.task_order);
    ctx.best_modes = incumbent.mode_of;
    ctx.best_energy = makespan(inst, incumbent, DelayModel::Queued);
    ctx.chosen.assign(n, -1);

    std::vector<double> root_loads(m);
    for (int c = 0; c < m; ++c) root_loads[c] = inst.buffer_delay(c);
    bnb_descend(ctx, 0, root_loads, std::vector<int>(m, 0));

    ExactResult result;
    result.assignment = Assignment{ctx.best_modes};
    result.makespan_ms = makespan(inst, result.assignment, DelayModel::Queued);
    result.proven_optimal = !ctx.exhausted;
    result.nodes_explored = ctx.nodes;
    return result;
}

}  // namespace vcn
