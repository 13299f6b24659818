#include "vcn/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include "vcn/rng.hpp"
#include "vcn/stats.hpp"
#include "vcn/text.hpp"

namespace vcn {

namespace {

constexpr std::uint64_t kcell_seed_salt = 0x63656c6cULL;

std::uint64_t solver_salt(AlgoKind kind) {
    switch (kind) {
        case AlgoKind::Random: return 0x726e64ULL;
        case AlgoKind::Anneal: return 0x616e6cULL;
        case AlgoKind::Aarlm: return 0x61726cULL;
        case AlgoKind::Exact: return 0x657861ULL;
    }
    throw std::logic_error("unknown algorithm kind");
}

SeedRun solve_one(const Instance& inst, AlgoKind kind, const CellConfig& cfg,
                  std::uint64_t instance_seed) {
    SeedRun run;
    run.instance_seed = instance_seed;
    const std::uint64_t solver_seed = derive_seed(instance_seed, solver_salt(kind));

    const auto start = std::chrono::steady_clock::now();
    Assignment asg;
    switch (kind) {
        case AlgoKind::Random:
            asg = random_assign(inst, solver_seed);
            break;
        case AlgoKind::Anneal: {
            AnnealConfig ac = cfg.anneal;
            ac.seed = solver_seed;
            asg = anneal_solve(inst, ac).assignment;
            break;
        }
        case AlgoKind::Aarlm: {
            AarlmConfig rc = cfg.aarlm;
            rc.seed = solver_seed;
            asg = aarlm_solve(inst, rc).assignment;
            break;
        }
        case AlgoKind::Exact: {
            const ExactResult ex = exact_solve(inst, cfg.exact_node_budget);
            asg = ex.assignment;
            run.proven_optimal = ex.proven_optimal;
            break;
        }
    }
    if (cfg.timings) {
        run.runtime_s = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    }

    if (!is_valid(inst, asg))
        throw std::logic_error("solver produced an invalid assignment");
    const DelayReport report = delay_report(inst, asg, DelayModel::Queued);
    run.makespan_ms = report.makespan;
    run.completion_rate = report.completion_rate;
    return run;
}

}  // namespace

std::string to_string(AlgoKind kind) {
    switch (kind) {
        case AlgoKind::Random: return "random";
        case AlgoKind::Anneal: return "anneal";
        case AlgoKind::Aarlm: return "aarlm";
        case AlgoKind::Exact: return "exact";
    }
    throw std::logic_error("unknown algorithm kind");
}

std::optional<AlgoKind> algo_from_string(std::string_view name) {
    if (name == "random") return AlgoKind::Random;
    if (name == "anneal") return AlgoKind::Anneal;
    if (name == "aarlm") return AlgoKind::Aarlm;
    if (name == "exact") return AlgoKind::Exact;
    return std::nullopt;
}

SweepResult run_cell(const ScenarioSpec& spec, AlgoKind algorithm, int num_seeds,
                     const CellConfig& cfg) {
    validate_spec(spec);
    if (num_seeds < 1) throw std::invalid_argument("num_seeds must be >= 1");
    if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

    // Workers fill disjoint slots; nothing downstream looks at them until all
    // threads have joined, and aggregation then walks the slots in seed order.
    std::vector<SeedRun> runs(num_seeds);
    std::vector<std::exception_ptr> errors(num_seeds);
    std::atomic<int> next{0};
    const auto worker = [&] {
        for (int k = next.fetch_add(1); k < num_seeds; k = next.fetch_add(1)) {
            try {
                ScenarioSpec point = spec;
                point.seed = derive_seed(spec.seed, kcell_seed_salt,
                                         static_cast<std::uint64_t>(k));
                const Instance inst = generate_instance(point);
                runs[k] = solve_one(inst, algorithm, cfg, point.seed);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int workers = std::min(cfg.jobs, num_seeds);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& err : errors)
        if (err) std::rethrow_exception(err);

    SweepResult cell;
    cell.algorithm = algorithm;
    cell.seeds = num_seeds;
    std::vector<double> makespans, rates, runtimes;
    makespans.reserve(num_seeds);
    rates.reserve(num_seeds);
    runtimes.reserve(num_seeds);
    bool all_proven = true;
    for (const SeedRun& run : runs) {
        makespans.push_back(run.makespan_ms);
        rates.push_back(run.completion_rate);
        runtimes.push_back(run.runtime_s);
        all_proven = all_proven && run.proven_optimal;
    }
    cell.mean_makespan_ms = mean(makespans);
    cell.std_makespan_ms = stddev_population(makespans);
    cell.mean_completion_rate = mean(rates);
    cell.std_completion_rate = stddev_population(rates);
    cell.mean_runtime_s = mean(runtimes);
    if (!all_proven) cell.flags = "budget_exhausted";
    cell.runs = std::move(runs);
    return cell;
}

std::vector<SweepResult> run_sweep(const ScenarioSpec& base, SweepAxis axis,
                                   const std::vector<int>& points,
                                   const std::vector<AlgoKind>& algorithms,
                                   int num_seeds, const CellConfig& cfg) {
    const std::vector<ScenarioSpec> specs = sweep_specs(base, axis, points);
    std::vector<SweepResult> results;
    results.reserve(specs.size() * algorithms.size());
    for (std::size_t p = 0; p < specs.size(); ++p) {
        for (AlgoKind algorithm : algorithms) {
            SweepResult cell = run_cell(specs[p], algorithm, num_seeds, cfg);
            cell.axis = axis;
            cell.axis_value = points[p];
            results.push_back(std::move(cell));
        }
    }
    return results;
}

TrendReport trend_checks(const std::vector<SweepResult>& results) {
    if (results.empty())
        throw std::invalid_argument("trend_checks needs at least one result row");
    TrendReport report;
    report.axis = results.front().axis;
    for (const SweepResult& row : results)
        if (row.axis != report.axis)
            throw std::invalid_argument("trend_checks: mixed sweep axes");

    // Algorithms in first-appearance order.
    std::vector<AlgoKind> algos;
    for (const SweepResult& row : results) {
        bool seen = false;
        for (AlgoKind a : algos) seen = seen || a == row.algorithm;
        if (!seen) algos.push_back(row.algorithm);
    }
    const auto rows_of = [&](AlgoKind a) {
        std::vector<const SweepResult*> rows;
        for (const SweepResult& row : results)
            if (row.algorithm == a) rows.push_back(&row);
        return rows;
    };

    // Monotone trends. Delay is expected to grow with task count and shrink
    // with mode count; completion rate moves opposite to delay on both axes.
    const bool tasks_axis = report.axis == SweepAxis::NumTasks;
    for (AlgoKind a : algos) {
        const auto rows = rows_of(a);
        AlgoTrend trend;
        trend.algorithm = a;
        if (rows.size() >= 2) {
            std::vector<double> axis_vals, mks, rates;
            for (const SweepResult* row : rows) {
                axis_vals.push_back(row->axis_value);
                mks.push_back(row->mean_makespan_ms);
                rates.push_back(row->mean_completion_rate);
            }
            trend.makespan_rho = spearman(mks, axis_vals);
            trend.completion_rho = spearman(rates, axis_vals);
        }
        trend.makespan_trend_ok = tasks_axis ? trend.makespan_rho >= 0.8
                                             : trend.makespan_rho <= -0.8;
        trend.completion_trend_ok = tasks_axis ? trend.completion_rho <= -0.8
                                               : trend.completion_rho >= 0.8;
        report.trends.push_back(trend);
    }

    // Pairwise orderings, counted over the points both algorithms ran.
    const auto have = [&](AlgoKind a) {
        for (AlgoKind b : algos)
            if (a == b) return true;
        return false;
    };
    const auto order_pair = [&](AlgoKind first, AlgoKind second, bool on_makespan) {
        PairOrdering po;
        po.first = first;
        po.second = second;
        for (const SweepResult* lhs : rows_of(first)) {
            for (const SweepResult* rhs : rows_of(second)) {
                if (lhs->axis_value != rhs->axis_value) continue;
                ++po.points;
                const double a = on_makespan ? lhs->mean_makespan_ms
                                             : lhs->mean_completion_rate;
                const double b = on_makespan ? rhs->mean_makespan_ms
                                             : rhs->mean_completion_rate;
                if (a <= b) ++po.satisfied;
            }
        }
        return po;
    };
    const AlgoKind chain[] = {AlgoKind::Aarlm, AlgoKind::Anneal, AlgoKind::Random};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            if (!have(chain[i]) || !have(chain[j])) continue;
            // Lower delay and higher completion rate are both "better".
            report.makespan_orderings.push_back(order_pair(chain[i], chain[j], true));
            report.completion_orderings.push_back(
                order_pair(chain[j], chain[i], false));
        }
    }
    if (have(AlgoKind::Exact)) {
        for (AlgoKind other : chain)
            if (have(other))
                report.makespan_orderings.push_back(
                    order_pair(AlgoKind::Exact, other, true));
    }
    return report;
}

std::string TrendReport::to_string() const {
    // Human-readable console summary; not a pinned file format.
    std::string out = "axis: " + vcn::to_string(axis) + '\n';
    char buf[64];
    for (const AlgoTrend& t : trends) {
        std::snprintf(buf, sizeof buf,
                      ": makespan rho=%+.3f (%s), completion rho=%+.3f (%s)\n",
                      t.makespan_rho, t.makespan_trend_ok ? "ok" : "FAIL",
                      t.completion_rho, t.completion_trend_ok ? "ok" : "FAIL");
        out += "trend " + vcn::to_string(t.algorithm) + buf;
    }
    const auto render = [&](const PairOrdering& po, const char* metric,
                            const char* relation) {
        std::snprintf(buf, sizeof buf, ": %d/%d points (%s)\n", po.satisfied,
                      po.points, po.ok() ? "ok" : "FAIL");
        out += std::string("ordering ") + metric + ' ' + vcn::to_string(po.first) +
               relation + vcn::to_string(po.second) + buf;
    };
    for (const PairOrdering& po : makespan_orderings)
        render(po, "makespan", " <= ");
    for (const PairOrdering& po : completion_orderings)
        render(po, "completion", " <= ");
    return out;
}

std::string sweep_csv(const std::vector<SweepResult>& results) {
    std::string out =
        "axis,axis_value,algorithm,seeds,mean_makespan_ms,std_makespan_ms,"
        "mean_completion_rate,std_completion_rate,mean_runtime_s,flags\n";
    for (const SweepResult& row : results) {
        out += to_string(row.axis) + ',' + std::to_string(row.axis_value) + ',' +
               to_string(row.algorithm) + ',' + std::to_string(row.seeds) + ',';
        append_number(out, row.mean_makespan_ms);
        out += ',';
        append_number(out, row.std_makespan_ms);
        out += ',';
        append_number(out, row.mean_completion_rate);
        out += ',';
        append_number(out, row.std_completion_rate);
        out += ',';
        append_number(out, row.mean_runtime_s);
        out += ',';
        out += row.flags;
        out += '\n';
    }
    return out;
}

std::string per_seed_csv(const std::vector<SweepResult>& results) {
    std::string out =
        "axis,axis_value,algorithm,seed_index,instance_seed,makespan_ms,"
        "completion_rate,runtime_s,flags\n";
    for (const SweepResult& row : results) {
        for (std::size_t k = 0; k < row.runs.size(); ++k) {
            const SeedRun& run = row.runs[k];
            out += to_string(row.axis) + ',' + std::to_string(row.axis_value) +
                   ',' + to_string(row.algorithm) + ',' + std::to_string(k) + ',' +
                   std::to_string(run.instance_seed) + ',';
            append_number(out, run.makespan_ms);
            out += ',';
            append_number(out, run.completion_rate);
            out += ',';
            append_number(out, run.runtime_s);
            out += ',';
            out += run.proven_optimal ? "" : "budget_exhausted";
            out += '\n';
        }
    }
    return out;
}

}  // namespace vcn
