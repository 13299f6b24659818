// modeassign: command-line front end over the mode-assignment library.
//
// Subcommands: generate (scenario -> instance JSON), solve (instance ->
// solution JSON), sweep (config -> results CSV + trend summary), validate
// (instance/solution sanity), compare (one instance, several algorithms).
//
// Conventions shared by all subcommands:
//  - every run is a pure function of its flags and input files; repeated
//    invocations produce byte-identical output files. Wall-clock timings are
//    recorded only under --timings, since they would break that property.
//  - errors print a single machine-readable line `error: <kind>: <message>`
//    to stderr and exit non-zero. Missed deadlines are a reported metric,
//    never an error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "vcn/aarlm.hpp"
#include "vcn/baselines.hpp"
#include "vcn/harness.hpp"
#include "vcn/instance.hpp"
#include "vcn/json_io.hpp"
#include "vcn/rng.hpp"
#include "vcn/scenario.hpp"

namespace {

using namespace vcn;

// Exception type -> error kind for the machine-readable stderr line.
// invalid_argument marks domain validation, runtime_error covers file and
// format problems, logic_error means an internal bug worth a loud label.
const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "validation";
    if (dynamic_cast<const std::logic_error*>(&e)) return "internal";
    if (dynamic_cast<const std::runtime_error*>(&e)) {
        const std::string what = e.what();
        if (what.rfind("cannot ", 0) == 0) return "io";
        return "parse";
    }
    return "internal";
}

int fail(const std::exception& e) {
    std::fprintf(stderr, "error: %s: %s\n", error_kind(e), e.what());
    return 1;
}

int fail_usage(const std::string& message) {
    std::fprintf(stderr, "error: usage: %s\n", message.c_str());
    return 2;
}

// Solver knobs shared by solve/compare; sweep reads them from its config file.
struct SolverFlags {
    std::uint64_t seed = 0;
    int episodes = 100;
    std::optional<int> moves_per_episode;
    double discount = 0.9;
    double cooling_factor = 0.95;
    std::optional<int> steps_per_temperature;
    std::optional<double> initial_temperature;
    double min_temperature = 1e-3;
    std::uint64_t node_budget = 50'000'000;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--seed", f.seed, "Seed for seeded algorithms (default 0)");
    cmd->add_option("--episodes", f.episodes,
                    "Improvement episodes for the reward-driven solver");
    cmd->add_option("--moves", f.moves_per_episode,
                    "Move budget per episode (default: task count)");
    cmd->add_option("--discount", f.discount,
                    "Discount factor for reported cumulative rewards");
    cmd->add_option("--cooling", f.cooling_factor, "Annealing cooling factor");
    cmd->add_option("--steps-per-temp", f.steps_per_temperature,
                    "Annealing steps per temperature (default: 4x task count)");
    cmd->add_option("--initial-temp", f.initial_temperature,
                    "Annealing start temperature (default: start makespan)");
    cmd->add_option("--min-temp", f.min_temperature,
                    "Annealing stop temperature");
    cmd->add_option("--node-budget", f.node_budget,
                    "Node budget for the exact solver");
}

AarlmConfig aarlm_config(const SolverFlags& f) {
    AarlmConfig cfg;
    cfg.episodes = f.episodes;
    cfg.moves_per_episode = f.moves_per_episode;
    cfg.discount = f.discount;
    cfg.seed = f.seed;
    return cfg;
}

AnnealConfig anneal_config(const SolverFlags& f) {
    AnnealConfig cfg;
    cfg.initial_temperature = f.initial_temperature;
    cfg.cooling_factor = f.cooling_factor;
    cfg.steps_per_temperature = f.steps_per_temperature;
    cfg.min_temperature = f.min_temperature;
    cfg.seed = f.seed;
    return cfg;
}

struct SolveOutcome {
    Assignment assignment;
    std::optional<bool> proven_optimal;
    std::optional<std::string> trace_csv;
    std::map<std::string, double> config_echo;
};

SolveOutcome run_algorithm(const Instance& inst, AlgoKind kind,
                           const SolverFlags& f, bool want_trace) {
    SolveOutcome out;
    switch (kind) {
        case AlgoKind::Random:
            out.assignment = random_assign(inst, f.seed);
            break;
        case AlgoKind::Anneal: {
            const AnnealConfig cfg = anneal_config(f);
            out.assignment = anneal_solve(inst, cfg).assignment;
            out.config_echo["cooling_factor"] = cfg.cooling_factor;
            out.config_echo["min_temperature"] = cfg.min_temperature;
            if (cfg.initial_temperature)
                out.config_echo["initial_temperature"] = *cfg.initial_temperature;
            if (cfg.steps_per_temperature)
                out.config_echo["steps_per_temperature"] =
                    *cfg.steps_per_temperature;
            break;
        }
        case AlgoKind::Aarlm: {
            const AarlmConfig cfg = aarlm_config(f);
            AarlmResult result = aarlm_solve(inst, cfg);
            out.assignment = std::move(result.assignment);
            if (want_trace) out.trace_csv = trace_to_csv(result.trace);
            out.config_echo["episodes"] = cfg.episodes;
            if (cfg.moves_per_episode)
                out.config_echo["moves_per_episode"] = *cfg.moves_per_episode;
            out.config_echo["discount"] = cfg.discount;
            break;
        }
        case AlgoKind::Exact: {
            const ExactResult result = exact_solve(inst, f.node_budget);
            out.assignment = result.assignment;
            out.proven_optimal = result.proven_optimal;
            out.config_echo["node_budget"] =
                static_cast<double>(f.node_budget);
            break;
        }
    }
    return out;
}

int cmd_generate(const std::string& spec_path, const ScenarioSpec& overrides,
                 const CLI::App* cmd, const std::string& out_path) {
    ScenarioSpec spec;
    if (!spec_path.empty())
        spec = scenario_spec_from_json(read_text_file(spec_path));
    if (cmd->count("--tasks")) spec.num_tasks = overrides.num_tasks;
    if (cmd->count("--modes")) spec.num_modes = overrides.num_modes;
    if (cmd->count("--seed")) spec.seed = overrides.seed;
    if (cmd->count("--density")) spec.support_density = overrides.support_density;
    if (cmd->count("--policy")) spec.bandwidth_policy = overrides.bandwidth_policy;
    const Instance inst = generate_instance(spec);
    write_text_file(out_path, instance_to_json(inst));
    std::printf("wrote %s: %d tasks, %d modes, %.6g kbit total\n",
                out_path.c_str(), inst.num_tasks(), inst.num_modes(),
                inst.total_data());
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& algo_name,
              const SolverFlags& flags, DelayModel model,
              const std::string& out_path, const std::string& trace_path,
              bool timings) {
    const auto kind = algo_from_string(algo_name);
    if (!kind) return fail_usage("unknown algorithm '" + algo_name + "'");
    if (!trace_path.empty() && *kind != AlgoKind::Aarlm)
        return fail_usage("--trace is only available with --algo aarlm");

    const Instance inst = instance_from_json(read_text_file(instance_path));
    const auto start = std::chrono::steady_clock::now();
    const SolveOutcome out =
        run_algorithm(inst, *kind, flags, !trace_path.empty());
    const double runtime_s =
        timings ? std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                start)
                      .count()
                : 0.0;

    const DelayReport report = delay_report(inst, out.assignment, model);
    if (!out_path.empty()) {
        SolutionRecord rec;
        rec.algorithm = algo_name;
        rec.seed = flags.seed;
        rec.delay_model = model;
        rec.mode_of = out.assignment.mode_of;
        rec.makespan_ms = report.makespan;
        rec.completion_rate = report.completion_rate;
        rec.per_mode_loads = report.mode_load;
        rec.runtime_s = runtime_s;
        rec.proven_optimal = out.proven_optimal;
        rec.config = out.config_echo;
        write_text_file(out_path, solution_to_json(rec));
    }
    if (!trace_path.empty()) write_text_file(trace_path, *out.trace_csv);

    std::printf("%s: makespan %.6g ms, completion rate %.4f (%s model)\n",
                algo_name.c_str(), report.makespan, report.completion_rate,
                to_string(model).c_str());
    if (out.proven_optimal)
        std::printf("proven optimal: %s\n", *out.proven_optimal ? "yes" : "no");
    if (timings) std::printf("runtime: %.3f s\n", runtime_s);
    if (!out_path.empty()) std::printf("wrote %s\n", out_path.c_str());
    if (!trace_path.empty()) std::printf("wrote %s\n", trace_path.c_str());
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& per_seed_path, int jobs, bool timings) {
    SweepConfig config = sweep_config_from_json(read_text_file(config_path));
    config.cell.jobs = jobs;
    config.cell.timings = timings;
    const std::vector<SweepResult> results =
        run_sweep(config.base, config.axis, config.points, config.algorithms,
                  config.num_seeds, config.cell);
    write_text_file(out_path, sweep_csv(results));
    if (!per_seed_path.empty())
        write_text_file(per_seed_path, per_seed_csv(results));
    std::printf("wrote %s (%zu rows)\n", out_path.c_str(), results.size());
    if (!per_seed_path.empty())
        std::printf("wrote %s\n", per_seed_path.c_str());
    if (!results.empty()) {
        const TrendReport report = trend_checks(results);
        std::fputs(report.to_string().c_str(), stdout);
    }
    return 0;
}

int cmd_validate(const std::string& instance_path,
                 const std::string& solution_path) {
    const Instance inst = instance_from_json(read_text_file(instance_path));
    std::printf("instance ok: %d tasks, %d modes\n", inst.num_tasks(),
                inst.num_modes());
    if (solution_path.empty()) return 0;
    const SolutionRecord rec = solution_from_json(read_text_file(solution_path));
    const Assignment asg{rec.mode_of};
    const std::vector<Violation> violations = validate(inst, asg);
    if (!violations.empty()) {
        for (const Violation& v : violations)
            std::printf("violation: %s\n", v.to_string().c_str());
        std::fprintf(stderr, "error: validation: assignment has %zu violation(s)\n",
                     violations.size());
        return 1;
    }
    const DelayReport report = delay_report(inst, asg, rec.delay_model);
    std::printf("assignment ok: makespan %.6g ms, completion rate %.4f\n",
                report.makespan, report.completion_rate);
    if (!leq_tol(report.makespan, rec.makespan_ms) ||
        !leq_tol(rec.makespan_ms, report.makespan)) {
        std::fprintf(stderr,
                     "error: validation: recorded makespan %.9g ms does not match "
                     "recomputed %.9g ms\n",
                     rec.makespan_ms, report.makespan);
        return 1;
    }
    return 0;
}

int cmd_compare(const std::string& instance_path,
                const std::vector<std::string>& algo_names,
                const SolverFlags& flags, bool timings) {
    std::vector<AlgoKind> kinds;
    for (const std::string& name : algo_names) {
        const auto kind = algo_from_string(name);
        if (!kind) return fail_usage("unknown algorithm '" + name + "'");
        kinds.push_back(*kind);
    }
    const Instance inst = instance_from_json(read_text_file(instance_path));
    std::printf("%-8s %14s %16s%s\n", "algo", "makespan_ms", "completion_rate",
                timings ? "  runtime_s" : "");
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        const SolveOutcome out = run_algorithm(inst, kinds[i], flags, false);
        const double runtime_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        const DelayReport report =
            delay_report(inst, out.assignment, DelayModel::Queued);
        std::printf("%-8s %14.6g %16.4f", algo_names[i].c_str(), report.makespan,
                    report.completion_rate);
        if (timings) std::printf(" %10.3f", runtime_s);
        if (out.proven_optimal && !*out.proven_optimal)
            std::printf("  (budget exhausted)");
        std::printf("\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Multi-mode communication assignment: scenario generation, solvers, "
        "and experiment sweeps over JSON/CSV files"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand(
        "generate", "Generate a seeded random instance and write it as JSON");
    std::string gen_spec_path, gen_out;
    ScenarioSpec gen_overrides;
    std::string gen_policy;
    gen->add_option("--spec", gen_spec_path,
                    "Scenario spec JSON (inline flags override its fields)");
    gen->add_option("--tasks", gen_overrides.num_tasks, "Task count");
    gen->add_option("--modes", gen_overrides.num_modes, "Mode count");
    gen->add_option("--seed", gen_overrides.seed, "Generator seed");
    gen->add_option("--density", gen_overrides.support_density,
                    "Support matrix density in (0,1]");
    gen->add_option("--policy", gen_policy,
                    "Bandwidth pool policy: ascending_pool | random_pool")
        ->check(CLI::IsMember({"ascending_pool", "random_pool"}));
    gen->add_option("-o,--out", gen_out, "Output instance JSON path")
        ->required();

    // solve
    auto* solve = app.add_subcommand(
        "solve", "Solve one instance file with a chosen algorithm");
    std::string solve_instance, solve_algo, solve_out, solve_trace,
        solve_model = "queued";
    SolverFlags solve_flags;
    bool solve_timings = false;
    solve->add_option("--instance", solve_instance, "Instance JSON path")
        ->required();
    solve
        ->add_option("--algo", solve_algo,
                     "Algorithm: aarlm | anneal | random | exact")
        ->required();
    solve->add_option("-o,--out", solve_out, "Solution JSON output path");
    solve->add_option("--trace", solve_trace,
                      "Move-trace CSV output path (aarlm only)");
    solve
        ->add_option("--model", solve_model,
                     "Delay model for reported metrics: queued | literal")
        ->check(CLI::IsMember({"queued", "literal"}));
    solve->add_flag("--timings", solve_timings,
                    "Record wall-clock runtime in the output");
    add_solver_flags(solve, solve_flags);

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Run an (axis point x algorithm x seed) grid from a config");
    std::string sweep_config, sweep_out, sweep_per_seed;
    int sweep_jobs = 1;
    bool sweep_timings = false;
    sweep->add_option("--config", sweep_config, "Sweep config JSON path")
        ->required();
    sweep->add_option("-o,--out", sweep_out, "Aggregate CSV output path")
        ->required();
    sweep->add_option("--per-seed", sweep_per_seed,
                      "Optional per-run CSV output path");
    sweep->add_option("--jobs", sweep_jobs, "Worker threads across seeds")
        ->check(CLI::PositiveNumber);
    sweep->add_flag("--timings", sweep_timings,
                    "Record wall-clock runtimes in the CSVs");

    // validate
    auto* val = app.add_subcommand(
        "validate", "Check an instance file and optionally a solution for it");
    std::string val_instance, val_solution;
    val->add_option("--instance", val_instance, "Instance JSON path")
        ->required();
    val->add_option("--solution", val_solution, "Solution JSON path");

    // compare
    auto* cmp = app.add_subcommand(
        "compare", "Solve one instance with several algorithms, print a table");
    std::string cmp_instance;
    std::vector<std::string> cmp_algos{"aarlm", "anneal", "random"};
    SolverFlags cmp_flags;
    bool cmp_timings = false;
    cmp->add_option("--instance", cmp_instance, "Instance JSON path")
        ->required();
    cmp->add_option("--algos", cmp_algos,
                    "Algorithms to run (comma separated or repeated)")
        ->delimiter(',');
    cmp->add_flag("--timings", cmp_timings, "Also print wall-clock runtimes");
    add_solver_flags(cmp, cmp_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen->count("--policy"))
                gen_overrides.bandwidth_policy =
                    gen_policy == "ascending_pool"
                        ? ModeBandwidthPolicy::AscendingPool
                        : ModeBandwidthPolicy::RandomPool;
            return cmd_generate(gen_spec_path, gen_overrides, gen, gen_out);
        }
        if (solve->parsed())
            return cmd_solve(solve_instance, solve_algo, solve_flags,
                             *delay_model_from_string(solve_model), solve_out,
                             solve_trace, solve_timings);
        if (sweep->parsed())
            return cmd_sweep(sweep_config, sweep_out, sweep_per_seed, sweep_jobs,
                             sweep_timings);
        if (val->parsed()) return cmd_validate(val_instance, val_solution);
        if (cmp->parsed())
            return cmd_compare(cmp_instance, cmp_algos, cmp_flags, cmp_timings);
    } catch (const std::exception& e) {
        return fail(e);
    }
    return 0;
}
