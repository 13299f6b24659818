#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "vcn/baselines.hpp"
#include "vcn/aarlm.hpp"
#include "vcn/harness.hpp"
#include "vcn/json_io.hpp"
#include "vcn/scenario.hpp"

using namespace vcn;

// ============================================================
// JSON interchange formats (library level)
// ============================================================

TEST_CASE("instance JSON round-trips byte-for-byte") {
    const Instance inst = generate_instance(
        ScenarioSpec{.num_tasks = 12, .num_modes = 3, .seed = 44});
    const std::string text = instance_to_json(inst);
    const Instance back = instance_from_json(text);
    CHECK(instance_to_json(back) == text);
    REQUIRE(back.meta().has_value());
    CHECK(back.meta()->seed == 44);
    CHECK(back.meta()->generator == "vcn-scenario");
}

TEST_CASE("instance reader rejects malformed documents") {
    CHECK_THROWS_AS(instance_from_json("not json"), std::runtime_error);
    CHECK_THROWS_AS(instance_from_json("[1,2,3]"), std::runtime_error);
    CHECK_THROWS_AS(instance_from_json("{\"num_tasks\": 1}"),
                    std::runtime_error);  // missing format_version
    CHECK_THROWS_AS(instance_from_json("{\"format_version\": 2}"),
                    std::runtime_error);  // future version
    // structurally fine, semantically inconsistent
    const Instance inst = testutil::make_uniform({10}, {1}, {10}, {0});
    std::string text = instance_to_json(inst);
    const auto pos = text.find("\"num_tasks\": 1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 14, "\"num_tasks\": 9");
    CHECK_THROWS_AS(instance_from_json(text), std::runtime_error);
}

TEST_CASE("scenario spec JSON round-trips and applies defaults") {
    ScenarioSpec spec;
    spec.num_tasks = 42;
    spec.bandwidth_policy = ModeBandwidthPolicy::RandomPool;
    spec.seed = 9;
    const std::string text = scenario_spec_to_json(spec);
    const ScenarioSpec back = scenario_spec_from_json(text);
    CHECK(back.num_tasks == 42);
    CHECK(back.num_modes == spec.num_modes);
    CHECK(back.bandwidth_policy == ModeBandwidthPolicy::RandomPool);
    CHECK(back.seed == 9);
    // omitted fields fall back to defaults
    const ScenarioSpec sparse =
        scenario_spec_from_json("{\"format_version\":1,\"num_tasks\":7}");
    CHECK(sparse.num_tasks == 7);
    CHECK(sparse.num_modes == ScenarioSpec{}.num_modes);
    // invalid values are rejected on read
    CHECK_THROWS(scenario_spec_from_json(
        "{\"format_version\":1,\"support_density\":0.0}"));
}

TEST_CASE("solution JSON round-trips") {
    SolutionRecord rec;
    rec.algorithm = "exact";
    rec.seed = 1234567890123456789ULL;
    rec.delay_model = DelayModel::Literal;
    rec.mode_of = {0, 2, 1};
    rec.makespan_ms = 3.25;
    rec.completion_rate = 2.0 / 3.0;
    rec.per_mode_loads = {1.0, 2.0, 3.25};
    rec.proven_optimal = true;
    rec.config["node_budget"] = 50'000'000.0;
    const std::string text = solution_to_json(rec);
    const SolutionRecord back = solution_from_json(text);
    CHECK(back.algorithm == "exact");
    CHECK(back.seed == rec.seed);  // 64-bit seeds survive
    CHECK(back.delay_model == DelayModel::Literal);
    CHECK(back.mode_of == rec.mode_of);
    CHECK(back.makespan_ms == rec.makespan_ms);
    CHECK(back.completion_rate == rec.completion_rate);
    CHECK(back.per_mode_loads == rec.per_mode_loads);
    REQUIRE(back.proven_optimal.has_value());
    CHECK(*back.proven_optimal);
    CHECK(back.config.at("node_budget") == 50'000'000.0);
    CHECK(solution_to_json(back) == text);
}

TEST_CASE("sweep config JSON round-trips") {
    SweepConfig config;
    config.axis = SweepAxis::NumModes;
    config.points = {2, 3, 4, 5};
    config.algorithms = {AlgoKind::Random, AlgoKind::Aarlm};
    config.num_seeds = 7;
    config.base.num_tasks = 33;
    config.cell.aarlm.episodes = 50;
    config.cell.anneal.cooling_factor = 0.9;
    config.cell.exact_node_budget = 1000;
    const SweepConfig back = sweep_config_from_json(sweep_config_to_json(config));
    CHECK(back.axis == SweepAxis::NumModes);
    CHECK(back.points == config.points);
    CHECK(back.algorithms == config.algorithms);
    CHECK(back.num_seeds == 7);
    CHECK(back.base.num_tasks == 33);
    CHECK(back.cell.aarlm.episodes == 50);
    CHECK(back.cell.anneal.cooling_factor == 0.9);
    CHECK(back.cell.exact_node_budget == 1000);

    CHECK_THROWS(sweep_config_from_json(
        "{\"format_version\":1,\"axis\":\"depth\",\"points\":[1],"
        "\"algorithms\":[]}"));
    CHECK_THROWS(sweep_config_from_json(
        "{\"format_version\":1,\"axis\":\"num_tasks\",\"points\":[],"
        "\"algorithms\":[]}"));
}

TEST_CASE("delay model names round-trip") {
    CHECK(to_string(DelayModel::Queued) == "queued");
    CHECK(to_string(DelayModel::Literal) == "literal");
    CHECK(delay_model_from_string("queued") == DelayModel::Queued);
    CHECK(delay_model_from_string("literal") == DelayModel::Literal);
    CHECK(!delay_model_from_string("instant").has_value());
}

// ============================================================
// Generate -> solve -> validate round trip (library level)
// ============================================================

TEST_CASE("every solver's output validates across 100 generated seeds") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ScenarioSpec spec{.num_tasks = 8, .num_modes = 3, .seed = seed};
        const Instance inst =
            instance_from_json(instance_to_json(generate_instance(spec)));
        AnnealConfig anneal_cfg;
        anneal_cfg.seed = seed;
        const Assignment candidates[] = {
            random_assign(inst, seed),
            anneal_solve(inst, anneal_cfg).assignment,
            aarlm_solve(inst).assignment,
            exact_solve(inst).assignment,
        };
        for (const Assignment& asg : candidates)
            CHECK(validate(inst, asg).empty());
    }
}

// ============================================================
// The binary itself
// ============================================================

namespace {

const char* kbin = MODEASSIGN_BIN;

std::filesystem::path scratch() {
    const auto dir = std::filesystem::current_path() / "cli_scratch";
    std::filesystem::create_directories(dir);
    return dir;
}

// Runs the tool through the shell; args may include redirections.
int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + kbin + "\" " + args;
    return std::system(cmd.c_str());
}

std::string path_of(const char* name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("generate writes a deterministic, loadable instance") {
    const std::string out = path_of("gen.json");
    const std::string args =
        "generate --tasks 20 --modes 3 --seed 7 -o " + out + " > /dev/null";
    REQUIRE(run_cli(args) == 0);
    const std::string first = read_text_file(out);
    const Instance inst = instance_from_json(first);
    CHECK(inst.num_tasks() == 20);
    CHECK(inst.num_modes() == 3);
    REQUIRE(run_cli(args) == 0);  // same flags -> identical file
    CHECK(read_text_file(out) == first);
}

TEST_CASE("generate rejects an invalid scenario with a machine-readable error") {
    const std::string err = path_of("gen_err.txt");
    const int status = run_cli("generate --modes 0 -o " + path_of("never.json") +
                               " > /dev/null 2> " + err);
    CHECK(status != 0);
    const std::string message = read_text_file(err);
    CHECK(message.rfind("error: validation:", 0) == 0);
}

TEST_CASE("solve writes a solution that validate accepts") {
    const std::string inst_path = path_of("solve_inst.json");
    REQUIRE(run_cli("generate --tasks 12 --modes 3 --seed 3 -o " + inst_path +
                    " > /dev/null") == 0);
    const std::string sol_path = path_of("solve_sol.json");
    REQUIRE(run_cli("solve --instance " + inst_path +
                    " --algo aarlm -o " + sol_path + " > /dev/null") == 0);
    const SolutionRecord rec = solution_from_json(read_text_file(sol_path));
    CHECK(rec.algorithm == "aarlm");
    CHECK(rec.runtime_s == 0.0);  // no --timings, so the file stays stable
    CHECK(run_cli("validate --instance " + inst_path + " --solution " +
                  sol_path + " > /dev/null") == 0);
    // repeated solve is byte-identical
    const std::string sol2 = path_of("solve_sol2.json");
    REQUIRE(run_cli("solve --instance " + inst_path + " --algo aarlm -o " +
                    sol2 + " > /dev/null") == 0);
    CHECK(read_text_file(sol2) == read_text_file(sol_path));
}

TEST_CASE("solve with the exact algorithm records the optimality proof") {
    const std::string inst_path = path_of("exact_inst.json");
    REQUIRE(run_cli("generate --tasks 12 --modes 3 --seed 11 -o " + inst_path +
                    " > /dev/null") == 0);
    const std::string sol_path = path_of("exact_sol.json");
    REQUIRE(run_cli("solve --instance " + inst_path + " --algo exact -o " +
                    sol_path + " > /dev/null") == 0);
    const SolutionRecord rec = solution_from_json(read_text_file(sol_path));
    REQUIRE(rec.proven_optimal.has_value());
    CHECK(*rec.proven_optimal);
}

TEST_CASE("solve exits zero even when deadlines are missed") {
    // generator buffers (1..10 ms) routinely exceed deadlines (1..5 ms), so
    // this instance certainly misses some; that is a metric, not an error
    const std::string inst_path = path_of("late_inst.json");
    REQUIRE(run_cli("generate --tasks 30 --modes 2 --seed 1 -o " + inst_path +
                    " > /dev/null") == 0);
    const std::string sol_path = path_of("late_sol.json");
    REQUIRE(run_cli("solve --instance " + inst_path + " --algo random -o " +
                    sol_path + " > /dev/null") == 0);
    const SolutionRecord rec = solution_from_json(read_text_file(sol_path));
    CHECK(rec.completion_rate < 1.0);
}

TEST_CASE("solve rejects unknown algorithms and missing files") {
    CHECK(run_cli("solve --instance " + path_of("absent.json") +
                  " --algo aarlm > /dev/null 2> /dev/null") != 0);
    const std::string inst_path = path_of("ua_inst.json");
    REQUIRE(run_cli("generate --tasks 5 --modes 2 --seed 2 -o " + inst_path +
                    " > /dev/null") == 0);
    CHECK(run_cli("solve --instance " + inst_path +
                  " --algo greedy > /dev/null 2> /dev/null") != 0);
    // --trace pairs only with the reward-driven solver
    CHECK(run_cli("solve --instance " + inst_path + " --algo random --trace " +
                  path_of("t.csv") + " > /dev/null 2> /dev/null") != 0);
}

TEST_CASE("solve can emit the move trace") {
    const std::string inst_path = path_of("trace_inst.json");
    REQUIRE(run_cli("generate --tasks 15 --modes 3 --seed 5 -o " + inst_path +
                    " > /dev/null") == 0);
    const std::string trace_path = path_of("trace.csv");
    REQUIRE(run_cli("solve --instance " + inst_path + " --algo aarlm --trace " +
                    trace_path + " > /dev/null") == 0);
    const std::string trace = read_text_file(trace_path);
    CHECK(trace.rfind("episode,step,task,from_mode,to_mode,reward_ms,"
                      "makespan_ms,accepted\n",
                      0) == 0);
}

TEST_CASE("validate flags assignments that break support") {
    const Instance inst = testutil::make_uniform(
        {10, 10}, {5, 5}, {10, 10}, {0, 0}, {{1, 0}, {0, 1}});
    const std::string inst_path = path_of("val_inst.json");
    write_text_file(inst_path, instance_to_json(inst));
    SolutionRecord rec;
    rec.algorithm = "random";
    rec.mode_of = {1, 1};  // task 0 does not support mode 1
    rec.per_mode_loads = {0, 0};
    const std::string sol_path = path_of("val_sol.json");
    write_text_file(sol_path, solution_to_json(rec));
    const std::string out = path_of("val_out.txt");
    CHECK(run_cli("validate --instance " + inst_path + " --solution " +
                  sol_path + " > " + out + " 2> /dev/null") != 0);
    CHECK(read_text_file(out).find("violation:") != std::string::npos);
}

TEST_CASE("sweep output is byte-identical across --jobs settings") {
    SweepConfig config;
    config.axis = SweepAxis::NumTasks;
    config.points = {5, 8};
    config.algorithms = {AlgoKind::Random, AlgoKind::Aarlm};
    config.num_seeds = 3;
    config.base.num_tasks = 10;
    config.base.num_modes = 3;
    config.base.seed = 77;
    const std::string cfg_path = path_of("sweep_cfg.json");
    write_text_file(cfg_path, sweep_config_to_json(config));

    const std::string csv1 = path_of("sweep1.csv");
    const std::string csv2 = path_of("sweep2.csv");
    const std::string per1 = path_of("per1.csv");
    const std::string per2 = path_of("per2.csv");
    REQUIRE(run_cli("sweep --config " + cfg_path + " -o " + csv1 +
                    " --per-seed " + per1 + " --jobs 1 > /dev/null") == 0);
    REQUIRE(run_cli("sweep --config " + cfg_path + " -o " + csv2 +
                    " --per-seed " + per2 + " --jobs 4 > /dev/null") == 0);
    CHECK(read_text_file(csv1) == read_text_file(csv2));
    CHECK(read_text_file(per1) == read_text_file(per2));
    CHECK(read_text_file(csv1).rfind("axis,axis_value,algorithm,seeds,", 0) == 0);
}

TEST_CASE("sweep with no algorithms writes a header-only CSV") {
    SweepConfig config;
    config.axis = SweepAxis::NumModes;
    config.points = {2, 3};
    config.num_seeds = 2;
    config.base.num_tasks = 5;
    const std::string cfg_path = path_of("sweep_empty_cfg.json");
    write_text_file(cfg_path, sweep_config_to_json(config));
    const std::string csv = path_of("sweep_empty.csv");
    REQUIRE(run_cli("sweep --config " + cfg_path + " -o " + csv +
                    " > /dev/null") == 0);
    CHECK(read_text_file(csv) ==
          "axis,axis_value,algorithm,seeds,mean_makespan_ms,std_makespan_ms,"
          "mean_completion_rate,std_completion_rate,mean_runtime_s,flags\n");
}

TEST_CASE("compare prints one aligned row per algorithm") {
    const std::string inst_path = path_of("cmp_inst.json");
    REQUIRE(run_cli("generate --tasks 10 --modes 3 --seed 21 -o " + inst_path +
                    " > /dev/null") == 0);
    const std::string out = path_of("cmp_out.txt");
    REQUIRE(run_cli("compare --instance " + inst_path +
                    " --algos aarlm,anneal,random,exact > " + out) == 0);
    const std::string table = read_text_file(out);
    for (const char* name : {"aarlm", "anneal", "random", "exact"})
        CHECK(table.find(name) != std::string::npos);
}
