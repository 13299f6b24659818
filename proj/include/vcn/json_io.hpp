#pragma once

// JSON interchange for instances, generator specs, solutions, and sweep
// configurations. Every document carries format_version = 1; readers reject
// anything else so stale files fail loudly instead of being misread. Parse
// and shape errors surface as std::runtime_error with a one-line message.
//
// Only the matching .cpp includes the JSON library; these declarations keep
// the rest of the build free of that header.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcn/harness.hpp"
#include "vcn/instance.hpp"
#include "vcn/scenario.hpp"

namespace vcn {

std::string to_string(DelayModel model);  // "queued" / "literal"
std::optional<DelayModel> delay_model_from_string(const std::string& name);

// Instance document: num_tasks, num_modes, data_size, deadline, bandwidth
// (task-major), buffer_delay, support (task-major 0/1), optional metadata.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

// Generator spec document; omitted fields take ScenarioSpec defaults.
std::string scenario_spec_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_spec_from_json(const std::string& text);

// What `solve` writes: the assignment plus the metrics it was graded on and
// an echo of the numeric solver knobs (sorted by key, so output is stable).
struct SolutionRecord {
    std::string algorithm;
    std::uint64_t seed = 0;
    DelayModel delay_model = DelayModel::Queued;
    std::vector<int> mode_of;
    double makespan_ms = 0;
    double completion_rate = 0;
    std::vector<double> per_mode_loads;
    double runtime_s = 0;
    std::optional<bool> proven_optimal;  // present only for the exact solver
    std::map<std::string, double> config;
};

std::string solution_to_json(const SolutionRecord& record);
SolutionRecord solution_from_json(const std::string& text);

// Sweep configuration consumed by the sweep command. `cell.jobs` and
// `cell.timings` are command-line concerns and not part of the file.
struct SweepConfig {
    ScenarioSpec base;
    SweepAxis axis = SweepAxis::NumTasks;
    std::vector<int> points;
    std::vector<AlgoKind> algorithms;
    int num_seeds = 30;
    CellConfig cell;
};

std::string sweep_config_to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const std::string& text);

// Whole-file helpers (binary-exact write, read rejects missing files).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace vcn
