#include "vcn/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "../vendor/json.hpp"

namespace vcn {

namespace {

using nlohmann::json;

constexpr int kformat_version = 1;

// Translates parse/type exceptions from the JSON library into
// std::runtime_error so callers handle one error family.
template <typename Fn>
auto with_json_errors(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("invalid ") + what + ": " + e.what());
    }
}

json parse(const char* what, const std::string& text) {
    return with_json_errors(what, [&] { return json::parse(text); });
}

void check_version(const char* what, const json& j) {
    if (!j.is_object())
        throw std::runtime_error(std::string("invalid ") + what +
                                 ": top level must be an object");
    if (!j.contains("format_version"))
        throw std::runtime_error(std::string("invalid ") + what +
                                 ": missing format_version");
    if (!j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != kformat_version)
        throw std::runtime_error(std::string("invalid ") + what +
                                 ": unsupported format_version (expected 1)");
}

const json& field(const json& j, const char* what, const char* key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error(std::string("invalid ") + what +
                                 ": missing field '" + key + "'");
    return *it;
}

std::string policy_name(ModeBandwidthPolicy policy) {
    return policy == ModeBandwidthPolicy::AscendingPool ? "ascending_pool"
                                                        : "random_pool";
}

ModeBandwidthPolicy policy_from_name(const std::string& name) {
    if (name == "ascending_pool") return ModeBandwidthPolicy::AscendingPool;
    if (name == "random_pool") return ModeBandwidthPolicy::RandomPool;
    throw std::runtime_error("invalid scenario spec: unknown bandwidth_policy '" +
                             name + "'");
}

json spec_to_obj(const ScenarioSpec& spec) {
    json j;
    j["num_tasks"] = spec.num_tasks;
    j["num_modes"] = spec.num_modes;
    j["data_size_range"] = spec.data_size_range;
    j["deadline_range"] = spec.deadline_range;
    j["bandwidth_pool"] = spec.bandwidth_pool;
    j["buffer_delay_range"] = spec.buffer_delay_range;
    j["support_density"] = spec.support_density;
    j["bandwidth_policy"] = policy_name(spec.bandwidth_policy);
    j["seed"] = spec.seed;
    return j;
}

ScenarioSpec spec_from_obj(const char* what, const json& j) {
    if (!j.is_object())
        throw std::runtime_error(std::string("invalid ") + what +
                                 ": scenario spec must be an object");
    ScenarioSpec spec;
    if (j.contains("num_tasks")) spec.num_tasks = j["num_tasks"].get<int>();
    if (j.contains("num_modes")) spec.num_modes = j["num_modes"].get<int>();
    if (j.contains("data_size_range"))
        spec.data_size_range = j["data_size_range"].get<std::array<double, 2>>();
    if (j.contains("deadline_range"))
        spec.deadline_range = j["deadline_range"].get<std::array<double, 2>>();
    if (j.contains("bandwidth_pool"))
        spec.bandwidth_pool = j["bandwidth_pool"].get<std::vector<double>>();
    if (j.contains("buffer_delay_range"))
        spec.buffer_delay_range =
            j["buffer_delay_range"].get<std::array<double, 2>>();
    if (j.contains("support_density"))
        spec.support_density = j["support_density"].get<double>();
    if (j.contains("bandwidth_policy"))
        spec.bandwidth_policy =
            policy_from_name(j["bandwidth_policy"].get<std::string>());
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    validate_spec(spec);
    return spec;
}

}  // namespace

std::string to_string(DelayModel model) {
    return model == DelayModel::Queued ? "queued" : "literal";
}

std::optional<DelayModel> delay_model_from_string(const std::string& name) {
    if (name == "queued") return DelayModel::Queued;
    if (name == "literal") return DelayModel::Literal;
    return std::nullopt;
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["format_version"] = kformat_version;
    j["num_tasks"] = inst.num_tasks();
    j["num_modes"] = inst.num_modes();
    json data = json::array(), deadline = json::array(), buffer = json::array();
    json bandwidth = json::array(), support = json::array();
    for (int t = 0; t < inst.num_tasks(); ++t) {
        data.push_back(inst.data_size(t));
        deadline.push_back(inst.deadline(t));
        json bw_row = json::array(), sup_row = json::array();
        for (int c = 0; c < inst.num_modes(); ++c) {
            bw_row.push_back(inst.bandwidth(t, c));
            sup_row.push_back(inst.supports(t, c) ? 1 : 0);
        }
        bandwidth.push_back(std::move(bw_row));
        support.push_back(std::move(sup_row));
    }
    for (int c = 0; c < inst.num_modes(); ++c)
        buffer.push_back(inst.buffer_delay(c));
    j["data_size"] = std::move(data);
    j["deadline"] = std::move(deadline);
    j["bandwidth"] = std::move(bandwidth);
    j["buffer_delay"] = std::move(buffer);
    j["support"] = std::move(support);
    if (inst.meta()) {
        json meta;
        meta["seed"] = inst.meta()->seed;
        meta["generator"] = inst.meta()->generator;
        meta["generator_version"] = inst.meta()->generator_version;
        j["metadata"] = std::move(meta);
    }
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
    const json j = parse("instance", text);
    check_version("instance", j);
    return with_json_errors("instance", [&] {
        const int num_tasks = field(j, "instance", "num_tasks").get<int>();
        const int num_modes = field(j, "instance", "num_modes").get<int>();
        auto data = field(j, "instance", "data_size").get<std::vector<double>>();
        auto deadline = field(j, "instance", "deadline").get<std::vector<double>>();
        auto bandwidth = field(j, "instance", "bandwidth")
                             .get<std::vector<std::vector<double>>>();
        auto buffer =
            field(j, "instance", "buffer_delay").get<std::vector<double>>();
        auto support = field(j, "instance", "support")
                           .get<std::vector<std::vector<std::uint8_t>>>();
        if (static_cast<int>(data.size()) != num_tasks)
            throw std::runtime_error(
                "invalid instance: num_tasks does not match data_size length");
        if (static_cast<int>(buffer.size()) != num_modes)
            throw std::runtime_error(
                "invalid instance: num_modes does not match buffer_delay length");
        std::optional<InstanceMeta> meta;
        if (j.contains("metadata")) {
            const json& m = j["metadata"];
            InstanceMeta im;
            if (m.contains("seed")) im.seed = m["seed"].get<std::uint64_t>();
            if (m.contains("generator"))
                im.generator = m["generator"].get<std::string>();
            if (m.contains("generator_version"))
                im.generator_version = m["generator_version"].get<int>();
            meta = std::move(im);
        }
        return Instance(std::move(data), std::move(deadline), std::move(bandwidth),
                        std::move(buffer), std::move(support), std::move(meta));
    });
}

std::string scenario_spec_to_json(const ScenarioSpec& spec) {
    json j = spec_to_obj(spec);
    j["format_version"] = kformat_version;
    return j.dump(2) + "\n";
}

ScenarioSpec scenario_spec_from_json(const std::string& text) {
    const json j = parse("scenario spec", text);
    check_version("scenario spec", j);
    return with_json_errors("scenario spec",
                            [&] { return spec_from_obj("scenario spec", j); });
}

std::string solution_to_json(const SolutionRecord& record) {
    json j;
    j["format_version"] = kformat_version;
    j["algorithm"] = record.algorithm;
    j["seed"] = record.seed;
    j["delay_model"] = to_string(record.delay_model);
    j["assignment"] = record.mode_of;
    j["makespan_ms"] = record.makespan_ms;
    j["completion_rate"] = record.completion_rate;
    j["per_mode_loads"] = record.per_mode_loads;
    j["runtime_s"] = record.runtime_s;
    if (record.proven_optimal) j["proven_optimal"] = *record.proven_optimal;
    j["config"] = record.config;
    return j.dump(2) + "\n";
}

SolutionRecord solution_from_json(const std::string& text) {
    const json j = parse("solution", text);
    check_version("solution", j);
    return with_json_errors("solution", [&] {
        SolutionRecord rec;
        rec.algorithm = field(j, "solution", "algorithm").get<std::string>();
        rec.seed = field(j, "solution", "seed").get<std::uint64_t>();
        const auto model = delay_model_from_string(
            field(j, "solution", "delay_model").get<std::string>());
        if (!model)
            throw std::runtime_error("invalid solution: unknown delay_model");
        rec.delay_model = *model;
        rec.mode_of = field(j, "solution", "assignment").get<std::vector<int>>();
        rec.makespan_ms = field(j, "solution", "makespan_ms").get<double>();
        rec.completion_rate =
            field(j, "solution", "completion_rate").get<double>();
        rec.per_mode_loads =
            field(j, "solution", "per_mode_loads").get<std::vector<double>>();
        rec.runtime_s = field(j, "solution", "runtime_s").get<double>();
        if (j.contains("proven_optimal"))
            rec.proven_optimal = j["proven_optimal"].get<bool>();
        if (j.contains("config"))
            rec.config = j["config"].get<std::map<std::string, double>>();
        return rec;
    });
}

std::string sweep_config_to_json(const SweepConfig& config) {
    json j;
    j["format_version"] = kformat_version;
    j["axis"] = to_string(config.axis);
    j["points"] = config.points;
    json algos = json::array();
    for (AlgoKind a : config.algorithms) algos.push_back(to_string(a));
    j["algorithms"] = std::move(algos);
    j["num_seeds"] = config.num_seeds;
    j["scenario"] = spec_to_obj(config.base);
    json aarlm;
    aarlm["episodes"] = config.cell.aarlm.episodes;
    if (config.cell.aarlm.moves_per_episode)
        aarlm["moves_per_episode"] = *config.cell.aarlm.moves_per_episode;
    aarlm["discount"] = config.cell.aarlm.discount;
    j["aarlm"] = std::move(aarlm);
    json anneal;
    if (config.cell.anneal.initial_temperature)
        anneal["initial_temperature"] = *config.cell.anneal.initial_temperature;
    anneal["cooling_factor"] = config.cell.anneal.cooling_factor;
    if (config.cell.anneal.steps_per_temperature)
        anneal["steps_per_temperature"] = *config.cell.anneal.steps_per_temperature;
    anneal["min_temperature"] = config.cell.anneal.min_temperature;
    j["anneal"] = std::move(anneal);
    j["exact_node_budget"] = config.cell.exact_node_budget;
    return j.dump(2) + "\n";
}

SweepConfig sweep_config_from_json(const std::string& text) {
    const json j = parse("sweep config", text);
    check_version("sweep config", j);
    return with_json_errors("sweep config", [&] {
        SweepConfig config;
        const std::string axis =
            field(j, "sweep config", "axis").get<std::string>();
        if (axis == "num_tasks") {
            config.axis = SweepAxis::NumTasks;
        } else if (axis == "num_modes") {
            config.axis = SweepAxis::NumModes;
        } else {
            throw std::runtime_error("invalid sweep config: unknown axis '" +
                                     axis + "'");
        }
        config.points = field(j, "sweep config", "points").get<std::vector<int>>();
        if (config.points.empty())
            throw std::runtime_error("invalid sweep config: points is empty");
        for (const json& name :
             field(j, "sweep config", "algorithms")) {
            const auto kind = algo_from_string(name.get<std::string>());
            if (!kind)
                throw std::runtime_error(
                    "invalid sweep config: unknown algorithm '" +
                    name.get<std::string>() + "'");
            config.algorithms.push_back(*kind);
        }
        if (j.contains("num_seeds"))
            config.num_seeds = j["num_seeds"].get<int>();
        if (config.num_seeds < 1)
            throw std::runtime_error("invalid sweep config: num_seeds must be >= 1");
        if (j.contains("scenario"))
            config.base = spec_from_obj("sweep config", j["scenario"]);
        if (j.contains("aarlm")) {
            const json& a = j["aarlm"];
            if (a.contains("episodes"))
                config.cell.aarlm.episodes = a["episodes"].get<int>();
            if (a.contains("moves_per_episode"))
                config.cell.aarlm.moves_per_episode =
                    a["moves_per_episode"].get<int>();
            if (a.contains("discount"))
                config.cell.aarlm.discount = a["discount"].get<double>();
        }
        if (j.contains("anneal")) {
            const json& a = j["anneal"];
            if (a.contains("initial_temperature"))
                config.cell.anneal.initial_temperature =
                    a["initial_temperature"].get<double>();
            if (a.contains("cooling_factor"))
                config.cell.anneal.cooling_factor =
                    a["cooling_factor"].get<double>();
            if (a.contains("steps_per_temperature"))
                config.cell.anneal.steps_per_temperature =
                    a["steps_per_temperature"].get<int>();
            if (a.contains("min_temperature"))
                config.cell.anneal.min_temperature =
                    a["min_temperature"].get<double>();
        }
        if (j.contains("exact_node_budget"))
            config.cell.exact_node_budget =
                j["exact_node_budget"].get<std::uint64_t>();
        return config;
    });
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof())
        throw std::runtime_error("cannot read file: " + path);
    return std::move(buf).str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) throw std::runtime_error("cannot write file: " + path);
}

}  // namespace vcn
