#include "vcn/scenario.hpp"

#include <algorithm>
#include <stdexcept>

#include "vcn/rng.hpp"

namespace vcn {

namespace {

constexpr std::uint64_t kaxis_salt_tasks = 0x7461736b73ULL;   // "tasks"
constexpr std::uint64_t kaxis_salt_modes = 0x6d6f646573ULL;   // "modes"

void check_range(const std::array<double, 2>& r, const char* what) {
    if (!(r[0] <= r[1]))
        throw std::invalid_argument(std::string(what) + " range is empty");
}

// Mode bandwidths for the spec, consuming draws from rng only under
// RandomPool. Pool values are used without replacement; a mode count larger
// than the pool cycles through it again.
std::vector<double> pick_mode_bandwidths(const ScenarioSpec& spec,
                                         std::mt19937_64& rng) {
    std::vector<double> pool = spec.bandwidth_pool;
    std::sort(pool.begin(), pool.end());
    std::vector<double> out(spec.num_modes);
    if (spec.bandwidth_policy == ModeBandwidthPolicy::AscendingPool) {
        for (int c = 0; c < spec.num_modes; ++c) out[c] = pool[c % pool.size()];
        return out;
    }
    // Partial Fisher-Yates over the sorted pool.
    std::vector<double> shuffled = pool;
    for (std::size_t i = 0; i + 1 < shuffled.size(); ++i) {
        const std::size_t k =
            i + uniform_below(rng, static_cast<std::uint64_t>(shuffled.size() - i));
        std::swap(shuffled[i], shuffled[k]);
    }
    for (int c = 0; c < spec.num_modes; ++c) {
        if (static_cast<std::size_t>(c) < shuffled.size()) {
            out[c] = shuffled[c];
        } else {
            out[c] = pool[uniform_below(rng, pool.size())];
        }
    }
    return out;
}

}  // namespace

void validate_spec(const ScenarioSpec& spec) {
    if (spec.num_tasks < 1)
        throw std::invalid_argument("num_tasks must be >= 1");
    if (spec.num_modes < 1)
        throw std::invalid_argument("num_modes must be >= 1");
    check_range(spec.data_size_range, "data_size");
    check_range(spec.deadline_range, "deadline");
    check_range(spec.buffer_delay_range, "buffer_delay");
    if (spec.data_size_range[0] <= 0)
        throw std::invalid_argument("data sizes must be strictly positive");
    if (spec.deadline_range[0] < 0 || spec.buffer_delay_range[0] < 0)
        throw std::invalid_argument("durations must be non-negative");
    if (spec.bandwidth_pool.empty())
        throw std::invalid_argument("bandwidth pool must be non-empty");
    for (double b : spec.bandwidth_pool) {
        if (!(b > 0))
            throw std::invalid_argument("bandwidth pool values must be positive");
    }
    if (!(spec.support_density > 0.0 && spec.support_density <= 1.0))
        throw std::invalid_argument("support_density must be in (0, 1]");
}

Instance generate_instance(const ScenarioSpec& spec) {
    validate_spec(spec);
    std::mt19937_64 rng(spec.seed);

    // Draw order is part of the format: bandwidths, data sizes, deadlines,
    // buffer delays, then support rows (with inline repair).
    const std::vector<double> mode_bw = pick_mode_bandwidths(spec, rng);

    std::vector<double> data_size(spec.num_tasks);
    for (double& v : data_size)
        v = uniform_real(rng, spec.data_size_range[0], spec.data_size_range[1]);
    std::vector<double> deadline(spec.num_tasks);
    for (double& v : deadline)
        v = uniform_real(rng, spec.deadline_range[0], spec.deadline_range[1]);
    std::vector<double> buffer_delay(spec.num_modes);
    for (double& v : buffer_delay)
        v = uniform_real(rng, spec.buffer_delay_range[0], spec.buffer_delay_range[1]);

    std::vector<std::vector<double>> bandwidth(
        spec.num_tasks, std::vector<double>(spec.num_modes));
    for (int j = 0; j < spec.num_tasks; ++j)
        for (int c = 0; c < spec.num_modes; ++c) bandwidth[j][c] = mode_bw[c];

    std::vector<std::vector<std::uint8_t>> support(
        spec.num_tasks, std::vector<std::uint8_t>(spec.num_modes, 0));
    for (int j = 0; j < spec.num_tasks; ++j) {
        bool any = false;
        for (int c = 0; c < spec.num_modes; ++c) {
            const bool on = uniform_real(rng, 0.0, 1.0) < spec.support_density;
            support[j][c] = on ? 1 : 0;
            any = any || on;
        }
        if (!any) {
            const int forced = static_cast<int>(
                uniform_below(rng, static_cast<std::uint64_t>(spec.num_modes)));
            support[j][forced] = 1;
        }
    }

    InstanceMeta meta;
    meta.seed = spec.seed;
    meta.generator = "vcn-scenario";
    meta.generator_version = 1;
    return Instance(std::move(data_size), std::move(deadline), std::move(bandwidth),
                    std::move(buffer_delay), std::move(support), meta);
}

std::string to_string(SweepAxis axis) {
    return axis == SweepAxis::NumTasks ? "num_tasks" : "num_modes";
}

std::vector<ScenarioSpec> sweep_specs(const ScenarioSpec& base, SweepAxis axis,
                                      const std::vector<int>& points) {
    validate_spec(base);
    const std::uint64_t salt =
        axis == SweepAxis::NumTasks ? kaxis_salt_tasks : kaxis_salt_modes;
    std::vector<ScenarioSpec> specs;
    specs.reserve(points.size());
    for (int p : points) {
        ScenarioSpec s = base;
        if (axis == SweepAxis::NumTasks) {
            s.num_tasks = p;
        } else {
            s.num_modes = p;
        }
        s.seed = derive_seed(base.seed, salt, static_cast<std::uint64_t>(p));
        validate_spec(s);
        specs.push_back(std::move(s));
    }
    return specs;
}

}  // namespace vcn
