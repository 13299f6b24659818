#ifndef VCN_SCENARIO_HPP
#define VCN_SCENARIO_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vcn/instance.hpp"

// Seeded random instance generator. Default ranges follow the simulation
// regime this library targets: 25..150 tasks, 2..5 modes, 5..25 kbit tasks,
// 1..5 ms deadlines, mode bandwidths from {10,20,40,80,100} Mbit/s and
// 1..10 ms of initially buffered data per mode. Note the buffer range
// deliberately exceeds the deadline range, so some tasks are late no matter
// what a solver does; completion rate simply reports that.

namespace vcn {

// How mode bandwidths are taken from the pool. AscendingPool: mode count k
// uses the k smallest pool values in ascending order, so adding a mode adds
// the next-larger bandwidth. RandomPool: a seeded draw without replacement.
enum class ModeBandwidthPolicy { AscendingPool, RandomPool };

struct ScenarioSpec {
    int num_tasks = 100;
    int num_modes = 5;
    std::array<double, 2> data_size_range{5.0, 25.0};     // kbit
    std::array<double, 2> deadline_range{1.0, 5.0};       // ms
    std::vector<double> bandwidth_pool{10, 20, 40, 80, 100};  // Mbit/s
    std::array<double, 2> buffer_delay_range{1.0, 10.0};  // ms
    double support_density = 0.8;
    ModeBandwidthPolicy bandwidth_policy = ModeBandwidthPolicy::AscendingPool;
    std::uint64_t seed = 1;
};

// Throws std::invalid_argument when ranges are empty/unordered, the pool is
// empty or non-positive, or support_density is outside (0, 1].
void validate_spec(const ScenarioSpec& spec);

// Pure function of the spec (including seed). Tasks with an all-zero support
// row get one uniformly chosen mode forced on, so the result always satisfies
// Instance invariants.
Instance generate_instance(const ScenarioSpec& spec);

enum class SweepAxis { NumTasks, NumModes };

std::string to_string(SweepAxis axis);

// One spec per sweep point, identical to the base except for the axis value
// and a per-point sub-seed derived from (base seed, axis, point value).
std::vector<ScenarioSpec> sweep_specs(const ScenarioSpec& base, SweepAxis axis,
                                      const std::vector<int>& points);

}  // namespace vcn

#endif  // VCN_SCENARIO_HPP
