#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vcn/scenario.hpp"

using namespace vcn;

// ============================================================
// Spec validation
// ============================================================

TEST_CASE("validate_spec rejects out-of-range parameters") {
    ScenarioSpec spec;
    CHECK_NOTHROW(validate_spec(spec));
    spec.num_tasks = 0;
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
    spec = {};
    spec.num_modes = 0;
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
    spec = {};
    spec.data_size_range = {25, 5};  // reversed
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
    spec = {};
    spec.data_size_range = {0, 5};  // sizes must stay positive
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
    spec = {};
    spec.bandwidth_pool.clear();
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
    spec = {};
    spec.bandwidth_pool = {10, -20};
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
    spec = {};
    spec.support_density = 0.0;
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
    spec = {};
    spec.support_density = 1.5;
    CHECK_THROWS_AS(validate_spec(spec), std::invalid_argument);
}

// ============================================================
// Generation
// ============================================================

TEST_CASE("generation is a pure function of the spec") {
    const ScenarioSpec spec{.num_tasks = 60, .num_modes = 4, .seed = 31337};
    const Instance a = generate_instance(spec);
    const Instance b = generate_instance(spec);
    REQUIRE(a.num_tasks() == 60);
    REQUIRE(a.num_modes() == 4);
    for (int j = 0; j < a.num_tasks(); ++j) {
        CHECK(a.data_size(j) == b.data_size(j));
        CHECK(a.deadline(j) == b.deadline(j));
        for (int c = 0; c < a.num_modes(); ++c) {
            CHECK(a.bandwidth(j, c) == b.bandwidth(j, c));
            CHECK(a.supports(j, c) == b.supports(j, c));
        }
    }
    for (int c = 0; c < a.num_modes(); ++c)
        CHECK(a.buffer_delay(c) == b.buffer_delay(c));

    ScenarioSpec other = spec;
    other.seed = 31338;
    const Instance d = generate_instance(other);
    bool differs = false;
    for (int j = 0; j < a.num_tasks() && !differs; ++j)
        differs = a.data_size(j) != d.data_size(j);
    CHECK(differs);
}

TEST_CASE("generated values stay inside the configured ranges") {
    ScenarioSpec spec;
    spec.num_tasks = 500;
    spec.seed = 5;
    const Instance inst = generate_instance(spec);
    for (int j = 0; j < inst.num_tasks(); ++j) {
        CHECK(inst.data_size(j) >= 5.0);
        CHECK(inst.data_size(j) <= 25.0);
        CHECK(inst.deadline(j) >= 1.0);
        CHECK(inst.deadline(j) <= 5.0);
        int supported = 0;
        for (int c = 0; c < inst.num_modes(); ++c) {
            // one bandwidth per mode: every task sees the same rate
            CHECK(inst.bandwidth(j, c) == inst.bandwidth(0, c));
            supported += inst.supports(j, c) ? 1 : 0;
        }
        CHECK(supported >= 1);
    }
    for (int c = 0; c < inst.num_modes(); ++c) {
        CHECK(inst.buffer_delay(c) >= 1.0);
        CHECK(inst.buffer_delay(c) <= 10.0);
    }
    CHECK(inst.meta().has_value());
    CHECK(inst.meta()->seed == 5);
}

TEST_CASE("ascending pool policy takes the k smallest pool rates in order") {
    ScenarioSpec spec;
    spec.num_tasks = 3;
    spec.bandwidth_policy = ModeBandwidthPolicy::AscendingPool;
    spec.num_modes = 3;
    const Instance three = generate_instance(spec);
    CHECK(three.bandwidth(0, 0) == 10);
    CHECK(three.bandwidth(0, 1) == 20);
    CHECK(three.bandwidth(0, 2) == 40);
    spec.num_modes = 5;
    const Instance five = generate_instance(spec);
    for (int c = 0; c < 5; ++c)
        CHECK(five.bandwidth(0, c) ==
              std::vector<double>{10, 20, 40, 80, 100}[c]);
    // more modes than pool entries wraps around the sorted pool
    spec.num_modes = 7;
    const Instance seven = generate_instance(spec);
    CHECK(seven.bandwidth(0, 5) == 10);
    CHECK(seven.bandwidth(0, 6) == 20);
}

TEST_CASE("random pool policy draws without replacement when it can") {
    ScenarioSpec spec;
    spec.num_tasks = 3;
    spec.num_modes = 5;
    spec.bandwidth_policy = ModeBandwidthPolicy::RandomPool;
    spec.seed = 17;
    const Instance inst = generate_instance(spec);
    std::multiset<double> seen;
    for (int c = 0; c < 5; ++c) seen.insert(inst.bandwidth(0, c));
    CHECK(seen == std::multiset<double>{10, 20, 40, 80, 100});
}

TEST_CASE("sparse support still yields constructible instances") {
    ScenarioSpec spec;
    spec.num_tasks = 200;
    spec.support_density = 0.01;  // nearly every row needs the repair path
    spec.seed = 23;
    const Instance inst = generate_instance(spec);  // would throw otherwise
    for (int j = 0; j < inst.num_tasks(); ++j) {
        int supported = 0;
        for (int c = 0; c < inst.num_modes(); ++c)
            supported += inst.supports(j, c) ? 1 : 0;
        CHECK(supported >= 1);
    }
}

// ============================================================
// Sweep spec derivation
// ============================================================

TEST_CASE("sweep_specs walks one axis and re-seeds each point") {
    ScenarioSpec base;
    base.seed = 99;

    SUBCASE("task axis") {
        const auto specs =
            sweep_specs(base, SweepAxis::NumTasks, {25, 50, 75});
        REQUIRE(specs.size() == 3);
        CHECK(specs[0].num_tasks == 25);
        CHECK(specs[1].num_tasks == 50);
        CHECK(specs[2].num_tasks == 75);
        for (const ScenarioSpec& s : specs) {
            CHECK(s.num_modes == base.num_modes);  // other fields inherited
            CHECK(s.seed != base.seed);
        }
        CHECK(specs[0].seed != specs[1].seed);
        // derivation is stable: same call, same seeds
        CHECK(sweep_specs(base, SweepAxis::NumTasks, {25, 50, 75})[1].seed ==
              specs[1].seed);
        // and a point keeps its seed regardless of which points surround it
        CHECK(sweep_specs(base, SweepAxis::NumTasks, {50})[0].seed ==
              specs[1].seed);
    }
    SUBCASE("mode axis") {
        const auto specs = sweep_specs(base, SweepAxis::NumModes, {2, 5});
        REQUIRE(specs.size() == 2);
        CHECK(specs[0].num_modes == 2);
        CHECK(specs[1].num_modes == 5);
        CHECK(specs[0].num_tasks == base.num_tasks);
        // different axes at the same value use different sub-seeds
        CHECK(sweep_specs(base, SweepAxis::NumTasks, {5})[0].seed !=
              specs[1].seed);
    }
}

TEST_CASE("axis names are stable") {
    CHECK(to_string(SweepAxis::NumTasks) == "num_tasks");
    CHECK(to_string(SweepAxis::NumModes) == "num_modes");
}
