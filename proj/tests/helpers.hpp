#pragma once

// Compact instance construction for tests. Most hand-built cases use one
// bandwidth per mode (every task sees the same rate on a given mode), which
// mirrors how the generator builds instances.

#include <cstdint>
#include <random>
#include <vector>

#include "vcn/instance.hpp"

namespace testutil {

// support empty => every task supports every mode.
inline vcn::Instance make_uniform(std::vector<double> sizes,
                                  std::vector<double> deadlines,
                                  const std::vector<double>& mode_bandwidth,
                                  std::vector<double> buffers,
                                  std::vector<std::vector<std::uint8_t>> support = {}) {
    const std::size_t n = sizes.size();
    std::vector<std::vector<double>> bandwidth(n, mode_bandwidth);
    if (support.empty())
        support.assign(n, std::vector<std::uint8_t>(mode_bandwidth.size(), 1));
    return vcn::Instance(std::move(sizes), std::move(deadlines),
                         std::move(bandwidth), std::move(buffers),
                         std::move(support));
}

// Small random instance built directly (no generator involved), for oracle
// comparisons that should not depend on scenario-gen. Every value is drawn
// from the given engine, so instances are reproducible from the seed.
inline vcn::Instance random_small(std::mt19937_64& rng, int max_tasks = 8,
                                  int max_modes = 4) {
    const int n = 1 + static_cast<int>(rng() % max_tasks);
    const int m = 1 + static_cast<int>(rng() % max_modes);
    const auto unit = [&] { return (rng() >> 11) * 0x1.0p-53; };
    std::vector<double> sizes(n), deadlines(n), buffers(m);
    std::vector<std::vector<double>> bandwidth(n, std::vector<double>(m));
    std::vector<std::vector<std::uint8_t>> support(n, std::vector<std::uint8_t>(m, 0));
    for (int c = 0; c < m; ++c) buffers[c] = 10.0 * unit();
    for (int j = 0; j < n; ++j) {
        sizes[j] = 1.0 + 24.0 * unit();
        deadlines[j] = 1.0 + 4.0 * unit();
        for (int c = 0; c < m; ++c) {
            bandwidth[j][c] = 5.0 + 95.0 * unit();
            support[j][c] = rng() % 4 != 0 ? 1 : 0;  // ~75% dense
        }
        support[j][rng() % m] = 1;  // keep the instance constructible
    }
    return vcn::Instance(std::move(sizes), std::move(deadlines),
                         std::move(bandwidth), std::move(buffers),
                         std::move(support));
}

// A uniformly random valid assignment for the given instance.
inline vcn::Assignment random_valid_assignment(const vcn::Instance& inst,
                                               std::mt19937_64& rng) {
    vcn::Assignment asg;
    asg.mode_of.resize(inst.num_tasks());
    for (int j = 0; j < inst.num_tasks(); ++j) {
        std::vector<int> supported;
        for (int c = 0; c < inst.num_modes(); ++c)
            if (inst.supports(j, c)) supported.push_back(c);
        asg.mode_of[j] = supported[rng() % supported.size()];
    }
    return asg;
}

}  // namespace testutil
