#ifndef VCN_RNG_HPP
#define VCN_RNG_HPP

#include <cstdint>
#include <random>

// Deterministic random helpers. std::mt19937_64 is fully specified by the
// standard, but the std distributions are not; the samplers below replace
// them so identical seeds give identical streams on any toolchain.

namespace vcn {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives an independent sub-seed from a base seed and up to two salts.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt_a,
                                 std::uint64_t salt_b = 0) {
    std::uint64_t h = splitmix64(base ^ 0x6a09e667f3bcc908ULL);
    h = splitmix64(h ^ salt_a);
    h = splitmix64(h ^ salt_b);
    return h;
}

// Uniform integer in [0, n) by rejection, no modulo bias.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

// Uniform double in [lo, hi), 53-bit resolution.
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

}  // namespace vcn

#endif  // VCN_RNG_HPP
