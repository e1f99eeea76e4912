#pragma once

#include <cstdint>
#include <random>

namespace vqsim {

// Reproducibility contract: all randomness in this project flows through
// std::mt19937_64 (whose output sequence is pinned by the C++ standard)
// seeded through fold_seed, and through the uniform mappings below. No
// wall-clock seeding anywhere.

/// SplitMix64 finalizer (Vigna). Bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Folds `salt` into `base`, yielding the seed of an independent substream.
/// fold_seed(s, 0) and fold_seed(s, 1) are the documented stream-splitting
/// rule used for instance coefficients and initial-layer parameters.
inline std::uint64_t fold_seed(std::uint64_t base, std::uint64_t salt) {
    return mix64(base + 0x9e3779b97f4a7c15ULL * (salt + 1));
}

/// Uniform on the open interval (0,1): ((x >> 11) + 0.5) * 2^-53.
/// Never returns an endpoint.
inline double uniform_unit_open(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform strictly inside (-1,1). The arithmetic is exact in binary,
/// so the endpoints are unreachable.
inline double uniform_symmetric_open(std::mt19937_64& gen) {
    return 2.0 * uniform_unit_open(gen) - 1.0;
}

} // namespace vqsim
