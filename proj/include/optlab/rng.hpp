#pragma once

#include <cstdint>
#include <vector>

namespace optlab::rng {

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// splitmix64 finalizer. Bit-exact on every platform; the single source of
/// seeded randomness in the project.
constexpr uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// Counter-based stream: value at position `counter` of the stream named by
/// `seed`. Counters start at 1 by convention.
constexpr uint64_t hash_at(uint64_t seed, uint64_t counter) {
    return mix64(seed + counter * kGolden);
}

/// Reproducible per-trial seed derived from a master seed.
constexpr uint64_t derive_seed(uint64_t master, uint64_t trial) {
    return hash_at(master, trial + 1);
}

/// Map a 64-bit word to [0, bound) by fixed-point multiply. Bias is O(2^-64).
constexpr uint64_t bounded(uint64_t word, uint64_t bound) {
    return uint64_t((static_cast<unsigned __int128>(word) * bound) >> 64);
}

/// Floyd's selection: m distinct values from [0, domain), exactly m draws,
/// returned ascending. Deterministic in (domain, m, seed).
std::vector<uint64_t> sample_without_replacement(uint64_t domain, uint64_t m, uint64_t seed);

} // namespace optlab::rng
