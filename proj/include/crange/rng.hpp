#pragma once

#include <cstdint>
#include <random>

namespace crange {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-split child seed: disjoint deterministic streams from one seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x71c9'4e5a'2b3cULL));
}

inline std::mt19937_64 make_rng(uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

} // namespace crange
