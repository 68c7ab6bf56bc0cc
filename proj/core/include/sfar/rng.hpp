#pragma once

#include <cstdint>
#include <random>

namespace sfar {

// splitmix64 finalizer; used to decorrelate seeds derived from
// (master seed, stream index) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(mix64(seed));
}

/// Per-trial seed derivation: stable under any trial execution order.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream,
                                 std::uint64_t salt = 0) {
    return master_seed ^ mix64(stream ^ mix64(salt));
}

inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream,
                                   std::uint64_t salt = 0) {
    return make_rng(derive_seed(master_seed, stream, salt));
}

}  // namespace sfar
