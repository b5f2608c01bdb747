#pragma once

#include <cstdint>
#include <random>

namespace cmiknn {

/// SplitMix64 step; the standard 64-bit finalizer-based mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-derived seed for stream `stream_id` under `master`. Distinct
/// stream ids give statistically independent streams, so parallel
/// consumers can draw without any shared state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream_id * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL);
    std::uint64_t b = splitmix64(s);
    splitmix64(s);
    return b ^ s;
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream_id) {
    return std::mt19937_64(derive_seed(master, stream_id));
}

}  // namespace cmiknn
