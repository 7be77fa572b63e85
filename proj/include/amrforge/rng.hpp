#pragma once

#include <cstdint>

namespace amrforge {

// splitmix64 step; cheap, well-mixed, and stable across platforms.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// The index-th value of the splitmix64 stream seeded at `master`.
// Derived seeds for index < n are unchanged when n grows, which keeps
// restart/record streams prefix-stable.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t i = 0; i < index; ++i) out = splitmix64(state);
    return out;
}

}  // namespace amrforge
