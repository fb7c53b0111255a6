#pragma once
#include <cstdint>
#include <random>

namespace slabperc {

// splitmix64 step: advances `state` and returns the next washed value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Fixed stream tags so every consumer of randomness inside one run draws
// from its own substream of the master seed.
namespace stream {
constexpr std::uint64_t grid_offset = 1;
constexpr std::uint64_t symmetry = 2;
constexpr std::uint64_t beta = 3;
constexpr std::uint64_t cut = 4;
constexpr std::uint64_t trial = 5;
constexpr std::uint64_t witness = 6;
}  // namespace stream

// Counter-based substream derivation: (master, stream, counter) -> seed.
// Trials index the counter, so parallel and serial runs see identical draws.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_tag,
                                 std::uint64_t counter = 0) {
    std::uint64_t s = master;
    splitmix64(s);
    s ^= 0xd1b54a32d192ed03ULL * (stream_tag + 1);
    splitmix64(s);
    s ^= 0x8cb92ba72f3d8dd7ULL * (counter + 1);
    return splitmix64(s);
}

inline std::mt19937_64 substream(std::uint64_t master, std::uint64_t stream_tag,
                                 std::uint64_t counter = 0) {
    return std::mt19937_64(derive_seed(master, stream_tag, counter));
}

// Uniform integer in [0, n), n >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen);
}

}  // namespace slabperc
