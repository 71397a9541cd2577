#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace aeta::rng {

/// splitmix64 finalizer; good 64-bit avalanche, used only for stream derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x00000100000001B3ull;
    }
    return h;
}

// Every random draw in the project comes from a stream addressed by
// (master seed, module tag, stream index). Kernels assign one stream per
// work block, so results do not depend on thread count or schedule.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t index) {
    return mix64(mix64(master ^ fnv1a64(tag)) + 0x9E3779B97F4A7C15ull * (index + 1));
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::string_view tag,
                                   std::uint64_t index) {
    return std::mt19937_64(stream_seed(master, tag, index));
}

/// Stream-index stride reserved per experiment run, so (run, block) pairs
/// cannot collide: index = run * kRunStride + block.
inline constexpr std::uint64_t kRunStride = 1ull << 32;

}  // namespace aeta::rng
