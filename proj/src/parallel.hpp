#pragma once

#include <cstdint>

#include "alphaeta/exec.hpp"

namespace aeta::detail {

// Runs fn(block) for block in [0, nblocks). Blocks must be independent and
// write only to their own slots; under that contract the serial and OpenMP
// paths produce identical results.
template <class Fn>
void for_each_block(std::uint64_t nblocks, ExecMode mode, Fn&& fn) {
    if (mode == ExecMode::serial) {
        for (std::uint64_t b = 0; b < nblocks; ++b) fn(b);
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b)
        fn(static_cast<std::uint64_t>(b));
}

inline std::uint64_t block_count(std::uint64_t total, std::uint64_t block_size) {
    return (total + block_size - 1) / block_size;
}

}  // namespace aeta::detail
