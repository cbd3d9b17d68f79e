#pragma once

#include "diolab/numeric.hpp"

#include <cstdint>

namespace diolab::rng {

/// Counter-based generator: every output word is a pure function of
/// (seed, stream, index, slot), so parallel consumers can draw by index with
/// no shared state and results never depend on thread count.
std::uint64_t word(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                   std::uint64_t slot);

/// Uniform dyadic rational in [0, 1) with 128 fractional bits, drawn from two
/// generator words. Exact arithmetic on samples stays available downstream.
Rat unit_dyadic(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                std::uint64_t slot);

/// Uniform integer in [0, bound) by rejection-free multiply-shift on a single
/// word; bias <= bound/2^64, fine for test-grid choices.
std::uint64_t below(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                    std::uint64_t slot, std::uint64_t bound);

}  // namespace diolab::rng
