#pragma once

#include <cstdint>
#include <random>

#include "lampqi/bs_number.hpp"
#include "lampqi/quad.hpp"

namespace lampqi {

/// Uniform integer in [0, bound) by rejection, so the sequence drawn from a
/// seeded std::mt19937_64 is the same on every platform.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound);

/// Uniform integer in [lo, hi].
std::int64_t uniform_between(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi);

/// A random parallelogram [[a, b], [c, d]] in Z[1/n] with pairwise distinct
/// corners: a = r n^k and b - a = s n^j with |r|, |s| <= 1000 and
/// k, j in [-5, 5], c - a a nonzero integer in [-2000, 2000], d = b + c - a.
Quad<BSNumber> random_bs_parallelogram(std::mt19937_64& gen, std::uint32_t n);

}  // namespace lampqi
