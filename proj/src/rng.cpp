#include "lampqi/rng.hpp"

#include <limits>

namespace lampqi {

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

std::int64_t uniform_between(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(gen, static_cast<std::uint64_t>(hi - lo) + 1));
}

Quad<BSNumber> random_bs_parallelogram(std::mt19937_64& gen, std::uint32_t n) {
  while (true) {
    const BSNumber a = bs_normalize(uniform_between(gen, -1000, 1000), uniform_between(gen, -5, 5), n);
    const BSNumber side = bs_normalize(uniform_between(gen, -1000, 1000), uniform_between(gen, -5, 5), n);
    const BSNumber step = bs_normalize(uniform_between(gen, -2000, 2000), 0, n);
    if (side.is_zero() || step.is_zero() || side == step) continue;
    const BSNumber b = bs_add(a, side);
    const BSNumber c = bs_add(a, step);
    const BSNumber d = bs_add(b, step);
    return Quad<BSNumber>{{a, b, d, c}};
  }
}

}  // namespace lampqi
