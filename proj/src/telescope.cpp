#include "lampqi/telescope.hpp"

#include <algorithm>
#include <numeric>

namespace lampqi {

namespace {

// Greedy order: descending delta(0, v), then descending magnitude.
template <class F, class Mag>
std::vector<typename F::Point> greedy_order(const F& fam, const GeneratorSet<typename F::Point>& sigma,
                                            Mag magnitude) {
  auto order = sigma.elements;
  const auto zero = fam.zero();
  std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    const BigInt dx = fam.delta(zero, x), dy = fam.delta(zero, y);
    if (dx != dy) return dx > dy;
    const auto mx = magnitude(x), my = magnitude(y);
    if (mx != my) return mx > my;
    return x > y;
  });
  return order;
}

template <class P>
void emit_copies(std::vector<P>& out, const P& v, const BigInt& copies) {
  if (copies > BigInt(max_telescope_steps - out.size())) {
    throw std::length_error("decomposition exceeds the step limit");
  }
  for (BigInt i = 0; i < copies; ++i) out.push_back(v);
}

}  // namespace

std::vector<BSNumber> express(const BSFamily& fam, const BSNumber& target,
                              const GeneratorSet<BSNumber>& sigma) {
  const auto order = greedy_order(fam, sigma, [](const BSNumber& x) { return abs(x.to_rational()); });
  Rational residual = target.to_rational();
  std::vector<std::pair<BSNumber, BigInt>> picks;  // (signed generator, copies)
  for (const BSNumber& v : order) {
    if (v.is_zero()) continue;
    const Rational ratio = residual / v.to_rational();
    const BigInt q = numerator(ratio) / denominator(ratio);  // truncates toward zero
    if (q == 0) continue;
    picks.emplace_back(q > 0 ? v : bs_neg(v), abs(q));
    residual -= Rational(q) * v.to_rational();
  }
  if (residual != 0) {
    throw DecompositionError("target is not an ordered sum over the generating set",
                             fam.format(bs_from_rational(residual, fam.n)));
  }
  std::vector<BSNumber> steps;
  for (auto it = picks.rbegin(); it != picks.rend(); ++it) emit_copies(steps, it->first, it->second);
  return steps;
}

std::vector<LampConfig> express(const LampFamily& fam, const LampConfig& target,
                                const GeneratorSet<LampConfig>& sigma) {
  const std::uint32_t n = fam.n;
  if (!is_prime(n)) throw std::domain_error("lamplighter decomposition requires prime n");
  const auto order = greedy_order(fam, sigma, [](const LampConfig& x) { return x.size(); });
  std::vector<std::int64_t> rows;
  for (const auto& e : target.entries()) rows.push_back(e.index);
  for (const auto& g : order) {
    for (const auto& e : g.entries()) rows.push_back(e.index);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  const std::size_t R = rows.size(), C = order.size();
  // Augmented matrix over F_n: columns are generators, last column is target.
  std::vector<std::vector<std::uint32_t>> m(R, std::vector<std::uint32_t>(C + 1, 0));
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) m[r][c] = order[c].at(rows[r]);
    m[r][C] = target.at(rows[r]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < C && rank < R; ++c) {
    std::size_t p = rank;
    while (p < R && m[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(m[p], m[rank]);
    const std::uint32_t inv = inverse_mod(m[rank][c], n);
    for (auto& x : m[rank]) x = static_cast<std::uint32_t>((std::uint64_t{x} * inv) % n);
    for (std::size_t r = 0; r < R; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const std::uint32_t f = m[r][c];
      for (std::size_t k = 0; k <= C; ++k) {
        m[r][k] = static_cast<std::uint32_t>((m[r][k] + std::uint64_t{n - f} * m[rank][k]) % n);
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < R; ++r) {
    if (m[r][C] != 0) {
      // Report what remains after subtracting the best partial solution.
      LampConfig residual(n);
      residual.set(rows[r], m[r][C]);
      throw DecompositionError("target is not in the span of the generating set", fam.format(residual));
    }
  }
  std::vector<std::uint32_t> coeff(C, 0);
  for (std::size_t r = 0; r < rank; ++r) coeff[pivot_col[r]] = m[r][C];
  std::vector<LampConfig> steps;
  for (std::size_t c = C; c-- > 0;) emit_copies(steps, order[c], BigInt(coeff[c]));
  return steps;
}

namespace {

struct LatticeGen {
  BigInt x, y;
  std::vector<BigInt> coeff;
};

// Reduces gens so that at most one has a nonzero `coord`, by Euclid steps.
// Returns the index of that generator or -1.
int euclid_reduce(std::vector<LatticeGen>& gens, BigInt LatticeGen::*coord) {
  while (true) {
    int best = -1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].*coord == 0) continue;
      if (best < 0 || abs(gens[i].*coord) < abs(gens[best].*coord)) best = static_cast<int>(i);
    }
    if (best < 0) return -1;
    bool changed = false;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (static_cast<int>(i) == best || gens[i].*coord == 0) continue;
      const BigInt q = gens[i].*coord / gens[best].*coord;
      gens[i].x -= q * gens[best].x;
      gens[i].y -= q * gens[best].y;
      for (std::size_t k = 0; k < gens[i].coeff.size(); ++k) gens[i].coeff[k] -= q * gens[best].coeff[k];
      changed = true;
    }
    if (!changed) return best;
  }
}

}  // namespace

std::vector<SolVector> express(const SolFamily& fam, SolVector target, const GeneratorSet<SolVector>& sigma) {
  const auto order = greedy_order(fam, sigma, [](SolVector v) {
    return BigInt(v.x) * v.x + BigInt(v.y) * v.y;
  });
  const std::size_t C = order.size();
  std::vector<LatticeGen> gens;
  for (std::size_t i = 0; i < C; ++i) {
    LatticeGen g{order[i].x, order[i].y, std::vector<BigInt>(C, 0)};
    g.coeff[i] = 1;
    gens.push_back(std::move(g));
  }
  std::vector<BigInt> coeff(C, 0);
  BigInt rx = target.x, ry = target.y;
  auto apply = [&](const LatticeGen& g, const BigInt& q) {
    rx -= q * g.x;
    ry -= q * g.y;
    for (std::size_t k = 0; k < C; ++k) coeff[k] += q * g.coeff[k];
  };
  const int px = euclid_reduce(gens, &LatticeGen::x);
  if (px >= 0) {
    if (rx % gens[px].x == 0) apply(gens[px], rx / gens[px].x);
    gens.erase(gens.begin() + px);
  }
  const int py = euclid_reduce(gens, &LatticeGen::y);
  if (rx == 0 && py >= 0 && ry % gens[py].y == 0) apply(gens[py], ry / gens[py].y);
  if (rx != 0 || ry != 0) {
    throw DecompositionError("target is not an integer combination of the generating set",
                             to_string(rx) + "," + to_string(ry));
  }
  std::vector<SolVector> steps;
  for (std::size_t c = C; c-- > 0;) {
    emit_copies(steps, coeff[c] > 0 ? order[c] : -order[c], abs(coeff[c]));
  }
  return steps;
}

}  // namespace lampqi
