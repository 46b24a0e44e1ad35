#include "lampqi/sigma.hpp"

#include <algorithm>
#include <stdexcept>

namespace lampqi {

std::optional<std::int64_t> lamp_window_missing_index(const GeneratorSet<LampConfig>& sigma,
                                                      std::int64_t lo, std::int64_t hi) {
  if (sigma.elements.empty()) {
    return lo < hi ? std::optional<std::int64_t>(lo) : std::nullopt;
  }
  const std::uint32_t n = sigma.elements.front().modulus();
  if (!is_prime(n)) throw std::domain_error("generation check requires prime n");
  std::vector<std::int64_t> cols;
  for (std::int64_t i = lo; i < hi; ++i) cols.push_back(i);
  for (const auto& g : sigma.elements) {
    for (const auto& e : g.entries()) cols.push_back(e.index);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  auto col_of = [&](std::int64_t i) {
    return static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), i) - cols.begin());
  };
  // Row-reduced basis of the span, keyed by pivot column.
  std::vector<std::vector<std::uint32_t>> basis;
  std::vector<std::size_t> pivots;
  auto reduce = [&](std::vector<std::uint32_t>& row) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint32_t f = row[pivots[b]];
      if (f == 0) continue;
      for (std::size_t k = 0; k < row.size(); ++k) {
        row[k] = static_cast<std::uint32_t>((row[k] + std::uint64_t{n - f} * basis[b][k]) % n);
      }
    }
  };
  for (const auto& g : sigma.elements) {
    std::vector<std::uint32_t> row(cols.size(), 0);
    for (const auto& e : g.entries()) row[col_of(e.index)] = e.value;
    reduce(row);
    auto nz = std::find_if(row.begin(), row.end(), [](std::uint32_t x) { return x != 0; });
    if (nz == row.end()) continue;
    const std::size_t p = static_cast<std::size_t>(nz - row.begin());
    const std::uint32_t inv = inverse_mod(*nz, n);
    for (auto& x : row) x = static_cast<std::uint32_t>((std::uint64_t{x} * inv) % n);
    for (auto& b : basis) {
      const std::uint32_t f = b[p];
      if (f == 0) continue;
      for (std::size_t k = 0; k < b.size(); ++k) {
        b[k] = static_cast<std::uint32_t>((b[k] + std::uint64_t{n - f} * row[k]) % n);
      }
    }
    basis.push_back(std::move(row));
    pivots.push_back(p);
  }
  for (std::int64_t i = lo; i < hi; ++i) {
    std::vector<std::uint32_t> unit(cols.size(), 0);
    unit[col_of(i)] = 1;
    reduce(unit);
    if (std::any_of(unit.begin(), unit.end(), [](std::uint32_t x) { return x != 0; })) return i;
  }
  return std::nullopt;
}

SigmaObstruction lamp_sigma_obstruction(const LampFamily& fam, const GeneratorSet<LampConfig>& sigma,
                                        const QuadParams& params, std::int64_t lo, std::int64_t hi) {
  if (lo >= hi) throw std::invalid_argument("empty window");
  if (params.M <= BigInt(fam.n) * params.epsilon * params.epsilon) {
    throw std::invalid_argument("obstruction needs log_n M > 2 log_n eps + 1");
  }
  if (auto missing = lamp_window_missing_index(sigma, lo, hi)) {
    throw std::domain_error("generating set does not generate the window: index " +
                            std::to_string(*missing) + " is missing");
  }
  auto lighting = [&](std::int64_t i) -> const LampConfig* {
    for (const auto& g : sigma.elements) {
      if (g.at(i) != 0) return &g;
    }
    return nullptr;
  };
  const LampConfig* v = lighting(lo);
  if (v != nullptr) {
    const std::int64_t i0 = v->hull()->second + 1;
    if (i0 < hi) {
      if (const LampConfig* z = lighting(i0)) {
        auto c = sigma_pair(fam, *z, *v, params);
        if (c.kind != QuadClass::parallelogram) return {*z, *v, std::move(c), i0, "index-gap"};
      }
    }
  }
  if (auto f = sigma_admissible(fam, sigma, params)) {
    return {f->v, f->w, std::move(f->classification), std::nullopt, "exhaustive"};
  }
  throw std::logic_error("no obstruction found although the preconditions hold");
}

}  // namespace lampqi
