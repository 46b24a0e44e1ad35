#include "lampqi/lamp_config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lampqi {

namespace {

void require_modulus(std::uint32_t n) {
  if (n < 2) throw std::domain_error("lamplighter modulus must be >= 2");
}

void require_same_modulus(const LampConfig& p, const LampConfig& q) {
  if (p.modulus() != q.modulus()) {
    throw std::domain_error("lamplighter modulus mismatch: " + std::to_string(p.modulus()) +
                            " vs " + std::to_string(q.modulus()));
  }
}

std::uint32_t reduce(std::int64_t v, std::uint32_t n) {
  const std::int64_t m = static_cast<std::int64_t>(n);
  return static_cast<std::uint32_t>(((v % m) + m) % m);
}

// Merge p and q entrywise with f(pv, qv) mod n, dropping zeros.
template <class F>
LampConfig merge(const LampConfig& p, const LampConfig& q, F f) {
  require_same_modulus(p, q);
  const std::uint32_t n = p.modulus();
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const auto& a = p.entries();
  const auto& b = q.entries();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.emplace_back(a[i].index, f(a[i].value, 0U));
      ++i;
    } else if (i == a.size() || b[j].index < a[i].index) {
      out.emplace_back(b[j].index, f(0U, b[j].value));
      ++j;
    } else {
      out.emplace_back(a[i].index, f(a[i].value, b[j].value));
      ++i;
      ++j;
    }
  }
  LampConfig r(n);
  for (const auto& [idx, v] : out) r.set(idx, reduce(v, n));
  return r;
}

}  // namespace

LampConfig::LampConfig(std::uint32_t modulus) : modulus_(modulus) { require_modulus(modulus); }

LampConfig LampConfig::from_pairs(std::uint32_t modulus,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  std::map<std::int64_t, std::int64_t> acc;
  for (const auto& [i, v] : pairs) acc[i] += v;
  LampConfig c(modulus);
  for (const auto& [i, v] : acc) c.set(i, reduce(v, modulus));
  return c;
}

LampConfig LampConfig::single(std::uint32_t modulus, std::int64_t index, std::uint32_t value) {
  LampConfig c(modulus);
  c.set(index, value % modulus);
  return c;
}

std::uint32_t LampConfig::at(std::int64_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::int64_t i) { return e.index < i; });
  if (it != entries_.end() && it->index == index) return it->value;
  return 0;
}

void LampConfig::set(std::int64_t index, std::uint32_t value) {
  value %= modulus_;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::int64_t i) { return e.index < i; });
  const bool present = it != entries_.end() && it->index == index;
  if (value == 0) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->value = value;
  } else {
    entries_.insert(it, Entry{index, value});
  }
}

std::optional<std::pair<std::int64_t, std::int64_t>> LampConfig::hull() const {
  if (entries_.empty()) return std::nullopt;
  return std::make_pair(entries_.front().index, entries_.back().index);
}

std::strong_ordering operator<=>(const LampConfig& a, const LampConfig& b) {
  if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                b.entries_.begin(), b.entries_.end());
}

std::size_t hash_value(const LampConfig& c) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ c.modulus();
  for (const auto& e : c.entries()) {
    h ^= static_cast<std::uint64_t>(e.index) * 0xff51afd7ed558ccdULL + e.value;
    h = (h << 29U) | (h >> 35U);
    h *= 0xc4ceb9fe1a85ec53ULL;
  }
  return static_cast<std::size_t>(h);
}

LampConfig lamp_add(const LampConfig& p, const LampConfig& q) {
  return merge(p, q, [](std::uint32_t a, std::uint32_t b) { return std::int64_t(a) + b; });
}

LampConfig lamp_sub(const LampConfig& p, const LampConfig& q) {
  return merge(p, q, [](std::uint32_t a, std::uint32_t b) { return std::int64_t(a) - b; });
}

LampConfig lamp_neg(const LampConfig& p) { return lamp_sub(LampConfig(p.modulus()), p); }

LampConfig lamp_scale(const LampConfig& p, std::uint32_t unit) {
  LampConfig r(p.modulus());
  for (const auto& e : p.entries()) {
    r.set(e.index, static_cast<std::uint32_t>((std::uint64_t(e.value) * unit) % p.modulus()));
  }
  return r;
}

LampConfig lamp_shift(const LampConfig& p, std::int64_t j) {
  LampConfig r(p.modulus());
  for (const auto& e : p.entries()) r.set(e.index - j, e.value);
  return r;
}

LampConfig lamp_reflect(const LampConfig& p) {
  LampConfig r(p.modulus());
  for (const auto& e : p.entries()) r.set(-e.index, e.value);
  return r;
}

LampConfig lamp_restrict_below(const LampConfig& p, std::int64_t bound) {
  LampConfig r(p.modulus());
  for (const auto& e : p.entries()) {
    if (e.index < bound) r.set(e.index, e.value);
  }
  return r;
}

LampConfig lamp_restrict_at_or_above(const LampConfig& p, std::int64_t bound) {
  LampConfig r(p.modulus());
  for (const auto& e : p.entries()) {
    if (e.index >= bound) r.set(e.index, e.value);
  }
  return r;
}

std::optional<SuppGap> supp_gap(const LampConfig& p, const LampConfig& q) {
  require_same_modulus(p, q);
  const auto& a = p.entries();
  const auto& b = q.entries();

  // Lowest disagreement: walk forward until the sorted entry lists differ.
  std::optional<std::int64_t> lo;
  {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    if (i < a.size() && i < b.size()) {
      lo = std::min(a[i].index, b[i].index);
    } else if (i < a.size()) {
      lo = a[i].index;
    } else if (i < b.size()) {
      lo = b[i].index;
    }
  }
  if (!lo) return std::nullopt;

  std::int64_t hi = 0;
  {
    std::size_t i = a.size(), j = b.size();
    while (i > 0 && j > 0 && a[i - 1] == b[j - 1]) {
      --i;
      --j;
    }
    if (i > 0 && j > 0) {
      hi = std::max(a[i - 1].index, b[j - 1].index);
    } else if (i > 0) {
      hi = a[i - 1].index;
    } else {
      hi = b[j - 1].index;
    }
  }
  return SuppGap{*lo, hi, hi - *lo};
}

LampDelta lamp_delta(const LampConfig& p, const LampConfig& q) {
  const auto g = supp_gap(p, q);
  if (!g) return {BigInt(0), -1};
  return {ipow(p.modulus(), static_cast<std::uint64_t>(g->gap)), g->gap};
}

namespace {
SuppGap require_distinct(const LampConfig& p, const LampConfig& q, const char* what) {
  const auto g = supp_gap(p, q);
  if (!g) throw std::domain_error(std::string(what) + ": boundary metrics need distinct configs");
  return *g;
}
}  // namespace

Rational lamp_dl(const LampConfig& p, const LampConfig& q) {
  return rpow(p.modulus(), -require_distinct(p, q, "lamp_dl").l_plus);
}

Rational lamp_du(const LampConfig& p, const LampConfig& q) {
  return rpow(p.modulus(), require_distinct(p, q, "lamp_du").l_minus);
}

CoarseHeightInterval lamp_coarse_heights(const LampConfig& p, const LampConfig& q) {
  const auto g = require_distinct(p, q, "coarse_heights");
  CoarseHeightInterval h;
  h.base = p.modulus();
  h.t_low = Rational(-g.l_minus);
  h.t_high_base = Rational(-g.l_plus);
  h.approx_low = static_cast<double>(-g.l_minus);
  h.approx_high = static_cast<double>(-g.l_plus);
  return h;
}

}  // namespace lampqi
