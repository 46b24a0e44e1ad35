#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lampqi/arith.hpp"
#include "lampqi/coarse_height.hpp"

namespace lampqi {

/// A finitely supported function Z -> Z_n: an element of the base group of
/// the lamplighter group L_n. Entries are kept sorted by index and never hold
/// the value 0, so equal configurations have equal representations.
class LampConfig {
 public:
  struct Entry {
    std::int64_t index;
    std::uint32_t value;
    friend bool operator==(const Entry&, const Entry&) = default;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };

  explicit LampConfig(std::uint32_t modulus = 2);

  /// Builds a canonical config; values are reduced mod n, repeated indices
  /// are summed.
  static LampConfig from_pairs(std::uint32_t modulus,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs);

  /// The lamp s at index i and nothing else.
  static LampConfig single(std::uint32_t modulus, std::int64_t index, std::uint32_t value = 1);

  std::uint32_t modulus() const { return modulus_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  std::uint32_t at(std::int64_t index) const;
  void set(std::int64_t index, std::uint32_t value);

  /// Smallest and largest index carrying a lamp; nullopt for the identity.
  std::optional<std::pair<std::int64_t, std::int64_t>> hull() const;

  friend bool operator==(const LampConfig&, const LampConfig&) = default;
  friend std::strong_ordering operator<=>(const LampConfig& a, const LampConfig& b);

 private:
  std::uint32_t modulus_;
  std::vector<Entry> entries_;
};

std::size_t hash_value(const LampConfig& c);

struct LampConfigHash {
  std::size_t operator()(const LampConfig& c) const { return hash_value(c); }
};

/// Componentwise sum mod n. Throws std::domain_error on modulus mismatch.
LampConfig lamp_add(const LampConfig& p, const LampConfig& q);
LampConfig lamp_sub(const LampConfig& p, const LampConfig& q);
LampConfig lamp_neg(const LampConfig& p);
LampConfig lamp_scale(const LampConfig& p, std::uint32_t unit);

/// (x_i) -> (x_{i+j}); the lamp at index i moves to i - j.
LampConfig lamp_shift(const LampConfig& p, std::int64_t j);

/// (x_i) -> (x_{-i}).
LampConfig lamp_reflect(const LampConfig& p);

/// Entries with index < bound (below) or >= bound (at_or_above).
LampConfig lamp_restrict_below(const LampConfig& p, std::int64_t bound);
LampConfig lamp_restrict_at_or_above(const LampConfig& p, std::int64_t bound);

struct SuppGap {
  std::int64_t l_plus;   // smallest index where the configs disagree
  std::int64_t l_minus;  // largest index where the configs disagree
  std::int64_t gap;      // l_minus - l_plus

  /// Number of indices in the disagreement interval (gap + 1).
  std::int64_t index_count() const { return gap + 1; }
  friend bool operator==(const SuppGap&, const SuppGap&) = default;
};

/// Hull of supp(p - q); nullopt exactly when p == q.
std::optional<SuppGap> supp_gap(const LampConfig& p, const LampConfig& q);

struct LampDelta {
  BigInt delta;      // n^gap, or 0 when p == q
  std::int64_t gap;  // -1 when p == q
};

LampDelta lamp_delta(const LampConfig& p, const LampConfig& q);

/// Lower boundary metric n^{-l_+}. Throws std::domain_error when p == q.
Rational lamp_dl(const LampConfig& p, const LampConfig& q);

/// Upper boundary metric n^{l_-}. Throws std::domain_error when p == q.
Rational lamp_du(const LampConfig& p, const LampConfig& q);

/// [-l_-, -l_+] in base-n units. Throws std::domain_error when p == q.
CoarseHeightInterval lamp_coarse_heights(const LampConfig& p, const LampConfig& q);

}  // namespace lampqi

template <>
struct std::hash<lampqi::LampConfig> {
  std::size_t operator()(const lampqi::LampConfig& c) const { return lampqi::hash_value(c); }
};
