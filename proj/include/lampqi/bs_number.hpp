#pragma once

#include <compare>
#include <cstdint>

#include "lampqi/arith.hpp"
#include "lampqi/coarse_height.hpp"

namespace lampqi {

/// An element r * n^k of Z[1/n] in normalized form: n does not divide r,
/// and zero is stored as r = 0, k = 0. Normalization makes the n-adic
/// valuation (k) and the prime-to-n part (r) directly readable.
class BSNumber {
 public:
  explicit BSNumber(std::uint32_t n = 2);

  const BigInt& r() const { return r_; }
  std::int64_t k() const { return k_; }
  std::uint32_t base() const { return n_; }
  bool is_zero() const { return r_ == 0; }

  Rational to_rational() const;

  friend bool operator==(const BSNumber&, const BSNumber&) = default;
  friend std::strong_ordering operator<=>(const BSNumber& a, const BSNumber& b);

 private:
  friend BSNumber bs_normalize(BigInt numerator, std::int64_t exponent, std::uint32_t n);
  BigInt r_;
  std::int64_t k_ = 0;
  std::uint32_t n_;
};

/// Canonical r * n^k representing numerator * n^exponent.
BSNumber bs_normalize(BigInt numerator, std::int64_t exponent, std::uint32_t n);

/// The element of Z[1/n] equal to the rational q; throws std::domain_error if
/// the denominator of q has a prime factor not dividing n.
BSNumber bs_from_rational(const Rational& q, std::uint32_t n);

BSNumber bs_add(const BSNumber& a, const BSNumber& b);
BSNumber bs_sub(const BSNumber& a, const BSNumber& b);
BSNumber bs_neg(const BSNumber& a);

/// a * n^j.
BSNumber bs_scale_pow(const BSNumber& a, std::int64_t j);

/// |r| where p - q = r n^k normalized; zero exactly when p == q.
BigInt bs_delta(const BSNumber& p, const BSNumber& q);

/// [k, k + log_n |r|] for p - q = r n^k. Throws std::domain_error if p == q.
CoarseHeightInterval bs_coarse_heights(const BSNumber& p, const BSNumber& q);

}  // namespace lampqi
