#include "lampqi/bs_number.hpp"

#include <cmath>
#include <stdexcept>

namespace lampqi {

namespace {
void require_same_base(const BSNumber& a, const BSNumber& b) {
  if (a.base() != b.base()) {
    throw std::domain_error("Z[1/n] base mismatch: " + std::to_string(a.base()) + " vs " +
                            std::to_string(b.base()));
  }
}
}  // namespace

BSNumber::BSNumber(std::uint32_t n) : r_(0), n_(n) {
  if (n < 2) throw std::domain_error("Z[1/n] base must be >= 2");
}

Rational BSNumber::to_rational() const { return Rational(r_) * rpow(n_, k_); }

std::strong_ordering operator<=>(const BSNumber& a, const BSNumber& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  const Rational x = a.to_rational();
  const Rational y = b.to_rational();
  if (x < y) return std::strong_ordering::less;
  if (y < x) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BSNumber bs_normalize(BigInt numerator, std::int64_t exponent, std::uint32_t n) {
  BSNumber out(n);
  if (numerator == 0) return out;
  const BigInt base = n;
  while (numerator % base == 0) {
    numerator /= base;
    ++exponent;
  }
  out.r_ = std::move(numerator);
  out.k_ = exponent;
  return out;
}

BSNumber bs_from_rational(const Rational& q, std::uint32_t n) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  std::int64_t exponent = 0;
  while (den != 1) {
    if (boost::multiprecision::gcd(den, BigInt(n)) == 1) {
      throw std::domain_error("rational " + to_string(q) + " is not in Z[1/" +
                              std::to_string(n) + "]");
    }
    num *= n;
    --exponent;
    const BigInt d = boost::multiprecision::gcd(num, den);
    num /= d;
    den /= d;
  }
  return bs_normalize(num, exponent, n);
}

BSNumber bs_add(const BSNumber& a, const BSNumber& b) {
  require_same_base(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t k = std::min(a.k(), b.k());
  const BigInt x = a.r() * ipow(a.base(), static_cast<std::uint64_t>(a.k() - k));
  const BigInt y = b.r() * ipow(b.base(), static_cast<std::uint64_t>(b.k() - k));
  return bs_normalize(x + y, k, a.base());
}

BSNumber bs_neg(const BSNumber& a) { return bs_normalize(-a.r(), a.k(), a.base()); }

BSNumber bs_sub(const BSNumber& a, const BSNumber& b) { return bs_add(a, bs_neg(b)); }

BSNumber bs_scale_pow(const BSNumber& a, std::int64_t j) {
  if (a.is_zero()) return a;
  return bs_normalize(a.r(), a.k() + j, a.base());
}

BigInt bs_delta(const BSNumber& p, const BSNumber& q) {
  return boost::multiprecision::abs(bs_sub(p, q).r());
}

CoarseHeightInterval bs_coarse_heights(const BSNumber& p, const BSNumber& q) {
  const BSNumber d = bs_sub(p, q);
  if (d.is_zero()) throw std::domain_error("coarse_heights: p == q");
  CoarseHeightInterval h;
  h.base = p.base();
  h.t_low = Rational(d.k());
  h.t_high_base = Rational(d.k());
  h.t_high_log_arg = boost::multiprecision::abs(d.r());
  h.approx_low = static_cast<double>(d.k());
  h.approx_high = static_cast<double>(d.k()) +
                  std::log(h.t_high_log_arg.convert_to<double>()) / std::log(double(p.base()));
  return h;
}

}  // namespace lampqi
