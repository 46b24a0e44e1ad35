#include "lampqi/arith.hpp"

#include <numeric>
#include <stdexcept>

namespace lampqi {

BigInt ipow(std::uint32_t base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

Rational rpow(std::uint32_t base, std::int64_t exp) {
  if (exp >= 0) return Rational(ipow(base, static_cast<std::uint64_t>(exp)));
  return Rational(BigInt(1), ipow(base, static_cast<std::uint64_t>(-exp)));
}

std::int64_t floor_log(const BigInt& value, std::uint32_t base) {
  if (base < 2) throw std::domain_error("floor_log: base must be >= 2");
  if (value < 1) return -1;
  std::int64_t e = 0;
  BigInt p = base;
  while (p <= value) {
    p *= base;
    ++e;
  }
  return e;
}

std::int64_t ceil_log(const BigInt& value, std::uint32_t base) {
  if (base < 2) throw std::domain_error("ceil_log: base must be >= 2");
  std::int64_t e = 0;
  BigInt p = 1;
  while (p < value) {
    p *= base;
    ++e;
  }
  return e;
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t n) {
  a %= n;
  for (std::uint32_t x = 1; x < n; ++x) {
    if ((static_cast<std::uint64_t>(a) * x) % n == 1) return x;
  }
  return 0;
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace lampqi
