#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lampqi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^exp for exp >= 0.
BigInt ipow(std::uint32_t base, std::uint64_t exp);

/// base^exp as an exact rational; negative exponents allowed.
Rational rpow(std::uint32_t base, std::int64_t exp);

/// Largest e with base^e <= value, or -1 when value < 1.
std::int64_t floor_log(const BigInt& value, std::uint32_t base);

/// Smallest e >= 0 with base^e >= value.
std::int64_t ceil_log(const BigInt& value, std::uint32_t base);

bool is_prime(std::uint32_t n);

/// Multiplicative inverse of a modulo n, or 0 when gcd(a, n) != 1.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t n);

std::string to_string(const BigInt& v);

/// "p/q" or "p" when q == 1.
std::string to_string(const Rational& v);

}  // namespace lampqi
