#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "lampqi/arith.hpp"
#include "lampqi/coarse_height.hpp"

namespace lampqi {

/// A point of the base group Z^2 of a lattice in SOL.
struct SolVector {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const SolVector&, const SolVector&) = default;
  friend auto operator<=>(const SolVector&, const SolVector&) = default;
};

inline SolVector operator+(SolVector a, SolVector b) { return {a.x + b.x, a.y + b.y}; }
inline SolVector operator-(SolVector a, SolVector b) { return {a.x - b.x, a.y - b.y}; }
inline SolVector operator-(SolVector a) { return {-a.x, -a.y}; }
inline SolVector operator*(std::int64_t c, SolVector a) { return {c * a.x, c * a.y}; }

/// Row-major 2x2 integer matrix [[a, b], [c, d]].
struct IntMatrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  std::int64_t det() const { return a * d - b * c; }
  std::int64_t trace() const { return a + d; }
  SolVector operator*(SolVector v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

/// Binary quadratic form alpha x^2 + beta xy + gamma y^2.
struct QuadraticForm {
  std::int64_t alpha = 0, beta = 0, gamma = 0;
  BigInt operator()(SolVector v) const;
  BigInt discriminant() const;
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Hyperbolic A in SL(2,Z) with its A-invariant primitive form. The eigen
/// data is only used for diagnostic coarse heights; every pass/fail decision
/// goes through the exact form.
struct SolContext {
  IntMatrix2 A;
  QuadraticForm form;
  double lambda = 0.0;                  // expanding eigenvalue, |lambda| > 1
  std::array<double, 2> expanding{};    // unit eigenvector for lambda
  std::array<double, 2> contracting{};  // unit eigenvector for 1/lambda
};

/// Solves A^T M A = M for the symmetric M and scales it to a primitive
/// integer form with alpha > 0. Throws std::domain_error if det A != 1,
/// |tr A| <= 2, or the discriminant is a perfect square.
SolContext sol_invariant_form(const IntMatrix2& A);

/// |f(p - q)|: the product of eigen-coordinate differences up to a constant
/// fixed by the context.
BigInt sol_delta(const SolContext& ctx, SolVector p, SolVector q);

/// Eigen-coordinates (expanding, contracting) of v.
std::array<double, 2> sol_eigen_coordinates(const SolContext& ctx, SolVector v);

/// [-ln|dy|, ln|dx|] in eigen-coordinates; flagged diagnostic-only.
CoarseHeightInterval sol_coarse_heights(const SolContext& ctx, SolVector p, SolVector q);

}  // namespace lampqi
