#include "lampqi/sol.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lampqi {

BigInt QuadraticForm::operator()(SolVector v) const {
  const BigInt x = v.x, y = v.y;
  return BigInt(alpha) * x * x + BigInt(beta) * x * y + BigInt(gamma) * y * y;
}

BigInt QuadraticForm::discriminant() const {
  return BigInt(beta) * beta - BigInt(4) * alpha * gamma;
}

namespace {

bool is_square(const BigInt& v) {
  if (v < 0) return false;
  const BigInt r = boost::multiprecision::sqrt(v);
  return r * r == v;
}

std::array<double, 2> unit(double x, double y) {
  const double len = std::hypot(x, y);
  return {x / len, y / len};
}

// Eigenvector of [[a,b],[c,d]] for eigenvalue mu.
std::array<double, 2> eigenvector(const IntMatrix2& A, double mu) {
  if (A.b != 0) return unit(static_cast<double>(A.b), mu - static_cast<double>(A.a));
  return unit(mu - static_cast<double>(A.d), static_cast<double>(A.c));
}

}  // namespace

SolContext sol_invariant_form(const IntMatrix2& A) {
  if (A.det() != 1) {
    throw std::domain_error("matrix must have determinant 1 (got " + std::to_string(A.det()) + ")");
  }
  if (std::llabs(A.trace()) <= 2) {
    throw std::domain_error("matrix is not hyperbolic: |trace| = " +
                            std::to_string(std::llabs(A.trace())) + " <= 2");
  }

  // f(Av) = f(v) is linear in (alpha, beta, gamma); T maps the coefficient
  // vector of f to that of f o A, and the form spans ker(T - I).
  const BigInt a = A.a, b = A.b, c = A.c, d = A.d;
  const BigInt T[3][3] = {
      {a * a, a * c, c * c},
      {2 * a * b, a * d + b * c, 2 * c * d},
      {b * b, b * d, d * d},
  };
  BigInt R[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) R[i][j] = T[i][j] - (i == j ? 1 : 0);
  }

  // The kernel of a rank-2 3x3 matrix is spanned by the cross product of any
  // two independent rows.
  std::array<BigInt, 3> k{};
  bool found = false;
  for (int i = 0; i < 3 && !found; ++i) {
    for (int j = i + 1; j < 3 && !found; ++j) {
      k = {R[i][1] * R[j][2] - R[i][2] * R[j][1], R[i][2] * R[j][0] - R[i][0] * R[j][2],
           R[i][0] * R[j][1] - R[i][1] * R[j][0]};
      found = k[0] != 0 || k[1] != 0 || k[2] != 0;
    }
  }
  if (!found) throw std::domain_error("invariant form equation has no one-dimensional solution");

  BigInt g = 0;
  for (const auto& v : k) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(v));
  for (auto& v : k) v /= g;
  const BigInt& lead = k[0] != 0 ? k[0] : (k[1] != 0 ? k[1] : k[2]);
  if (lead < 0) {
    for (auto& v : k) v = -v;
  }

  SolContext ctx;
  ctx.A = A;
  ctx.form = {k[0].convert_to<std::int64_t>(), k[1].convert_to<std::int64_t>(),
              k[2].convert_to<std::int64_t>()};
  if (is_square(ctx.form.discriminant())) {
    throw std::domain_error("invariant form has square discriminant; it represents zero");
  }

  const double tr = static_cast<double>(A.trace());
  const double root = std::sqrt(tr * tr - 4.0);
  const double l1 = (tr + root) / 2.0;
  const double l2 = (tr - root) / 2.0;
  ctx.lambda = std::fabs(l1) > 1.0 ? l1 : l2;
  const double mu = 1.0 / ctx.lambda;
  ctx.expanding = eigenvector(A, ctx.lambda);
  ctx.contracting = eigenvector(A, mu);
  return ctx;
}

BigInt sol_delta(const SolContext& ctx, SolVector p, SolVector q) {
  return boost::multiprecision::abs(ctx.form(p - q));
}

std::array<double, 2> sol_eigen_coordinates(const SolContext& ctx, SolVector v) {
  // Solve v = s * expanding + t * contracting.
  const auto& e = ctx.expanding;
  const auto& f = ctx.contracting;
  const double det = e[0] * f[1] - e[1] * f[0];
  const double vx = static_cast<double>(v.x), vy = static_cast<double>(v.y);
  return {(vx * f[1] - vy * f[0]) / det, (e[0] * vy - e[1] * vx) / det};
}

CoarseHeightInterval sol_coarse_heights(const SolContext& ctx, SolVector p, SolVector q) {
  if (p == q) throw std::domain_error("coarse_heights: p == q");
  const auto c = sol_eigen_coordinates(ctx, p - q);
  CoarseHeightInterval h;
  h.base = 0;
  h.diagnostic_only = true;
  h.approx_low = -std::log(std::fabs(c[1]));
  h.approx_high = std::log(std::fabs(c[0]));
  return h;
}

}  // namespace lampqi
