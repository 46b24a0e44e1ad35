#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lampqi/bs_number.hpp"
#include "lampqi/lamp_config.hpp"
#include "lampqi/report.hpp"
#include "lampqi/sol.hpp"
#include "lampqi/text_format.hpp"

namespace lampqi {

// Family descriptors bundle the group law, delta and text format of one base
// group so that quadrilateral code is written once.

struct LampFamily {
  using Point = LampConfig;
  static constexpr const char* name = "lamplighter";
  std::uint32_t n = 2;

  Point zero() const { return LampConfig(n); }
  Point add(const Point& a, const Point& b) const { return lamp_add(a, b); }
  Point sub(const Point& a, const Point& b) const { return lamp_sub(a, b); }
  BigInt delta(const Point& a, const Point& b) const { return lamp_delta(a, b).delta; }
  std::string format(const Point& p) const { return format_lamp_config(p); }
  Point parse(std::string_view s) const { return parse_lamp_config(s, n); }
};

struct BSFamily {
  using Point = BSNumber;
  static constexpr const char* name = "baumslag-solitar";
  std::uint32_t n = 2;

  Point zero() const { return BSNumber(n); }
  Point add(const Point& a, const Point& b) const { return bs_add(a, b); }
  Point sub(const Point& a, const Point& b) const { return bs_sub(a, b); }
  BigInt delta(const Point& a, const Point& b) const { return bs_delta(a, b); }
  std::string format(const Point& p) const { return format_bs_number(p); }
  Point parse(std::string_view s) const { return parse_bs_number(s, n); }
};

struct SolFamily {
  using Point = SolVector;
  static constexpr const char* name = "sol";
  SolContext ctx;

  Point zero() const { return {}; }
  Point add(const Point& a, const Point& b) const { return a + b; }
  Point sub(const Point& a, const Point& b) const { return a - b; }
  BigInt delta(const Point& a, const Point& b) const { return sol_delta(ctx, a, b); }
  std::string format(const Point& p) const { return format_sol_vector(p); }
  Point parse(std::string_view s) const { return parse_sol_vector(s); }
};

/// Four base-group points in the matrix layout [[p1, p2], [p4, p3]]: sides
/// join cyclically consecutive points, diagonals are (p1, p3) and (p2, p4).
template <class P>
struct Quad {
  std::array<P, 4> p;
  friend bool operator==(const Quad&, const Quad&) = default;
};

/// Thresholds on delta. All three deltas are integer valued, so both are
/// integers.
struct QuadParams {
  BigInt epsilon;
  BigInt M;
};

enum class QuadClass { not_quadrilateral, quadrilateral, parallelogram };

const char* to_string(QuadClass c);

struct Classification {
  QuadClass kind = QuadClass::not_quadrilateral;
  std::string reason;  // empty unless kind == not_quadrilateral
  std::array<BigInt, 4> sides;      // delta(p_i, p_{i+1})
  std::array<BigInt, 2> diagonals;  // delta(p1, p3), delta(p2, p4)
};

template <class F>
bool is_parallelogram_relation(const F& fam, const Quad<typename F::Point>& q) {
  return fam.add(q.p[0], q.p[2]) == fam.add(q.p[1], q.p[3]);
}

template <class F>
Classification classify(const F& fam, const Quad<typename F::Point>& q, const QuadParams& params) {
  Classification c;
  for (int i = 0; i < 4; ++i) c.sides[i] = fam.delta(q.p[i], q.p[(i + 1) % 4]);
  c.diagonals[0] = fam.delta(q.p[0], q.p[2]);
  c.diagonals[1] = fam.delta(q.p[1], q.p[3]);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (q.p[i] == q.p[j]) {
        c.reason = "points p" + std::to_string(i + 1) + " and p" + std::to_string(j + 1) + " coincide";
        return c;
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    if (c.sides[i] > params.epsilon) {
      c.reason = "side p" + std::to_string(i + 1) + "p" + std::to_string((i + 1) % 4 + 1) +
                 " has delta " + to_string(c.sides[i]) + " > epsilon";
      return c;
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (c.diagonals[i] < params.M) {
      c.reason = std::string(i == 0 ? "diagonal p1p3" : "diagonal p2p4") + " has delta " +
                 to_string(c.diagonals[i]) + " < M";
      return c;
    }
  }
  c.kind = is_parallelogram_relation(fam, q) ? QuadClass::parallelogram : QuadClass::quadrilateral;
  return c;
}

/// (p1, p2, p3, p4) -> (p2, p3, p4, p1).
template <class P>
Quad<P> rotate(const Quad<P>& q) {
  return Quad<P>{{q.p[1], q.p[2], q.p[3], q.p[0]}};
}

/// Transpose of the matrix layout: (p1, p2, p3, p4) -> (p1, p4, p3, p2).
template <class P>
Quad<P> reflect(const Quad<P>& q) {
  return Quad<P>{{q.p[0], q.p[3], q.p[2], q.p[1]}};
}

template <class F>
Json quad_to_json(const F& fam, const Quad<typename F::Point>& q) {
  return Json{{"p1", fam.format(q.p[0])},
              {"p2", fam.format(q.p[1])},
              {"p3", fam.format(q.p[2])},
              {"p4", fam.format(q.p[3])}};
}

/// A finite candidate generating set Sigma of a base group.
template <class P>
struct GeneratorSet {
  std::vector<P> elements;
};

/// Throws std::invalid_argument if the set is empty or has duplicates.
template <class P>
void validate(const GeneratorSet<P>& sigma) {
  if (sigma.elements.empty()) throw std::invalid_argument("generator set is empty");
  for (std::size_t i = 0; i < sigma.elements.size(); ++i) {
    for (std::size_t j = i + 1; j < sigma.elements.size(); ++j) {
      if (sigma.elements[i] == sigma.elements[j]) {
        throw std::invalid_argument("generator set has a repeated element");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Verifiers

/// How the lamplighter quadrilateral hypotheses measure |supp(p - q)|.
/// gap: l_- - l_+, so delta = n^gap. index_count: the number of indices in
/// [l_+, l_-], under which a single lamp has support size 1.
enum class SupportConvention { gap, index_count };

/// full: all four sides and both diagonals. relaxed: only the sides p1p2 and
/// p1p4 together with both diagonals.
enum class Hypotheses { full, relaxed };

struct LampClaimOptions {
  std::uint32_t n = 2;
  int S = 1;
  int window = 8;
  SupportConvention convention = SupportConvention::index_count;
  Hypotheses hypotheses = Hypotheses::full;
  unsigned chunks = 1;
};

/// Exhaustive check that every quadrilateral with p1 = {} and the other
/// corners supported in [0, window), sides of support size <= S and
/// diagonals of support size >= 2S, satisfies p1 + p3 = p2 + p4.
VerifyReport verify_lamp_claim(const LampClaimOptions& opt);

struct TabackOptions {
  std::uint32_t n = 2;
  BigInt epsilon = 1;
  BigInt M = 4;
  BigInt numerator_bound = 1024;
  std::int64_t exp_lo = -5;
  std::int64_t exp_hi = 5;
  unsigned chunks = 1;
};

/// Every (eps, M)-quadrilateral in Z[1/n] with p1 = 0 and all corners of the
/// form r n^k, |r| <= bound, k in [exp_lo, exp_hi], is a parallelogram. Also
/// counts quadrilaterals whose side decompositions r_i n^{k_i} break
/// k_1 = k_3, k_2 = k_4, r_1 = -r_3, r_2 = -r_4.
VerifyReport verify_taback(const TabackOptions& opt);

struct SchwartzOptions {
  BigInt epsilon = 1;
  BigInt M = 40;
  std::int64_t box = 50;
  unsigned chunks = 1;
};

/// Every (eps, M)-quadrilateral with p1 = (0,0) and corners in
/// [-box, box]^2 is a parallelogram; vacuous when none is found.
VerifyReport verify_schwartz(const SolContext& ctx, const SchwartzOptions& opt);

struct SchwartzCalibration {
  BigInt M_star;                     // least M with no violations in the box
  std::uint64_t side_quads = 0;      // corner sets with all four sides <= eps
  std::uint64_t non_parallelograms = 0;
  VerifyReport at_M_star;            // verify_schwartz rerun at M_star
};

/// Sweeps M: M* = 1 + the largest min-diagonal delta of any non-parallelogram
/// whose sides are <= eps.
SchwartzCalibration calibrate_schwartz(const SolContext& ctx, const SchwartzOptions& opt);

/// Signed r and exponent k of p - q; used to expose side decompositions.
Json bs_side_decomposition(const BSNumber& p, const BSNumber& q);

}  // namespace lampqi
