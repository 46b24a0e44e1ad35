#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "lampqi/base_map.hpp"
#include "lampqi/bs_number.hpp"
#include "lampqi/lamp_config.hpp"
#include "lampqi/sol.hpp"
#include "lampqi/text_format.hpp"

using namespace lampqi;

namespace {

LampConfig L(const char* s, std::uint32_t n = 2) { return parse_lamp_config(s, n); }
BSNumber B(const char* s, std::uint32_t n = 2) { return parse_bs_number(s, n); }

std::vector<LampConfig> window_configs(std::uint32_t n, std::int64_t lo, std::int64_t hi) {
  const WindowCodec codec(n, lo, hi);
  std::vector<LampConfig> out;
  for (std::uint64_t c = 0; c < codec.size(); ++c) out.push_back(codec.decode(c));
  return out;
}

}  // namespace

TEST_CASE("lamp_add examples") {
  CHECK(lamp_add(L("0:1"), L("0:1")) == L(""));
  CHECK(lamp_add(L("0:1"), L("3:1")) == L("0:1,3:1"));
  CHECK(lamp_add(L("0:2", 3), L("0:2", 3)) == L("0:1", 3));
  CHECK_THROWS_AS(lamp_add(L("0:1"), L("0:1", 3)), std::domain_error);
}

TEST_CASE("lamp configs stay canonical") {
  const auto c = LampConfig::from_pairs(3, {{2, 4}, {0, 3}, {2, 2}});
  CHECK(c == L("", 3));  // 3 = 0 and 4 + 2 = 0 mod 3
  const auto d = LampConfig::from_pairs(3, {{5, 1}, {-1, 2}});
  REQUIRE(d.size() == 2);
  CHECK(d.entries()[0].index == -1);
  CHECK(d.at(7) == 0);
}

TEST_CASE("supp_gap examples") {
  auto g = supp_gap(L("0:1"), L(""));
  REQUIRE(g);
  CHECK(*g == SuppGap{0, 0, 0});
  g = supp_gap(L("0:1,3:1"), L(""));
  REQUIRE(g);
  CHECK(*g == SuppGap{0, 3, 3});
  CHECK(g->index_count() == 4);
  CHECK_FALSE(supp_gap(L("1:1"), L("1:1")));
}

TEST_CASE("lamp_delta and boundary metrics examples") {
  CHECK(lamp_delta(L("0:1"), L("")).delta == 1);
  CHECK(lamp_delta(L("0:1,3:1"), L("")).delta == 8);
  CHECK(lamp_delta(L("0:1,3:1"), L("")).gap == 3);
  CHECK(lamp_delta(L("2:1"), L("2:1")).delta == 0);
  CHECK(lamp_dl(L("0:1"), L("")) == 1);
  CHECK(lamp_du(L("0:1"), L("")) == 1);
  CHECK(lamp_dl(L("-2:1"), L("")) == 4);
  CHECK(lamp_du(L("-2:1"), L("")) == Rational(1, 4));
  CHECK(lamp_dl(L("0:1,3:1"), L("3:1")) == 1);
  CHECK(lamp_du(L("0:1,3:1"), L("3:1")) == 1);
  CHECK_THROWS_AS(lamp_dl(L("1:1"), L("1:1")), std::domain_error);
  CHECK_THROWS_AS(lamp_du(L("1:1"), L("1:1")), std::domain_error);
}

TEST_CASE("lamplighter coarse heights") {
  auto h = lamp_coarse_heights(L("0:1,3:1"), L(""));
  CHECK(h.t_low == -3);
  CHECK(h.t_high() == 0);
  CHECK(h.exact());
  h = lamp_coarse_heights(L("5:1"), L(""));
  CHECK(h.t_low == -5);
  CHECK(h.t_high() == -5);
  CHECK_THROWS_AS(lamp_coarse_heights(L(""), L("")), std::domain_error);
}

TEST_CASE("base group axioms hold exhaustively on small windows") {
  for (std::uint32_t n : {2u, 3u}) {
    const auto cs = window_configs(n, 0, n == 2 ? 4 : 3);
    const LampConfig zero(n);
    for (const auto& a : cs) {
      CHECK(lamp_add(a, zero) == a);
      CHECK(lamp_add(a, lamp_neg(a)) == zero);
      for (const auto& b : cs) {
        CHECK(lamp_add(a, b) == lamp_add(b, a));
        for (const auto& c : cs) CHECK(lamp_add(lamp_add(a, b), c) == lamp_add(a, lamp_add(b, c)));
      }
    }
  }
}

TEST_CASE("d_l, d_u are ultrametrics and delta = d_l d_u") {
  for (std::uint32_t n : {2u, 3u}) {
    const auto cs = window_configs(n, -2, n == 2 ? 3 : 1);
    for (const auto& p : cs) {
      for (const auto& q : cs) {
        if (p == q) continue;
        CHECK(Rational(lamp_delta(p, q).delta) == lamp_dl(p, q) * lamp_du(p, q));
        for (const auto& r : cs) {
          if (r == p || r == q) continue;
          CHECK(lamp_dl(p, q) <= std::max(lamp_dl(p, r), lamp_dl(r, q)));
          CHECK(lamp_du(p, q) <= std::max(lamp_du(p, r), lamp_du(r, q)));
        }
      }
    }
  }
}

TEST_CASE("lamp delta is translation invariant") {
  const auto cs = window_configs(2, 0, 5);
  for (const auto& p : cs) {
    for (const auto& q : cs) {
      for (const auto& c : {L("0:1"), L("1:1,4:1"), L("-3:1,7:1")}) {
        CHECK(lamp_delta(lamp_add(p, c), lamp_add(q, c)).delta == lamp_delta(p, q).delta);
      }
    }
  }
}

TEST_CASE("bs_normalize examples") {
  auto b = bs_normalize(12, 0, 2);
  CHECK(b.r() == 3);
  CHECK(b.k() == 2);
  b = bs_normalize(3, -2, 2);
  CHECK(b.r() == 3);
  CHECK(b.k() == -2);
  b = bs_normalize(0, 5, 2);
  CHECK(b.r() == 0);
  CHECK(b.k() == 0);
  b = bs_normalize(-18, 1, 3);
  CHECK(b.r() == -2);
  CHECK(b.k() == 3);
}

TEST_CASE("bs_delta examples") {
  CHECK(bs_delta(B("12"), B("0")) == 3);
  CHECK(bs_delta(B("3/4"), B("0")) == 3);
  CHECK(bs_delta(B("0.75"), B("0")) == 3);
  CHECK(bs_delta(B("5*2^-3"), B("5*2^-3")) == 0);
  CHECK(bs_delta(B("7"), B("1")) == 3);
}

TEST_CASE("bs_delta symmetries") {
  std::vector<BSNumber> xs;
  for (int r = -12; r <= 12; ++r) {
    for (int k = -2; k <= 2; ++k) xs.push_back(bs_normalize(r, k, 2));
  }
  const BSNumber c = B("5*2^-1");
  for (const auto& p : xs) {
    for (const auto& q : xs) {
      const BigInt d = bs_delta(p, q);
      CHECK(d == bs_delta(q, p));
      CHECK(d == bs_delta(bs_add(p, c), bs_add(q, c)));
      CHECK(d == bs_delta(bs_scale_pow(p, 3), bs_scale_pow(q, 3)));
      CHECK((d == 0) == (p == q));
    }
  }
}

TEST_CASE("bs arithmetic agrees with rationals") {
  for (int r = -9; r <= 9; ++r) {
    for (int k = -3; k <= 3; ++k) {
      const BSNumber a = bs_normalize(r, k, 3), b = bs_normalize(7 - r, 1 - k, 3);
      CHECK(bs_add(a, b).to_rational() == a.to_rational() + b.to_rational());
      CHECK(bs_sub(a, b).to_rational() == a.to_rational() - b.to_rational());
      CHECK(bs_from_rational(a.to_rational(), 3) == a);
    }
  }
  CHECK_THROWS_AS(bs_from_rational(Rational(1, 3), 2), std::domain_error);
  CHECK(bs_from_rational(Rational(5, 6), 6) == bs_normalize(5, -1, 6));
}

TEST_CASE("bs coarse heights") {
  const auto h = bs_coarse_heights(B("12"), B("0"));
  CHECK(h.t_low == 2);
  CHECK(h.t_high_base == 2);
  CHECK(h.t_high_log_arg == 3);
  CHECK_FALSE(h.exact());
  CHECK(h.approx_high == doctest::Approx(2 + std::log2(3.0)));
  CHECK(bs_coarse_heights(B("8"), B("0")).exact());
  CHECK_THROWS_AS(bs_coarse_heights(B("1"), B("1")), std::domain_error);
}

namespace {

// Independent oracle: the primitive form with alpha > 0 found by searching
// small coefficients for f(Av) = f(v) on (1,0), (0,1), (1,1).
QuadraticForm brute_force_form(const IntMatrix2& A) {
  for (std::int64_t bound = 1; bound <= 12; ++bound) {
    for (std::int64_t a = 1; a <= bound; ++a) {
      for (std::int64_t b = -bound; b <= bound; ++b) {
        for (std::int64_t c = -bound; c <= bound; ++c) {
          auto f = [&](std::int64_t x, std::int64_t y) { return a * x * x + b * x * y + c * y * y; };
          bool inv = true;
          for (auto [x, y] : {std::pair<std::int64_t, std::int64_t>{1, 0}, {0, 1}, {1, 1}}) {
            const std::int64_t X = A.a * x + A.b * y, Y = A.c * x + A.d * y;
            inv = inv && f(X, Y) == f(x, y);
          }
          if (inv && std::gcd(std::gcd(a, std::abs(b)), std::abs(c)) == 1) return {a, b, c};
        }
      }
    }
  }
  return {};
}

}  // namespace

TEST_CASE("sol_invariant_form matches the brute-force oracle") {
  for (const IntMatrix2& A : {IntMatrix2{2, 1, 1, 1}, IntMatrix2{3, 1, 2, 1}, IntMatrix2{1, 1, 1, 2},
                              IntMatrix2{5, 2, 2, 1}, IntMatrix2{-3, 1, -1, 0}}) {
    const auto ctx = sol_invariant_form(A);
    CHECK(ctx.form == brute_force_form(A));
  }
  CHECK(sol_invariant_form({2, 1, 1, 1}).form == QuadraticForm{1, -1, -1});
  CHECK(sol_invariant_form({3, 1, 2, 1}).form == QuadraticForm{2, -2, -1});
}

TEST_CASE("sol_invariant_form rejects bad matrices") {
  CHECK_THROWS_AS(sol_invariant_form({1, 1, 1, 0}), std::domain_error);  // det -1
  CHECK_THROWS_AS(sol_invariant_form({1, 1, 0, 1}), std::domain_error);  // parabolic
  CHECK_THROWS_AS(sol_invariant_form({0, -1, 1, 0}), std::domain_error);  // elliptic
}

TEST_CASE("sol_delta examples and invariance") {
  const auto ctx = sol_invariant_form({2, 1, 1, 1});
  CHECK(sol_delta(ctx, {1, 0}, {}) == 1);
  CHECK(sol_delta(ctx, {1, 2}, {}) == 5);
  CHECK(sol_delta(ctx, {5, 3}, {}) == 1);
  for (std::int64_t x = -6; x <= 6; ++x) {
    for (std::int64_t y = -6; y <= 6; ++y) {
      const SolVector p{x, y}, q{2, -1};
      CHECK(sol_delta(ctx, ctx.A * p, ctx.A * q) == sol_delta(ctx, p, q));
      CHECK(sol_delta(ctx, p + SolVector{3, 4}, q + SolVector{3, 4}) == sol_delta(ctx, p, q));
      CHECK((sol_delta(ctx, p, q) == 0) == (p == q));
    }
  }
}

TEST_CASE("sol delta tracks the eigen-coordinate product up to a constant") {
  const auto ctx = sol_invariant_form({2, 1, 1, 1});
  double ratio = 0;
  for (const SolVector v : {SolVector{1, 0}, SolVector{1, 2}, SolVector{3, -1}, SolVector{4, 7}}) {
    const auto e = sol_eigen_coordinates(ctx, v);
    const double r = std::abs(e[0] * e[1]) / sol_delta(ctx, v, {}).convert_to<double>();
    if (ratio == 0) ratio = r;
    CHECK(r == doctest::Approx(ratio));
  }
  const auto h = sol_coarse_heights(ctx, {1, 2}, {});
  CHECK(h.diagnostic_only);
  CHECK_FALSE(h.exact());
}

TEST_CASE("text formats round trip") {
  CHECK(format_lamp_config(L("3:1,0:1")) == "0:1,3:1");
  CHECK(format_lamp_config(L("")) == "");
  CHECK(format_bs_number(B("12")) == "3*2^2");
  CHECK(format_bs_number(B("3*2^-2")) == "3*2^-2");
  CHECK(format_bs_number(B("0")) == "0");
  CHECK(B("-3/4") == bs_normalize(-3, -2, 2));
  CHECK(parse_sol_vector("5,-3") == SolVector{5, -3});
  CHECK(format_sol_vector({5, -3}) == "5,-3");
  CHECK(parse_matrix("2,1,1,1") == IntMatrix2{2, 1, 1, 1});
}

TEST_CASE("malformed literals report positions") {
  auto position_of = [](auto fn) -> std::size_t {
    try {
      fn();
    } catch (const ParseError& e) {
      return e.position();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(position_of([] { L("0:1,x"); }) == 4);
  CHECK(position_of([] { L("0:2"); }) == 2);
  CHECK(position_of([] { L("0:1,0:1"); }) == 4);
  CHECK(position_of([] { B("3*5^2"); }) == 2);
  CHECK(position_of([] { parse_sol_vector("1;2"); }) == 1);
  CHECK(position_of([] { parse_matrix("1,2,3"); }) == 5);
  CHECK(position_of([] { B("1/3"); }) == 2);
}
