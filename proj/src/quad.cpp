#include "lampqi/quad.hpp"

#include <stdexcept>

#include "lampqi/parallel.hpp"

namespace lampqi {

const char* to_string(QuadClass c) {
  switch (c) {
    case QuadClass::not_quadrilateral: return "NotQuadrilateral";
    case QuadClass::quadrilateral: return "Quadrilateral";
    case QuadClass::parallelogram: return "Parallelogram";
  }
  return "?";
}

namespace {

const char* to_string(SupportConvention c) {
  return c == SupportConvention::gap ? "gap" : "index_count";
}

const char* to_string(Hypotheses h) { return h == Hypotheses::full ? "full" : "relaxed"; }

// Support size of p - q under the chosen convention, or -1 when p == q.
std::int64_t support_size(const LampConfig& p, const LampConfig& q, SupportConvention c) {
  const auto g = supp_gap(p, q);
  if (!g) return -1;
  return c == SupportConvention::gap ? g->gap : g->index_count();
}

// Nonzero configs inside [0, window) whose hull spans at most max_len indices.
std::vector<LampConfig> short_configs(std::uint32_t n, int window, int max_len) {
  std::vector<LampConfig> out;
  for (int start = 0; start < window; ++start) {
    for (int len = 1; len <= max_len && start + len <= window; ++len) {
      // Endpoints carry nonzero values, the interior is arbitrary.
      const int interior = std::max(0, len - 2);
      std::uint64_t interior_count = 1;
      for (int i = 0; i < interior; ++i) interior_count *= n;
      const std::uint32_t end_choices = len == 1 ? 1 : n - 1;
      for (std::uint32_t a = 1; a < n; ++a) {
        for (std::uint32_t b = 0; b < end_choices; ++b) {
          for (std::uint64_t mid = 0; mid < interior_count; ++mid) {
            LampConfig c(n);
            c.set(start, a);
            if (len > 1) c.set(start + len - 1, b + 1);
            std::uint64_t m = mid;
            for (int i = 0; i < interior; ++i) {
              c.set(start + 1 + i, static_cast<std::uint32_t>(m % n));
              m /= n;
            }
            out.push_back(std::move(c));
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LampConfig> all_configs(std::uint32_t n, int window) {
  std::uint64_t total = 1;
  for (int i = 0; i < window; ++i) {
    total *= n;
    if (total > (1ULL << 24)) throw std::invalid_argument("window too large for full enumeration");
  }
  std::vector<LampConfig> out;
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    LampConfig c(n);
    std::uint64_t m = code;
    for (int i = 0; i < window; ++i) {
      c.set(i, static_cast<std::uint32_t>(m % n));
      m /= n;
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ChunkResult {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t relation_failures = 0;
  Json witnesses = Json::array();
};

void merge(VerifyReport& r, const std::vector<ChunkResult>& parts, std::uint64_t* relation_failures) {
  for (const auto& part : parts) {
    r.count_checked += part.checked;
    r.violation_count += part.violations;
    if (relation_failures) *relation_failures += part.relation_failures;
    for (const auto& w : part.witnesses) {
      if (r.violations.size() < violation_cap) r.violations.push_back(w);
    }
  }
  r.vacuous = r.count_checked == 0;
}

void record(ChunkResult& out, Json witness) {
  ++out.violations;
  if (out.witnesses.size() < violation_cap) out.witnesses.push_back(std::move(witness));
}

}  // namespace

VerifyReport verify_lamp_claim(const LampClaimOptions& opt) {
  if (opt.n < 2) throw std::invalid_argument("n must be at least 2");
  if (opt.S < 1) throw std::invalid_argument("S must be at least 1");
  if (opt.window < 1) throw std::invalid_argument("window must be positive");
  Stopwatch clock;
  const LampFamily fam{opt.n};
  const std::int64_t side_max = opt.S;
  const std::int64_t diag_min = 2 * static_cast<std::int64_t>(opt.S);
  const auto conv = opt.convention;
  // Longest hull (in indices) of a config within side_max of the identity.
  const int max_len = static_cast<int>(conv == SupportConvention::gap ? side_max + 1 : side_max);
  const auto near = short_configs(opt.n, opt.window, max_len);
  std::vector<LampConfig> far;
  if (opt.hypotheses == Hypotheses::relaxed) far = all_configs(opt.n, opt.window);
  const LampConfig p1(opt.n);

  VerifyReport report;
  report.params = Json{{"family", LampFamily::name},
                       {"n", opt.n},
                       {"S", opt.S},
                       {"window", opt.window},
                       {"convention", to_string(conv)},
                       {"hypotheses", to_string(opt.hypotheses)},
                       {"side_support_max", side_max},
                       {"diagonal_support_min", diag_min}};
  report.search_space =
      Json{{"p1", ""},
           {"window", Json::array({0, opt.window})},
           {"near_identity_configs", near.size()},
           {"p3_candidates", opt.hypotheses == Hypotheses::full ? "p2 + near_identity" : "all window configs"},
           {"p3_candidate_count", opt.hypotheses == Hypotheses::full ? near.size() : far.size()}};

  auto witness = [&](const LampConfig& b, const LampConfig& c, const LampConfig& d) {
    Json w = quad_to_json(fam, Quad<LampConfig>{{p1, b, c, d}});
    w["sum_p1_p3"] = fam.format(lamp_add(p1, c));
    w["sum_p2_p4"] = fam.format(lamp_add(b, d));
    return w;
  };

  auto work = [&](std::size_t begin, std::size_t end) {
    ChunkResult out;
    for (std::size_t i = begin; i < end; ++i) {
      const LampConfig& p2 = near[i];
      for (const LampConfig& p4 : near) {
        const auto d24 = support_size(p2, p4, conv);
        if (d24 < diag_min) continue;
        auto consider = [&](const LampConfig& p3) {
          if (p3 == p2 || p3 == p4 || p3.empty()) return;
          if (support_size(p1, p3, conv) < diag_min) return;
          if (opt.hypotheses == Hypotheses::full) {
            if (support_size(p3, p4, conv) > side_max) return;
          }
          ++out.checked;
          if (lamp_add(p1, p3) != lamp_add(p2, p4)) record(out, witness(p2, p3, p4));
        };
        if (opt.hypotheses == Hypotheses::full) {
          for (const LampConfig& step : near) consider(lamp_add(p2, step));
        } else {
          for (const LampConfig& p3 : far) consider(p3);
        }
      }
    }
    return out;
  };
  merge(report, run_chunked(near.size(), opt.chunks, work), nullptr);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

Json bs_side_decomposition(const BSNumber& p, const BSNumber& q) {
  const BSNumber d = bs_sub(p, q);
  return Json{{"r", to_string(d.r())}, {"k", d.k()}};
}

VerifyReport verify_taback(const TabackOptions& opt) {
  if (opt.n < 2) throw std::invalid_argument("n must be at least 2");
  if (opt.epsilon < 1) throw std::invalid_argument("epsilon must be at least 1");
  if (opt.exp_lo > opt.exp_hi) throw std::invalid_argument("empty exponent range");
  Stopwatch clock;
  const BSFamily fam{opt.n};
  const std::uint32_t n = opt.n;

  // Sides r n^k with 1 <= |r| <= r_max, n !| r, k in [lo, hi].
  auto side_steps = [&](const BigInt& r_max, std::int64_t lo, std::int64_t hi) {
    std::vector<BSNumber> out;
    for (std::int64_t k = lo; k <= hi; ++k) {
      for (BigInt r = 1; r <= r_max; ++r) {
        if (r % n == 0) continue;
        out.push_back(bs_normalize(r, k, n));
        out.push_back(bs_normalize(-r, k, n));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  // p2 and p4 lie within eps of p1 = 0 and inside the bounds.
  const auto steps =
      side_steps(opt.epsilon < opt.numerator_bound ? opt.epsilon : opt.numerator_bound, opt.exp_lo, opt.exp_hi);
  // p3 - p2 is a difference of two in-bounds points: its exponent is at least
  // exp_lo, and |p3 - p2| <= 2 bound n^exp_hi caps it from above.
  const auto far_steps =
      side_steps(opt.epsilon, opt.exp_lo, opt.exp_hi + ceil_log(2 * opt.numerator_bound, n));
  auto in_bounds = [&](const BSNumber& x) {
    if (x.is_zero()) return true;
    return abs(x.r()) <= opt.numerator_bound && x.k() >= opt.exp_lo && x.k() <= opt.exp_hi;
  };
  const BSNumber p1(n);

  VerifyReport report;
  report.params = Json{{"family", BSFamily::name},
                       {"n", n},
                       {"epsilon", to_string(opt.epsilon)},
                       {"M", to_string(opt.M)},
                       {"numerator_bound", to_string(opt.numerator_bound)},
                       {"exponent_range", Json::array({opt.exp_lo, opt.exp_hi})}};
  report.search_space = Json{{"p1", "0"},
                             {"corners", "r*n^k with |r| <= numerator_bound, k in exponent_range"},
                             {"side_steps", steps.size()},
                             {"p3_steps", far_steps.size()}};

  auto work = [&](std::size_t begin, std::size_t end) {
    ChunkResult out;
    for (std::size_t i = begin; i < end; ++i) {
      const BSNumber& p2 = steps[i];
      for (const BSNumber& p4 : steps) {
        if (p4 == p2 || bs_delta(p2, p4) < opt.M) continue;
        for (const BSNumber& s : far_steps) {
          const BSNumber p3 = bs_add(p2, s);
          if (!in_bounds(p3) || p3.is_zero() || p3 == p4) continue;
          if (bs_delta(p3, p4) > opt.epsilon) continue;
          if (bs_delta(p1, p3) < opt.M) continue;
          ++out.checked;
          const Quad<BSNumber> q{{p1, p2, p3, p4}};
          std::array<BSNumber, 4> side;
          for (int j = 0; j < 4; ++j) side[j] = bs_sub(q.p[(j + 1) % 4], q.p[j]);
          const bool relation = side[0].k() == side[2].k() && side[1].k() == side[3].k() &&
                                side[0].r() == -side[2].r() && side[1].r() == -side[3].r();
          if (!relation) ++out.relation_failures;
          if (!is_parallelogram_relation(fam, q)) {
            Json w = quad_to_json(fam, q);
            Json sides = Json::array();
            for (int j = 0; j < 4; ++j) sides.push_back(bs_side_decomposition(q.p[(j + 1) % 4], q.p[j]));
            w["sides"] = sides;
            record(out, std::move(w));
          }
        }
      }
    }
    return out;
  };
  std::uint64_t relation_failures = 0;
  merge(report, run_chunked(steps.size(), opt.chunks, work), &relation_failures);
  report.extra["side_relation_failures"] = relation_failures;
  report.extra["M_exceeds_eps_squared"] = opt.M > opt.epsilon * opt.epsilon;
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

namespace {

std::vector<SolVector> sol_side_steps(const SolContext& ctx, const BigInt& eps, std::int64_t box) {
  std::vector<SolVector> out;
  for (std::int64_t x = -box; x <= box; ++x) {
    for (std::int64_t y = -box; y <= box; ++y) {
      const SolVector v{x, y};
      if (v == SolVector{}) continue;
      if (sol_delta(ctx, v, {}) <= eps) out.push_back(v);
    }
  }
  return out;
}

bool in_box(SolVector v, std::int64_t box) {
  return v.x >= -box && v.x <= box && v.y >= -box && v.y <= box;
}

struct SolSteps {
  std::vector<SolVector> near;  // corners within eps of the origin, in the box
  std::vector<SolVector> wide;  // differences of two box points within eps
};

SolSteps sol_steps(const SolContext& ctx, const BigInt& eps, std::int64_t box) {
  SolSteps s;
  s.wide = sol_side_steps(ctx, eps, 2 * box);
  for (const SolVector v : s.wide) {
    if (in_box(v, box)) s.near.push_back(v);
  }
  return s;
}

// Calls fn(p2, p3, p4) for every corner set with p1 = 0, all corners in the
// box, pairwise distinct and all four sides <= eps.
template <class Fn>
void for_each_side_quad(const SolContext& ctx, const SolSteps& steps, const BigInt& eps, std::int64_t box,
                        std::size_t begin, std::size_t end, Fn fn) {
  for (std::size_t i = begin; i < end; ++i) {
    const SolVector p2 = steps.near[i];
    for (const SolVector p4 : steps.near) {
      if (p4 == p2) continue;
      for (const SolVector s : steps.wide) {
        const SolVector p3 = p2 + s;
        if (!in_box(p3, box) || p3 == SolVector{} || p3 == p4) continue;
        if (sol_delta(ctx, p3, p4) > eps) continue;
        fn(p2, p3, p4);
      }
    }
  }
}

}  // namespace

VerifyReport verify_schwartz(const SolContext& ctx, const SchwartzOptions& opt) {
  if (opt.box < 0) throw std::invalid_argument("box must be non-negative");
  Stopwatch clock;
  const SolFamily fam{ctx};
  const auto steps = sol_steps(ctx, opt.epsilon, opt.box);
  VerifyReport report;
  report.params = Json{{"family", SolFamily::name},
                       {"matrix", Json::array({ctx.A.a, ctx.A.b, ctx.A.c, ctx.A.d})},
                       {"form", Json::array({ctx.form.alpha, ctx.form.beta, ctx.form.gamma})},
                       {"epsilon", to_string(opt.epsilon)},
                       {"M", to_string(opt.M)},
                       {"box", opt.box}};
  report.search_space = Json{{"p1", "0,0"}, {"box", Json::array({-opt.box, opt.box})},
                             {"side_steps", steps.near.size()},
                             {"p3_steps", steps.wide.size()}};
  auto work = [&](std::size_t begin, std::size_t end) {
    ChunkResult out;
    for_each_side_quad(ctx, steps, opt.epsilon, opt.box, begin, end,
                       [&](SolVector p2, SolVector p3, SolVector p4) {
                         if (sol_delta(ctx, p2, p4) < opt.M) return;
                         if (sol_delta(ctx, {}, p3) < opt.M) return;
                         ++out.checked;
                         const Quad<SolVector> q{{SolVector{}, p2, p3, p4}};
                         if (!is_parallelogram_relation(fam, q)) record(out, quad_to_json(fam, q));
                       });
    return out;
  };
  merge(report, run_chunked(steps.near.size(), opt.chunks, work), nullptr);
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

SchwartzCalibration calibrate_schwartz(const SolContext& ctx, const SchwartzOptions& opt) {
  const auto steps = sol_steps(ctx, opt.epsilon, opt.box);
  struct Part {
    std::uint64_t side_quads = 0, non_parallelograms = 0;
    BigInt worst = 0;
  };
  auto work = [&](std::size_t begin, std::size_t end) {
    Part part;
    for_each_side_quad(ctx, steps, opt.epsilon, opt.box, begin, end,
                       [&](SolVector p2, SolVector p3, SolVector p4) {
                         ++part.side_quads;
                         if (p2 + p4 == p3) return;
                         ++part.non_parallelograms;
                         BigInt d = sol_delta(ctx, {}, p3);
                         BigInt d2 = sol_delta(ctx, p2, p4);
                         if (d2 < d) d = d2;
                         if (d > part.worst) part.worst = d;
                       });
    return part;
  };
  SchwartzCalibration cal;
  BigInt worst = 0;
  for (const auto& part : run_chunked(steps.near.size(), opt.chunks, work)) {
    cal.side_quads += part.side_quads;
    cal.non_parallelograms += part.non_parallelograms;
    if (part.worst > worst) worst = part.worst;
  }
  cal.M_star = worst + 1;
  SchwartzOptions at = opt;
  at.M = cal.M_star;
  cal.at_M_star = verify_schwartz(ctx, at);
  return cal;
}

}  // namespace lampqi
