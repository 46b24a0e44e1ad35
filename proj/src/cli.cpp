#include "lampqi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "lampqi/dl_graph.hpp"
#include "lampqi/qi.hpp"
#include "lampqi/quad.hpp"
#include "lampqi/report.hpp"
#include "lampqi/rng.hpp"
#include "lampqi/sigma.hpp"
#include "lampqi/telescope.hpp"
#include "lampqi/text_format.hpp"

namespace lampqi::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::uint32_t n = 2;
  std::string format;
  std::optional<std::uint64_t> seed;
  unsigned chunks = 1;
  std::string out_file;
  bool timing = false;
};

struct Result {
  int code = ok;
  std::string text;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw UsageError("unsupported format '" + c.format + "' (expected one of: " + list + ")");
}

Json report_json(const VerifyReport& r, const Common& c) {
  VerifyReport copy = r;
  if (!c.timing) copy.elapsed_ms.reset();
  return to_json(copy);
}

std::string report_text(const VerifyReport& r) {
  std::ostringstream s;
  s << "checked " << r.count_checked << ", violations " << r.violation_count
    << (r.vacuous ? ", vacuous" : "") << "\n";
  for (const auto& v : r.violations) s << v.dump() << "\n";
  return s.str();
}

Result emit_report(const VerifyReport& r, const Common& c) {
  require_format(c, {"json", "text"});
  return {r.ok() ? ok : violations, c.format == "json" ? dump(report_json(r, c)) : report_text(r)};
}

std::string coarse_text(const CoarseHeightInterval& h) {
  if (h.t_high_log_arg == 1) return to_string(h.t_high_base);
  return to_string(h.t_high_base) + " + log_" + std::to_string(h.base) + "(" + to_string(h.t_high_log_arg) + ")";
}

Json coarse_json(const CoarseHeightInterval& h) {
  if (h.diagnostic_only) {
    return Json{{"t_low", h.approx_low}, {"t_high", h.approx_high}, {"base", "e"}, {"diagnostic_only", true}};
  }
  return Json{{"t_low", to_string(h.t_low)},
              {"t_high", coarse_text(h)},
              {"t_high_approx", h.approx_high},
              {"base", h.base},
              {"diagnostic_only", false}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

template <class F>
GeneratorSet<typename F::Point> parse_sigma(const F& fam, const std::string& text) {
  GeneratorSet<typename F::Point> sigma;
  if (text.empty()) return sigma;
  for (const auto& item : split(text, ';')) sigma.elements.push_back(fam.parse(item));
  return sigma;
}

BigInt parse_big(const std::string& text, const char* what) {
  try {
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
    if (i == text.size()) throw std::invalid_argument("");
    for (std::size_t k = i; k < text.size(); ++k) {
      if (text[k] < '0' || text[k] > '9') throw ParseError(what, text, k, "decimal digit");
    }
    return BigInt(text);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(what, text, 0, "integer");
  }
}

// Dispatches a family-generic action on --family.
template <class Fn>
Result with_family(const std::string& family, const Common& c, const std::string& matrix, Fn fn) {
  if (family == "lamp") return fn(LampFamily{c.n});
  if (family == "bs") return fn(BSFamily{c.n});
  if (family == "sol") return fn(SolFamily{sol_invariant_form(parse_matrix(matrix))});
  throw UsageError("unknown family '" + family + "' (expected lamp, bs or sol)");
}

Json vertex_pair(const std::pair<DLVertex, DLVertex>& p) {
  return Json::array({format_vertex(p.first), format_vertex(p.second)});
}

Json config_pair(const std::optional<std::pair<LampConfig, LampConfig>>& p) {
  if (!p) return nullptr;
  return Json::array({format_lamp_config(p->first), format_lamp_config(p->second)});
}

Json bilip_json(const BilipReport& b) {
  return Json{{"window", Json::array({b.lo, b.hi})},
              {"pairs", b.pairs},
              {"K_lower", to_string(b.K_lower)},
              {"K_upper", to_string(b.K_upper)},
              {"exhaustive", b.exhaustive},
              {"lower_witness", config_pair(b.lower_witness)},
              {"upper_witness", config_pair(b.upper_witness)}};
}

std::int64_t default_padding(const BaseMap& map) {
  const auto w = active_window(map);
  if (!w) throw std::domain_error("map is not the identity outside a finite window");
  return w->second - w->first;
}

// Largest n^m for a block permutation inside the map, if it is one.
std::optional<Rational> blockperm_bound(const BaseMap& map) {
  if (const auto* b = std::get_if<BlockPermMap>(&map.variant())) return rpow(b->n, b->m);
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact metrics, quadrilateral verifiers and boundary maps for lamplighter groups, "
               "BS(1,n) and SOL lattices",
               "lampqi"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");
  Common c;
  std::function<Result()> action;

  auto common = [&](CLI::App* sub, const char* default_format) {
    sub->preparse_callback([&c, default_format](std::size_t) { c.format = default_format; });
    sub->add_option("--n", c.n, "Lamp modulus / Baumslag-Solitar base")->check(CLI::Range(2u, 1000000u));
    sub->add_option("--format", c.format, "Output format");
    sub->add_option("--seed", c.seed, "Seed for sampled modes");
    sub->add_option("--chunks", c.chunks, "Parallel enumeration chunks")->check(CLI::Range(1u, 1024u));
    sub->add_option("--out", c.out_file, "Write output to FILE");
    sub->add_flag("--timing", c.timing, "Report elapsed_ms");
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, const char* fmt) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub, fmt);
    return sub;
  };

  // Shared option storage; only one leaf command runs per invocation.
  std::string family = "lamp", matrix = "2,1,1,1", p, q, u, v, center = "|0", map_text, config, sigma_text;
  std::array<std::string, 4> corners;
  std::string eps_text = "1", M_text = "1", bound_text = "1024", convention = "index-count";
  int S = 1, window = -1;
  std::int64_t exp_lo = -5, exp_hi = 5, box = 50, padding = -1;
  std::uint64_t radius = 0, cap = 0, random_count = 0, samples = 0, max_results = 1000;
  int block_m = 3;
  bool color_cosets = false, relaxed = false, calibrate = false;
  bool no_pattern = false, no_orientation = false, no_height = false, no_fix = false;

  // delta
  {
    auto* sub = leaf(&app, "delta", "delta, boundary metrics and coarse heights of two points", "json");
    sub->add_option("--family", family, "lamp | bs | sol");
    sub->add_option("--p", p, "First point")->required();
    sub->add_option("--q", q, "Second point")->required();
    sub->add_option("--matrix", matrix, "SOL matrix a,b,c,d");
    sub->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json", "text"});
        return with_family(family, c, matrix, [&](const auto& fam) -> Result {
          using F = std::decay_t<decltype(fam)>;
          const auto a = fam.parse(p), b = fam.parse(q);
          const BigInt d = fam.delta(a, b);
          if (c.format == "text") return {ok, to_string(d) + "\n"};
          Json j{{"family", F::name}, {"p", fam.format(a)}, {"q", fam.format(b)}, {"delta", to_string(d)}};
          if constexpr (std::is_same_v<F, LampFamily>) {
            j["n"] = fam.n;
            const auto g = supp_gap(a, b);
            j["gap"] = g ? Json(g->gap) : Json(nullptr);
            j["d_l"] = g ? Json(to_string(lamp_dl(a, b))) : Json(nullptr);
            j["d_u"] = g ? Json(to_string(lamp_du(a, b))) : Json(nullptr);
            j["coarse_heights"] = g ? coarse_json(lamp_coarse_heights(a, b)) : Json(nullptr);
          } else if constexpr (std::is_same_v<F, BSFamily>) {
            j["n"] = fam.n;
            j["difference"] = bs_side_decomposition(a, b);
            j["coarse_heights"] = a == b ? Json(nullptr) : coarse_json(bs_coarse_heights(a, b));
          } else {
            j["form"] = Json::array({fam.ctx.form.alpha, fam.ctx.form.beta, fam.ctx.form.gamma});
            j["coarse_heights"] = a == b ? Json(nullptr) : coarse_json(sol_coarse_heights(fam.ctx, a, b));
          }
          return {ok, dump(j)};
        });
      };
    });
  }
  // dist
  {
    auto* sub = leaf(&app, "dist", "graph distance in DL(n,n)", "text");
    sub->add_option("--u", u, "Vertex <config>|<k>")->required();
    sub->add_option("--v", v, "Vertex <config>|<k>")->required();
    sub->add_option("--cap", cap, "Also run BFS up to this radius");
    sub->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"text", "json"});
        const DLVertex a = parse_vertex(u, c.n), b = parse_vertex(v, c.n);
        const auto d = dl_distance(a, b);
        if (c.format == "text") return {ok, std::to_string(d) + "\n"};
        Json j{{"u", format_vertex(a)}, {"v", format_vertex(b)}, {"closed_form", d}};
        if (cap > 0) {
          const auto bfs = bfs_distance(a, b, cap);
          j["bfs"] = bfs ? Json(*bfs) : Json(nullptr);
        }
        return {ok, dump(j)};
      };
    });
  }
  // ball / export-dot
  {
    auto* sub = leaf(&app, "ball", "vertices within a radius", "json");
    sub->add_option("--radius", radius, "Radius")->required();
    sub->add_option("--center", center, "Center vertex");
    sub->add_flag("--color-cosets", color_cosets, "Color vertical cosets (dot)");
    sub->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json", "text", "dot", "csv"});
        const auto vs = ball(parse_vertex(center, c.n), radius);
        if (c.format == "dot") return {ok, export_dot(vs, induced_edges(vs), {color_cosets, "dl"})};
        if (c.format == "csv") return {ok, distance_table_csv(vs, 2 * radius)};
        if (c.format == "text") {
          std::string s;
          for (const auto& x : vs) s += format_vertex(x) + "\n";
          return {ok, s};
        }
        Json list = Json::array();
        for (const auto& x : vs) list.push_back(format_vertex(x));
        return {ok, dump(Json{{"center", center}, {"radius", radius}, {"size", vs.size()}, {"vertices", list}})};
      };
    });
    auto* dot = leaf(&app, "export-dot", "DOT graph of a ball", "dot");
    dot->add_option("--radius", radius, "Radius")->required();
    dot->add_option("--center", center, "Center vertex");
    dot->add_flag("--color-cosets", color_cosets, "One fill color per vertical coset");
    dot->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"dot"});
        const auto vs = ball(parse_vertex(center, c.n), radius);
        return {ok, export_dot(vs, induced_edges(vs), {color_cosets, "dl"})};
      };
    });
  }
  // quad classify
  {
    auto* quad = app.add_subcommand("quad", "quadrilateral tools");
    quad->require_subcommand(1);
    auto* sub = leaf(quad, "classify", "classify [[p1,p2],[p4,p3]]", "json");
    sub->add_option("--family", family, "lamp | bs | sol");
    for (int i = 0; i < 4; ++i) {
      sub->add_option("--p" + std::to_string(i + 1), corners[i], "Corner")->required();
    }
    sub->add_option("--eps", eps_text, "epsilon")->required();
    sub->add_option("--M", M_text, "M")->required();
    sub->add_option("--matrix", matrix, "SOL matrix a,b,c,d");
    sub->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json", "text"});
        const QuadParams params{parse_big(eps_text, "epsilon"), parse_big(M_text, "M")};
        return with_family(family, c, matrix, [&](const auto& fam) -> Result {
          using F = std::decay_t<decltype(fam)>;
          Quad<typename F::Point> qd{{fam.parse(corners[0]), fam.parse(corners[1]), fam.parse(corners[2]),
                                      fam.parse(corners[3])}};
          const auto cls = classify(fam, qd, params);
          if (c.format == "text") return {ok, std::string(to_string(cls.kind)) + "\n"};
          Json sides = Json::array(), diags = Json::array();
          for (const auto& s : cls.sides) sides.push_back(to_string(s));
          for (const auto& d : cls.diagonals) diags.push_back(to_string(d));
          Json j{{"family", F::name},
                 {"quad", quad_to_json(fam, qd)},
                 {"epsilon", to_string(params.epsilon)},
                 {"M", to_string(params.M)},
                 {"classification", to_string(cls.kind)},
                 {"reason", cls.reason},
                 {"sides", sides},
                 {"diagonals", diags}};
          return {ok, dump(j)};
        });
      };
    });
  }
  // verify
  {
    auto* verify = app.add_subcommand("verify", "exhaustive quadrilateral verifiers");
    verify->require_subcommand(1);
    auto* lamp = leaf(verify, "lamp-claim", "(n^S, n^2S)-quadrilaterals in the lamplighter base group", "json");
    lamp->add_option("--S", S, "S")->required()->check(CLI::Range(1, 16));
    lamp->add_option("--window", window, "Window width (default 4S+4)");
    lamp->add_option("--convention", convention, "index-count | gap");
    lamp->add_flag("--relaxed", relaxed, "Only the sides p1p2, p1p4");
    lamp->callback([&] {
      action = [&]() -> Result {
        LampClaimOptions o;
        o.n = c.n;
        o.S = S;
        o.window = window < 0 ? 4 * S + 4 : window;
        if (convention == "index-count") {
          o.convention = SupportConvention::index_count;
        } else if (convention == "gap") {
          o.convention = SupportConvention::gap;
        } else {
          throw UsageError("unknown convention '" + convention + "' (expected index-count or gap)");
        }
        o.hypotheses = relaxed ? Hypotheses::relaxed : Hypotheses::full;
        o.chunks = c.chunks;
        return emit_report(verify_lamp_claim(o), c);
      };
    });
    auto* tb = leaf(verify, "taback", "(eps, M)-quadrilaterals in Z[1/n]", "json");
    tb->add_option("--eps", eps_text, "epsilon")->required();
    tb->add_option("--M", M_text, "M")->required();
    tb->add_option("--bound", bound_text, "Numerator bound");
    tb->add_option("--exp-lo", exp_lo, "Smallest exponent");
    tb->add_option("--exp-hi", exp_hi, "Largest exponent");
    tb->callback([&] {
      action = [&]() -> Result {
        TabackOptions o;
        o.n = c.n;
        o.epsilon = parse_big(eps_text, "epsilon");
        o.M = parse_big(M_text, "M");
        o.numerator_bound = parse_big(bound_text, "bound");
        o.exp_lo = exp_lo;
        o.exp_hi = exp_hi;
        o.chunks = c.chunks;
        return emit_report(verify_taback(o), c);
      };
    });
    auto* sw = leaf(verify, "schwartz", "(eps, M)-quadrilaterals in a SOL lattice", "json");
    sw->add_option("--matrix", matrix, "Hyperbolic matrix a,b,c,d");
    sw->add_option("--eps", eps_text, "epsilon")->required();
    sw->add_option("--M", M_text, "M (ignored with --calibrate)");
    sw->add_option("--box", box, "Box half-width")->check(CLI::Range(0, 10000));
    sw->add_flag("--calibrate", calibrate, "Find the least M with no violations first");
    sw->callback([&] {
      action = [&]() -> Result {
        const SolContext ctx = sol_invariant_form(parse_matrix(matrix));
        SchwartzOptions o;
        o.epsilon = parse_big(eps_text, "epsilon");
        o.M = parse_big(M_text, "M");
        o.box = box;
        o.chunks = c.chunks;
        if (!calibrate) return emit_report(verify_schwartz(ctx, o), c);
        auto cal = calibrate_schwartz(ctx, o);
        cal.at_M_star.extra["calibration"] = Json{{"M_star", to_string(cal.M_star)},
                                                   {"side_quadrilaterals", cal.side_quads},
                                                   {"non_parallelograms", cal.non_parallelograms}};
        return emit_report(cal.at_M_star, c);
      };
    });
  }
  // telescope
  {
    auto* sub = leaf(&app, "telescope", "chain of parallelograms over a generating set", "json");
    auto* family_opt = sub->add_option("--family", family, "lamp | bs | sol (bs with --random)");
    for (int i = 0; i < 4; ++i) sub->add_option("--p" + std::to_string(i + 1), corners[i], "Corner");
    sub->add_option("--sigma", sigma_text, "Generators separated by ';'")->required();
    sub->add_option("--matrix", matrix, "SOL matrix a,b,c,d");
    sub->add_option("--random", random_count, "Decompose this many random BS parallelograms (needs --seed)");
    sub->callback([&, family_opt] {
      action = [&, family_opt]() -> Result {
        require_format(c, {"json"});
        if (random_count > 0) {
          if (family_opt->count() == 0) family = "bs";
          if (family != "bs") throw UsageError("--random supports --family bs only");
          if (!c.seed) throw UsageError("--random is a sampled mode and needs --seed");
          const BSFamily fam{c.n};
          const auto sigma = parse_sigma(fam, sigma_text);
          std::mt19937_64 gen(*c.seed);
          std::uint64_t holds = 0, steps = 0;
          Json failures = Json::array();
          for (std::uint64_t i = 0; i < random_count; ++i) {
            const auto qd = random_bs_parallelogram(gen, fam.n);
            try {
              const auto chain = telescope_decompose(fam, qd, sigma);
              steps += chain.steps.size();
              if (telescoping_identity_holds(fam, qd, chain)) {
                ++holds;
                continue;
              }
              if (failures.size() < violation_cap) failures.push_back(Json{{"quad", quad_to_json(fam, qd)}});
            } catch (const DecompositionError& e) {
              if (failures.size() < violation_cap) {
                failures.push_back(Json{{"quad", quad_to_json(fam, qd)}, {"residual", e.residual()}});
              }
            }
          }
          Json j{{"family", BSFamily::name}, {"n", fam.n}, {"seed", *c.seed}, {"count", random_count},
                 {"identity_holds", holds}, {"total_steps", steps}, {"failures", failures}};
          return {holds == random_count ? ok : violations, dump(j)};
        }
        return with_family(family, c, matrix, [&](const auto& fam) -> Result {
          using F = std::decay_t<decltype(fam)>;
          using P = typename F::Point;
          Quad<P> qd{{fam.parse(corners[0]), fam.parse(corners[1]), fam.parse(corners[2]), fam.parse(corners[3])}};
          const auto sigma = parse_sigma(fam, sigma_text);
          const auto chain = telescope_decompose(fam, qd, sigma);
          Json steps = Json::array(), links = Json::array();
          for (const auto& s : chain.steps) steps.push_back(fam.format(s));
          for (const auto& l : chain.links) links.push_back(quad_to_json(fam, l));
          const bool holds = telescoping_identity_holds(fam, qd, chain);
          Json j{{"family", F::name}, {"quad", quad_to_json(fam, qd)}, {"steps", steps},
                 {"links", links}, {"telescoping_identity", holds}};
          return {holds ? ok : violations, dump(j)};
        });
      };
    });
  }
  // sigma
  {
    auto* sig = app.add_subcommand("sigma", "generating-set admissibility");
    sig->require_subcommand(1);
    auto* check = leaf(sig, "check", "do all pairs span (eps, M)-parallelograms", "json");
    check->add_option("--family", family, "lamp | bs | sol");
    check->add_option("--sigma", sigma_text, "Generators separated by ';'")->required();
    check->add_option("--eps", eps_text, "epsilon")->required();
    check->add_option("--M", M_text, "M")->required();
    check->add_option("--matrix", matrix, "SOL matrix a,b,c,d");
    check->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        const QuadParams params{parse_big(eps_text, "epsilon"), parse_big(M_text, "M")};
        return with_family(family, c, matrix, [&](const auto& fam) -> Result {
          using F = std::decay_t<decltype(fam)>;
          const auto sigma = parse_sigma(fam, sigma_text);
          validate(sigma);
          const auto f = sigma_admissible(fam, sigma, params);
          Json j{{"family", F::name}, {"size", sigma.elements.size()}, {"admissible", !f.has_value()}};
          if (f) {
            j["witness"] = Json{{"v", fam.format(f->v)}, {"w", fam.format(f->w)},
                                {"classification", to_string(f->classification.kind)},
                                {"reason", f->classification.reason}};
          }
          return {f ? violations : ok, dump(j)};
        });
      };
    });
    auto* obs = leaf(sig, "obstruct", "pair of lamplighter generators that fails", "json");
    obs->add_option("--sigma", sigma_text, "Generators separated by ';'")->required();
    obs->add_option("--eps", eps_text, "epsilon")->required();
    obs->add_option("--M", M_text, "M")->required();
    obs->add_option("--window", window, "Window width; the window is [0, width)")->required();
    obs->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        const LampFamily fam{c.n};
        const QuadParams params{parse_big(eps_text, "epsilon"), parse_big(M_text, "M")};
        const auto sigma = parse_sigma(fam, sigma_text);
        validate(sigma);
        const auto o = lamp_sigma_obstruction(fam, sigma, params, 0, window);
        Json j{{"window", Json::array({0, window})},
               {"z", fam.format(o.z)},
               {"v", fam.format(o.v)},
               {"i0", o.i0 ? Json(*o.i0) : Json(nullptr)},
               {"method", o.method},
               {"classification", to_string(o.classification.kind)},
               {"reason", o.classification.reason}};
        return {violations, dump(j)};
      };
    });
  }
  // map
  {
    auto* mp = app.add_subcommand("map", "self-maps of the lamplighter base group");
    mp->require_subcommand(1);
    auto* ap = leaf(mp, "apply", "apply a map to a config", "text");
    ap->add_option("--map", map_text, "Map description")->required();
    ap->add_option("--config", config, "Config literal")->required();
    ap->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"text", "json"});
        const BaseMap m = parse_base_map(map_text, c.n);
        const LampConfig x = parse_lamp_config(config, c.n);
        const std::string y = format_lamp_config(apply(m, x));
        if (c.format == "text") return {ok, y + "\n"};
        return {ok, dump(Json{{"map", format_base_map(m)}, {"input", format_lamp_config(x)}, {"output", y}})};
      };
    });
    auto* bl = leaf(mp, "bilip", "boundary biLipschitz constants", "json");
    bl->add_option("--map", map_text, "Map description")->required();
    bl->add_option("--padding", padding, "Padding around the active window (default its width)");
    bl->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        const BaseMap m = parse_base_map(map_text, c.n);
        const auto pad = padding < 0 ? default_padding(m) : padding;
        const auto b = bilip_constants(m, pad, c.n);
        Json j{{"map", format_base_map(m)}, {"padding", pad}};
        const Json fields = bilip_json(b);
        for (const auto& [k, val] : fields.items()) j[k] = val;
        int code = ok;
        if (const auto bound = blockperm_bound(m)) {
          const bool within = b.K_lower <= *bound && b.K_upper <= *bound;
          j["bound"] = to_string(*bound);
          j["within_bound"] = within;
          if (!within) code = violations;
        }
        return {code, dump(j)};
      };
    });
    auto* sweep = leaf(mp, "bilip-sweep", "biLipschitz constants over block permutations", "json");
    sweep->add_option("--m", block_m, "Block length")->check(CLI::Range(1, 12));
    sweep->add_option("--samples", samples, "Random permutations (0 = all; needs --seed)");
    sweep->add_option("--padding", padding, "Padding (default m)");
    sweep->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        BlockPermMap pi = identity_blockperm(c.n, block_m);
        const std::size_t strings = pi.table.size();
        const auto pad = padding < 0 ? block_m : padding;
        const Rational bound = rpow(c.n, block_m);
        Rational worst_l = 1, worst_u = 1;
        std::uint64_t checked = 0, over = 0;
        std::optional<std::string> worst_map;
        Rational worst = 0;
        auto consider = [&] {
          const auto b = bilip_constants(pi, pad, c.n);
          ++checked;
          worst_l = std::max(worst_l, b.K_lower);
          worst_u = std::max(worst_u, b.K_upper);
          const Rational k = std::max(b.K_lower, b.K_upper);
          if (k > bound) ++over;
          if (k > worst) {
            worst = k;
            worst_map = format_base_map(pi);
          }
        };
        bool exhaustive = samples == 0;
        if (exhaustive) {
          if (strings > 9) throw UsageError("too many permutations to enumerate; use --samples with --seed");
          std::sort(pi.table.begin(), pi.table.end());
          do consider();
          while (std::next_permutation(pi.table.begin(), pi.table.end()));
        } else {
          if (!c.seed) throw UsageError("--samples is a sampled mode and needs --seed");
          std::mt19937_64 gen(*c.seed);
          for (std::uint64_t s = 0; s < samples; ++s) {
            for (std::size_t i = strings; i > 1; --i) {
              std::swap(pi.table[i - 1], pi.table[uniform_below(gen, i)]);
            }
            consider();
          }
        }
        Json j{{"n", c.n}, {"m", block_m}, {"padding", pad}, {"exhaustive_over_permutations", exhaustive},
               {"permutations", checked}, {"bound", to_string(bound)}, {"max_K_lower", to_string(worst_l)},
               {"max_K_upper", to_string(worst_u)}, {"exceeding_bound", over},
               {"worst_map", worst_map ? Json(*worst_map) : Json(nullptr)}};
        if (c.seed) j["seed"] = *c.seed;
        return {over == 0 ? ok : violations, dump(j)};
      };
    });
    auto* ppq = leaf(mp, "ppq", "parallelogram preservation on [0, window)", "json");
    ppq->add_option("--map", map_text, "Map description")->required();
    ppq->add_option("--window", window, "Window width")->required()->check(CLI::Range(0, 10));
    ppq->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json", "text"});
        const BaseMap m = parse_base_map(map_text, c.n);
        const auto w = parallelogram_preserving(m, 0, window, c.n);
        if (c.format == "text") {
          if (!w) return {ok, "parallelogram preserving\n"};
          return {violations, "a=" + format_lamp_config(w->a) + " v=" + format_lamp_config(w->v) +
                                  " w=" + format_lamp_config(w->w) + " psi(a+v+w)+psi(a)=" +
                                  format_lamp_config(w->lhs) + " psi(a+v)+psi(a+w)=" + format_lamp_config(w->rhs) +
                                  "\n"};
        }
        Json j{{"map", format_base_map(m)}, {"window", Json::array({0, window})},
               {"parallelogram_preserving", !w.has_value()}};
        if (w) {
          const WindowCodec codec(c.n, 0, window);
          auto str = [&](const LampConfig& x) -> Json {
            if (!codec.contains(x)) return format_lamp_config(x);
            return window_string(static_cast<std::uint32_t>(codec.encode(x)), c.n, window);
          };
          j["witness"] = Json{{"a", format_lamp_config(w->a)},
                              {"v", format_lamp_config(w->v)},
                              {"w", format_lamp_config(w->w)},
                              {"a_string", str(w->a)},
                              {"v_string", str(w->v)},
                              {"w_string", str(w->w)},
                              {"psi(a+v+w)+psi(a)", format_lamp_config(w->lhs)},
                              {"psi(a+v)+psi(a+w)", format_lamp_config(w->rhs)},
                              {"lhs_string", str(w->lhs)},
                              {"rhs_string", str(w->rhs)}};
        }
        return {w ? violations : ok, dump(j)};
      };
    });
    auto* af = leaf(mp, "affine", "generalized affine test on [0, window)", "json");
    af->add_option("--map", map_text, "Map description")->required();
    af->add_option("--window", window, "Window width")->required()->check(CLI::Range(0, 10));
    af->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        const BaseMap m = parse_base_map(map_text, c.n);
        const auto a = is_generalized_affine(m, 0, window, c.n);
        Json j{{"map", format_base_map(m)},
               {"window", Json::array({0, window})},
               {"parallelogram_preserving", a.parallelogram_preserving},
               {"generalized_affine", a.strict},
               {"generalized_affine_with_inversion", a.with_inversion},
               {"shift", a.j ? Json(*a.j) : Json(nullptr)},
               {"unit", a.unit},
               {"uses_inversion", a.uses_inversion},
               {"constant", format_lamp_config(a.constant)}};
        return {ok, dump(j)};
      };
    });
    auto* dd = leaf(mp, "delta-distortion", "extreme delta ratios against K^2", "json");
    dd->add_option("--map", map_text, "Map description")->required();
    dd->add_option("--padding", padding, "Padding around the active window (default its width)");
    dd->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        const BaseMap m = parse_base_map(map_text, c.n);
        const auto pad = padding < 0 ? default_padding(m) : padding;
        const auto b = bilip_constants(m, pad, c.n);
        const Rational K = std::max(b.K_lower, b.K_upper);
        Json j{{"map", format_base_map(m)}, {"window", Json::array({b.lo, b.hi})}, {"K", to_string(K)}};
        try {
          const auto d = delta_distortion(m, b.lo, b.hi, c.n, K);
          j["bound"] = to_string(d.bound);
          j["pairs"] = d.pairs;
          j["min_ratio"] = to_string(d.min_ratio);
          j["max_ratio"] = to_string(d.max_ratio);
          j["min_witness"] = config_pair(d.min_witness);
          j["max_witness"] = config_pair(d.max_witness);
          j["within_bound"] = true;
          return {ok, dump(j)};
        } catch (const std::logic_error& e) {
          j["within_bound"] = false;
          j["error"] = e.what();
          return {violations, dump(j)};
        }
      };
    });
    auto* qd = leaf(mp, "qi-distortion", "additive distortion of the induced map on DL(n,n)", "json");
    qd->add_option("--map", map_text, "Map description")->required();
    qd->add_option("--radius", radius, "Ball radius")->required()->check(CLI::Range(0, 9));
    qd->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        const VertexMap vm = induced_vertex_map(parse_base_map(map_text, c.n));
        const auto d = qi_distortion(vm, radius, c.n);
        const auto defects = pattern_defects(vm, radius, c.n);
        Json j{{"map", format_base_map(vm.base)},
               {"radius", radius},
               {"ball_size", d.ball_size},
               {"pairs", d.pairs},
               {"additive_distortion", d.additive},
               {"witness", d.witness ? vertex_pair(*d.witness) : Json(nullptr)},
               {"pattern_defects", defects}};
        return {defects == 0 ? ok : violations, dump(j)};
      };
    });
  }
  // isometry-search
  {
    auto* sub = leaf(&app, "isometry-search", "ball maps of DL(n,n) fixing the identity", "json");
    sub->add_option("--radius", radius, "Ball radius")->required()->check(CLI::Range(2, 6));
    sub->add_flag("--no-pattern", no_pattern, "Drop pattern preservation");
    sub->add_flag("--no-orientation", no_orientation, "Drop orientation preservation");
    sub->add_flag("--no-height", no_height, "Drop height preservation");
    sub->add_flag("--no-fix-identity", no_fix, "Only fix the center, not its whole coset");
    sub->add_option("--max-results", max_results, "Stop after this many maps")->check(CLI::Range(1, 1000000));
    sub->callback([&] {
      action = [&]() -> Result {
        require_format(c, {"json"});
        IsometryConstraints cons{!no_height, !no_orientation, !no_fix, !no_pattern};
        const auto r = isometry_search(radius, cons, c.n, max_results);
        Json maps = Json::array();
        for (std::size_t i = 0; i < r.maps.size() && i < 16; ++i) {
          Json moved = Json::array();
          for (std::size_t k = 0; k < r.maps[i].size(); ++k) {
            if (r.maps[i][k] == k) continue;
            moved.push_back(Json::array({format_vertex(r.inner[k]), format_vertex(r.inner[r.maps[i][k]])}));
          }
          maps.push_back(Json{{"moved", moved}});
        }
        Json j{{"radius", radius},
               {"constraints", Json{{"height_preserving", cons.height_preserving},
                                    {"orientation_preserving", cons.orientation_preserving},
                                    {"fix_identity_coset", cons.fix_identity_coset},
                                    {"pattern_preserving", cons.pattern_preserving}}},
               {"inner_ball_size", r.inner.size()},
               {"map_count", r.maps.size()},
               {"truncated", r.truncated},
               {"identity_only", r.identity_only()},
               {"search_nodes", r.nodes},
               {"maps_shown", maps}};
        const bool all = cons.height_preserving && cons.orientation_preserving && cons.fix_identity_coset &&
                         cons.pattern_preserving;
        return {all && !r.identity_only() ? violations : ok, dump(j)};
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  if (!action) {
    err << "error: no command given\n";
    return usage;
  }
  Result result;
  try {
    result = action();
  } catch (const DecompositionError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  if (!c.out_file.empty()) {
    std::ofstream f(c.out_file, std::ios::binary);
    if (!f) {
      err << "error: cannot open '" << c.out_file << "' for writing\n";
      return usage;
    }
    f << result.text;
  } else {
    out << result.text;
  }
  return result.code;
}

}  // namespace lampqi::cli
