#include "lampqi/qi.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>

namespace lampqi {

namespace {

int bits_per_digit(std::uint32_t n) { return std::bit_width(n - 1); }

// Digit of index lo + i lives at bits [i * b, (i + 1) * b).
std::uint64_t pack(const LampConfig& c, std::int64_t lo, int b) {
  std::uint64_t out = 0;
  for (const auto& e : c.entries()) out |= std::uint64_t{e.value} << ((e.index - lo) * b);
  return out;
}

}  // namespace

BilipReport bilip_constants_on(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n) {
  if (!window_confined(map, lo, hi)) throw std::domain_error("map is not confined to the window");
  const WindowCodec codec(n, lo, hi);
  const int b = bits_per_digit(n);
  if ((hi - lo) * b > 64) throw std::invalid_argument("window too wide for packed scan");
  const std::uint64_t N = codec.size();
  std::vector<std::uint64_t> src(N), img(N);
  for (std::uint64_t c = 0; c < N; ++c) {
    const LampConfig x = codec.decode(c);
    src[c] = pack(x, lo, b);
    img[c] = pack(apply(map, x), lo, b);
  }
  BilipReport r;
  r.lo = lo;
  r.hi = hi;
  int worst_lower = 0, worst_upper = 0;
  std::uint64_t wl_i = 0, wl_j = 0, wu_i = 0, wu_j = 0;
  auto scan = [&](auto digit_bits) {
    constexpr int B = decltype(digit_bits)::value;
    const int bb = B > 0 ? B : b;
    for (std::uint64_t i = 0; i < N; ++i) {
      for (std::uint64_t j = i + 1; j < N; ++j) {
        const std::uint64_t x = src[i] ^ src[j];
        const std::uint64_t y = img[i] ^ img[j];
        const int dl = std::abs(std::countr_zero(y) / bb - std::countr_zero(x) / bb);
        const int du = std::abs((63 - std::countl_zero(y)) / bb - (63 - std::countl_zero(x)) / bb);
        if (dl > worst_lower) {
          worst_lower = dl;
          wl_i = i;
          wl_j = j;
        }
        if (du > worst_upper) {
          worst_upper = du;
          wu_i = i;
          wu_j = j;
        }
      }
    }
  };
  if (b == 1) {
    scan(std::integral_constant<int, 1>{});
  } else {
    scan(std::integral_constant<int, 0>{});
  }
  r.pairs = N * (N - 1) / 2;
  r.K_lower = rpow(n, worst_lower);
  r.K_upper = rpow(n, worst_upper);
  if (worst_lower > 0) r.lower_witness = std::pair{codec.decode(wl_i), codec.decode(wl_j)};
  if (worst_upper > 0) r.upper_witness = std::pair{codec.decode(wu_i), codec.decode(wu_j)};
  return r;
}

BilipReport bilip_constants(const BaseMap& map, std::int64_t padding, std::uint32_t n) {
  if (padding < 0) throw std::invalid_argument("padding must be non-negative");
  const auto w = active_window(map);
  if (!w) throw std::domain_error("map is not the identity outside a finite window");
  BilipReport r = bilip_constants_on(map, w->first - padding, w->second + padding, n);
  r.exhaustive = padding >= w->second - w->first;
  return r;
}

std::optional<ParallelogramWitness> parallelogram_preserving(const BaseMap& map, std::int64_t lo,
                                                             std::int64_t hi, std::uint32_t n) {
  const WindowCodec codec(n, lo, hi);
  const std::uint64_t N = codec.size();
  if (N > 1024) throw std::invalid_argument("window too large for the triple scan");
  std::vector<LampConfig> img;
  img.reserve(N);
  for (std::uint64_t c = 0; c < N; ++c) img.push_back(apply(map, codec.decode(c)));
  for (std::uint64_t a = 0; a < N; ++a) {
    for (std::uint64_t v = 0; v < N; ++v) {
      const std::uint64_t av = codec.add(a, v);
      for (std::uint64_t w = 0; w <= v; ++w) {
        const std::uint64_t aw = codec.add(a, w);
        const std::uint64_t avw = codec.add(av, w);
        LampConfig lhs = lamp_add(img[avw], img[a]);
        LampConfig rhs = lamp_add(img[av], img[aw]);
        if (lhs != rhs) {
          return ParallelogramWitness{codec.decode(a), codec.decode(v), codec.decode(w), std::move(lhs),
                                      std::move(rhs)};
        }
      }
    }
  }
  return std::nullopt;
}

AffineVerdict is_generalized_affine(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n) {
  AffineVerdict v;
  v.constant = apply(map, LampConfig(n));
  v.parallelogram_preserving = !parallelogram_preserving(map, lo, hi, n).has_value();
  if (!v.parallelogram_preserving || lo >= hi) {
    if (v.parallelogram_preserving) v.strict = v.with_inversion = true, v.j = 0;
    return v;
  }
  const WindowCodec codec(n, lo, hi);
  auto factors = [&](bool invert, std::int64_t& j_out, std::uint32_t& u_out) {
    const LampConfig linear = lamp_sub(apply(map, LampConfig::single(n, lo)), v.constant);
    if (linear.size() != 1) return false;
    const auto e = linear.entries().front();
    if (inverse_mod(e.value, n) == 0) return false;
    const std::int64_t source = invert ? -lo : lo;
    const std::int64_t j = source - e.index;
    for (std::uint64_t c = 0; c < codec.size(); ++c) {
      const LampConfig x = codec.decode(c);
      const LampConfig base = invert ? lamp_reflect(x) : x;
      if (apply(map, x) != lamp_add(lamp_scale(lamp_shift(base, j), e.value), v.constant)) return false;
    }
    j_out = j;
    u_out = e.value;
    return true;
  };
  std::int64_t j = 0;
  std::uint32_t u = 1;
  if (factors(false, j, u)) {
    v.strict = v.with_inversion = true;
    v.j = j;
    v.unit = u;
  } else if (factors(true, j, u)) {
    v.with_inversion = true;
    v.uses_inversion = true;
    v.j = j;
    v.unit = u;
  }
  return v;
}

DeltaDistortion delta_distortion(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n,
                                 const Rational& K) {
  const WindowCodec codec(n, lo, hi);
  const std::uint64_t N = codec.size();
  std::vector<LampConfig> src, img;
  for (std::uint64_t c = 0; c < N; ++c) {
    src.push_back(codec.decode(c));
    img.push_back(apply(map, src.back()));
  }
  DeltaDistortion d;
  d.bound = K * K;
  bool first = true;
  for (std::uint64_t i = 0; i < N; ++i) {
    for (std::uint64_t j = i + 1; j < N; ++j) {
      const auto before = supp_gap(src[i], src[j]);
      const auto after = supp_gap(img[i], img[j]);
      if (!after) throw std::logic_error("map is not injective on the window");
      const std::int64_t e = after->gap - before->gap;
      if (first || e > d.max_exponent) {
        d.max_exponent = e;
        d.max_witness = std::pair{src[i], src[j]};
      }
      if (first || e < d.min_exponent) {
        d.min_exponent = e;
        d.min_witness = std::pair{src[i], src[j]};
      }
      first = false;
      ++d.pairs;
    }
  }
  d.max_ratio = rpow(n, d.max_exponent);
  d.min_ratio = rpow(n, d.min_exponent);
  if (d.max_ratio > d.bound || d.min_ratio * d.bound < 1) {
    throw std::logic_error("delta distortion outside [1/K^2, K^2]: ratio " + to_string(d.max_ratio) +
                           " or " + to_string(d.min_ratio) + " against K^2 = " + to_string(d.bound));
  }
  return d;
}

std::uint64_t pattern_defects(const VertexMap& vm, std::uint64_t radius, std::uint32_t n) {
  std::uint64_t bad = 0;
  for (const auto& v : ball(dl_identity(n), radius)) {
    if (coset_of(vm(v)) != apply(vm.base, coset_of(v))) ++bad;
  }
  return bad;
}

QiDistortion qi_distortion(const VertexMap& vm, std::uint64_t radius, std::uint32_t n) {
  const auto vs = ball(dl_identity(n), radius);
  std::vector<DLVertex> images;
  images.reserve(vs.size());
  for (const auto& v : vs) images.push_back(vm(v));
  QiDistortion q;
  q.radius = radius;
  q.ball_size = vs.size();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const auto a = dl_distance(vs[i], vs[j]);
      const auto b = dl_distance(images[i], images[j]);
      const std::uint64_t gap = a > b ? a - b : b - a;
      if (gap > q.additive) {
        q.additive = gap;
        q.witness = std::pair{vs[i], vs[j]};
      }
      ++q.pairs;
    }
  }
  return q;
}

bool IsometrySearchResult::identity_only() const {
  if (maps.size() != 1) return false;
  for (std::size_t i = 0; i < maps[0].size(); ++i) {
    if (maps[0][i] != i) return false;
  }
  return true;
}

namespace {

class IsometrySearch {
 public:
  IsometrySearch(std::uint64_t radius, const IsometryConstraints& cons, std::uint32_t n, std::size_t max_results)
      : cons_(cons), max_results_(max_results) {
    verts_ = ball(dl_identity(n), radius);
    N_ = verts_.size();
    std::unordered_map<DLVertex, std::size_t, DLVertexHash> index;
    for (std::size_t i = 0; i < N_; ++i) index.emplace(verts_[i], i);
    adj_.assign(N_ * N_, false);
    nbrs_.resize(N_);
    dist_.assign(N_, 0);
    parent_.assign(N_, 0);
    for (std::size_t i = 0; i < N_; ++i) {
      for (const auto& w : neighbors(verts_[i])) {
        auto it = index.find(w);
        if (it == index.end()) continue;
        if (!adj_[i * N_ + it->second]) {
          adj_[i * N_ + it->second] = true;
          nbrs_[i].push_back(it->second);
        }
      }
    }
    // BFS order: the first discovered neighbor one step closer is the parent.
    for (std::size_t i = 1; i < N_; ++i) {
      std::size_t best = N_;
      for (std::size_t w : nbrs_[i]) {
        if (w < i && (best == N_ || w < best)) best = w;
      }
      parent_[i] = best;
      dist_[i] = dist_[best] + 1;
    }
    std::map<std::pair<std::int64_t, LampConfig>, int> lkeys, rkeys;
    std::map<LampConfig, int> ckeys;
    for (const auto& v : verts_) {
      auto id = [](auto& m, auto key) { return m.emplace(std::move(key), static_cast<int>(m.size())).first->second; };
      left_.push_back(id(lkeys, std::pair{v.cursor, lamp_restrict_below(v.config, v.cursor)}));
      right_.push_back(id(rkeys, std::pair{v.cursor, lamp_restrict_at_or_above(v.config, v.cursor)}));
      coset_.push_back(id(ckeys, v.config));
    }
    lmap_ = ClassMap(lkeys.size());
    rmap_ = ClassMap(rkeys.size());
    cmap_ = ClassMap(ckeys.size());
    phi_.assign(N_, kNone);
    inv_.assign(N_, kNone);
    result_.radius = radius;
    for (std::size_t i = 0; i < N_; ++i) {
      if (dist_[i] + 1 <= radius) inner_.push_back(i);
      else shell_.push_back(i);
    }
    // BFS order puts the inner ball first, so inner indices are a prefix.
    result_.inner.assign(verts_.begin(), verts_.begin() + static_cast<std::ptrdiff_t>(inner_.size()));
  }

  IsometrySearchResult run() {
    // Center first, then the rest of the identity coset when it is fixed.
    std::vector<std::size_t> fixed{0};
    if (cons_.fix_identity_coset) {
      for (std::size_t i = 1; i < N_; ++i) {
        if (verts_[i].config.empty()) fixed.push_back(i);
      }
    }
    for (std::size_t i : fixed) {
      if (!assign(i, i)) return std::move(result_);
    }
    std::vector<bool> is_fixed(N_, false);
    for (std::size_t i : fixed) is_fixed[i] = true;
    for (std::size_t i : inner_) {
      if (!is_fixed[i]) free_inner_.push_back(i);
    }
    for (std::size_t i : shell_) {
      if (!is_fixed[i]) free_shell_.push_back(i);
    }
    enumerate(0);
    return std::move(result_);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct ClassMap {
    explicit ClassMap(std::size_t k = 0) : fwd(k, -1), bwd(k, -1) {}
    std::vector<int> fwd, bwd;
  };

  struct TrailEntry {
    ClassMap* cm;
    int from;
    int to;
  };

  bool bind(ClassMap& cm, int a, int b) {
    if (cm.fwd[a] == b) return true;
    if (cm.fwd[a] != -1 || cm.bwd[b] != -1) return false;
    cm.fwd[a] = b;
    cm.bwd[b] = a;
    trail_.push_back({&cm, a, b});
    return true;
  }

  bool assign(std::size_t u, std::size_t t) {
    if (inv_[t] != kNone || phi_[u] != kNone) return false;
    if (dist_[u] != dist_[t]) return false;
    if (cons_.height_preserving && verts_[u].cursor != verts_[t].cursor) return false;
    for (std::size_t w : nbrs_[u]) {
      if (phi_[w] != kNone && !adj_[t * N_ + phi_[w]]) return false;
    }
    for (std::size_t y : nbrs_[t]) {
      if (inv_[y] != kNone && !adj_[u * N_ + inv_[y]]) return false;
    }
    const std::size_t mark = trail_.size();
    bool ok = true;
    if (cons_.orientation_preserving) ok = bind(lmap_, left_[u], left_[t]) && bind(rmap_, right_[u], right_[t]);
    if (ok && cons_.pattern_preserving) ok = bind(cmap_, coset_[u], coset_[t]);
    if (!ok) {
      undo_to(mark);
      return false;
    }
    phi_[u] = t;
    inv_[t] = u;
    marks_.push_back(mark);
    return true;
  }

  void unassign(std::size_t u) {
    inv_[phi_[u]] = kNone;
    phi_[u] = kNone;
    undo_to(marks_.back());
    marks_.pop_back();
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      auto e = trail_.back();
      trail_.pop_back();
      e.cm->fwd[e.from] = -1;
      e.cm->bwd[e.to] = -1;
    }
  }

  bool done() const { return result_.maps.size() >= max_results_ && result_.truncated; }

  void enumerate(std::size_t k) {
    if (done()) return;
    ++result_.nodes;
    if (k == free_inner_.size()) {
      if (complete_shell(0)) {
        if (result_.maps.size() >= max_results_) {
          result_.truncated = true;
          return;
        }
        std::vector<std::size_t> image(inner_.size());
        for (std::size_t i = 0; i < inner_.size(); ++i) image[i] = phi_[inner_[i]];
        result_.maps.push_back(std::move(image));
      }
      return;
    }
    const std::size_t u = free_inner_[k];
    for (std::size_t t : nbrs_[phi_[parent_[u]]]) {
      if (!assign(u, t)) continue;
      enumerate(k + 1);
      unassign(u);
      if (done()) return;
    }
  }

  bool complete_shell(std::size_t k) {
    ++result_.nodes;
    if (k == free_shell_.size()) return true;
    const std::size_t u = free_shell_[k];
    for (std::size_t t : nbrs_[phi_[parent_[u]]]) {
      if (!assign(u, t)) continue;
      const bool ok = complete_shell(k + 1);
      unassign(u);
      if (ok) return true;
    }
    return false;
  }

  IsometryConstraints cons_;
  std::size_t max_results_;
  std::vector<DLVertex> verts_;
  std::size_t N_ = 0;
  std::vector<bool> adj_;
  std::vector<std::vector<std::size_t>> nbrs_;
  std::vector<std::uint64_t> dist_;
  std::vector<std::size_t> parent_;
  std::vector<int> left_, right_, coset_;
  ClassMap lmap_, rmap_, cmap_;
  std::vector<std::size_t> phi_, inv_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> marks_;
  std::vector<std::size_t> inner_, shell_, free_inner_, free_shell_;
  IsometrySearchResult result_;
};

}  // namespace

IsometrySearchResult isometry_search(std::uint64_t radius, const IsometryConstraints& constraints,
                                     std::uint32_t n, std::size_t max_results) {
  if (radius < 2) throw std::invalid_argument("isometry search needs radius >= 2");
  return IsometrySearch(radius, constraints, n, max_results).run();
}

}  // namespace lampqi
