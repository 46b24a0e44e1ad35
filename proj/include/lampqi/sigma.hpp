#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "lampqi/quad.hpp"

namespace lampqi {

template <class P>
struct SigmaPairFailure {
  P v;
  P w;
  Classification classification;
};

/// Classifies [[0, v], [w, v + w]].
template <class F>
Classification sigma_pair(const F& fam, const typename F::Point& v, const typename F::Point& w,
                          const QuadParams& params) {
  using P = typename F::Point;
  const P zero = fam.zero();
  return classify(fam, Quad<P>{{zero, v, fam.add(v, w), w}}, params);
}

/// First ordered pair (v, w), v != w, in generator order for which
/// [[0, v], [w, v + w]] is not an (eps, M)-parallelogram; nullopt when every
/// pair is one (in particular for a singleton set).
template <class F>
std::optional<SigmaPairFailure<typename F::Point>> sigma_admissible(
    const F& fam, const GeneratorSet<typename F::Point>& sigma, const QuadParams& params) {
  for (const auto& v : sigma.elements) {
    for (const auto& w : sigma.elements) {
      if (v == w) continue;
      auto c = sigma_pair(fam, v, w, params);
      if (c.kind != QuadClass::parallelogram) return SigmaPairFailure<typename F::Point>{v, w, std::move(c)};
    }
  }
  return std::nullopt;
}

/// First index in [lo, hi) whose unit config e_i is outside the Z_n-span of
/// sigma; nullopt when sigma generates every config supported in the window.
/// Requires prime n (throws std::domain_error otherwise).
std::optional<std::int64_t> lamp_window_missing_index(const GeneratorSet<LampConfig>& sigma,
                                                      std::int64_t lo, std::int64_t hi);

struct SigmaObstruction {
  LampConfig z;
  LampConfig v;
  Classification classification;
  std::optional<std::int64_t> i0;  // the uncovered index used, if any
  std::string method;              // "index-gap" or "exhaustive"
};

/// A pair (z, v) of generators failing to span an (eps, M)-parallelogram.
/// v is the first generator lighting index lo; z is the first generator
/// lighting i0 = max hull(v) + 1, whose hull abuts v's, so the diagonal of
/// [[0, z], [v, z + v]] has support gap at most 2 log_n(eps) + 1 < log_n M.
/// Falls back to scanning all pairs when v already reaches the window end.
/// Throws std::domain_error naming a missing index when sigma does not
/// generate [lo, hi), std::invalid_argument when M <= n eps^2.
SigmaObstruction lamp_sigma_obstruction(const LampFamily& fam, const GeneratorSet<LampConfig>& sigma,
                                        const QuadParams& params, std::int64_t lo, std::int64_t hi);

}  // namespace lampqi
