#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lampqi/base_map.hpp"
#include "lampqi/dl_graph.hpp"

namespace lampqi {

/// Exact boundary distortion of a map on all distinct pairs supported in
/// [lo, hi). K_lower bounds d_l(psi p, psi q) / d_l(p, q) and its inverse,
/// K_upper does the same for d_u. Both are powers of n.
struct BilipReport {
  Rational K_lower = 1;
  Rational K_upper = 1;
  bool exhaustive = false;
  std::int64_t lo = 0, hi = 0;
  std::uint64_t pairs = 0;
  // First pairs (in code order) attaining each constant; absent when K = 1.
  std::optional<std::pair<LampConfig, LampConfig>> lower_witness;
  std::optional<std::pair<LampConfig, LampConfig>> upper_witness;
};

/// Scans [a - padding, b + padding) where [a, b) is the map's active window.
/// `exhaustive` is set when padding >= b - a: disagreements outside the
/// active window are fixed by the map, so pairs whose disagreements meet it
/// already realize the extremes. Throws std::domain_error when the map has no
/// active window (nonzero shift, inversion).
BilipReport bilip_constants(const BaseMap& map, std::int64_t padding, std::uint32_t n);

/// Same scan on an explicit window, which must confine the map.
BilipReport bilip_constants_on(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n);

struct ParallelogramWitness {
  LampConfig a, v, w;
  LampConfig lhs;  // psi(a + v + w) + psi(a)
  LampConfig rhs;  // psi(a + v) + psi(a + w)
};

/// Tests psi(a + v + w) + psi(a) = psi(a + v) + psi(a + w) for all a, v, w
/// supported in [lo, hi), with w <= v, in code order (a outermost). Returns
/// the first failure.
std::optional<ParallelogramWitness> parallelogram_preserving(const BaseMap& map, std::int64_t lo,
                                                             std::int64_t hi, std::uint32_t n);

struct AffineVerdict {
  bool parallelogram_preserving = false;
  bool strict = false;          // psi(x) = u * Shift_j(x) + c on the window
  bool with_inversion = false;  // strict, or psi(x) = u * Shift_j(reflect x) + c
  std::optional<std::int64_t> j;
  std::uint32_t unit = 1;
  bool uses_inversion = false;
  LampConfig constant;
};

/// Generalized affine test on [lo, hi). The shift j and unit u are read off
/// psi(e_lo) - psi(0) and then checked on every config of the window.
AffineVerdict is_generalized_affine(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n);

struct DeltaDistortion {
  std::int64_t min_exponent = 0;  // min ratio = n^min_exponent
  std::int64_t max_exponent = 0;
  Rational min_ratio = 1, max_ratio = 1;
  Rational bound;  // K^2
  std::uint64_t pairs = 0;
  std::optional<std::pair<LampConfig, LampConfig>> max_witness, min_witness;
};

/// Extremes of delta(psi p, psi q) / delta(p, q) over distinct pairs in
/// [lo, hi). Throws std::logic_error if a ratio leaves [1/K^2, K^2].
DeltaDistortion delta_distortion(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n,
                                 const Rational& K);

/// (config, k) -> (base(config), k).
struct VertexMap {
  BaseMap base;
  DLVertex operator()(const DLVertex& v) const { return DLVertex{apply(base, v.config), v.cursor}; }
};

inline VertexMap induced_vertex_map(BaseMap map) { return VertexMap{std::move(map)}; }

/// Vertices v of the radius-R ball with coset_of(vm(v)) != base(coset_of(v)).
std::uint64_t pattern_defects(const VertexMap& vm, std::uint64_t radius, std::uint32_t n);

struct QiDistortion {
  std::uint64_t radius = 0;
  std::uint64_t ball_size = 0;
  std::uint64_t pairs = 0;
  std::uint64_t additive = 0;  // max |d(vm u, vm v) - d(u, v)|
  std::optional<std::pair<DLVertex, DLVertex>> witness;
};

/// Additive distortion over all pairs of the radius-R ball around the
/// identity.
QiDistortion qi_distortion(const VertexMap& vm, std::uint64_t radius, std::uint32_t n);

struct IsometryConstraints {
  bool height_preserving = true;
  bool orientation_preserving = true;
  bool fix_identity_coset = true;
  bool pattern_preserving = true;
};

struct IsometrySearchResult {
  std::uint64_t radius = 0;
  std::vector<DLVertex> inner;              // the radius-(R-1) ball, BFS order
  std::vector<std::vector<std::size_t>> maps;  // images as indices into `inner`
  bool truncated = false;
  std::uint64_t nodes = 0;  // search nodes visited

  bool identity_only() const;
};

/// Enumerates adjacency-preserving self-bijections of the radius-R ball
/// around the identity that fix the center and satisfy the constraints, and
/// returns their distinct restrictions to the radius-(R-1) ball. Outer-shell
/// vertices are only required to admit some consistent assignment.
/// Orientation preservation keeps the left-tree and right-tree vertex of each
/// vertex's image consistent (same height and same germ below, resp. at or
/// above, the cursor); pattern preservation keeps vertical cosets together.
IsometrySearchResult isometry_search(std::uint64_t radius, const IsometryConstraints& constraints,
                                     std::uint32_t n = 2, std::size_t max_results = 1000);

}  // namespace lampqi
