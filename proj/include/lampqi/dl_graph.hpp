#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lampqi/lamp_config.hpp"

namespace lampqi {

/// Group element ((x_i), k) of L_n and vertex of the Diestel-Leader graph
/// DL(n,n). Right multiplication by t^{+-1} and (a^s t)^{+-1} gives the edges.
struct DLVertex {
  LampConfig config;
  std::int64_t cursor = 0;

  friend bool operator==(const DLVertex&, const DLVertex&) = default;
  friend std::strong_ordering operator<=>(const DLVertex& a, const DLVertex& b);
};

struct DLVertexHash {
  std::size_t operator()(const DLVertex& v) const;
};

DLVertex dl_identity(std::uint32_t n);

/// ((x_i + y_{i-k}), k + l).
DLVertex dl_multiply(const DLVertex& g, const DLVertex& h);
DLVertex dl_inverse(const DLVertex& g);

enum class TreeSide { left, right };

/// One factor of the horocyclic product. The left germ is the config on
/// indices < k at height k; the right germ is the config on indices >= k at
/// height -k.
struct TreeCoord {
  TreeSide side;
  LampConfig germ;
  std::int64_t height;
  friend bool operator==(const TreeCoord&, const TreeCoord&) = default;
};

TreeCoord tree_coord(const DLVertex& v, TreeSide side);

/// The 2n neighbors: up-moves (config + s e_k, k + 1) for s = 0..n-1, then
/// down-moves (config + s e_{k-1}, k - 1).
std::vector<DLVertex> neighbors(const DLVertex& v);

/// Closed-form graph distance via tree confluence heights.
std::uint64_t dl_distance(const DLVertex& u, const DLVertex& v);

/// Breadth-first distances from `source` to every vertex within `cap`.
std::unordered_map<DLVertex, std::uint64_t, DLVertexHash> bfs_distances(const DLVertex& source,
                                                                        std::uint64_t cap);

/// Pure BFS distance; nullopt when it exceeds `cap`.
std::optional<std::uint64_t> bfs_distance(const DLVertex& u, const DLVertex& v, std::uint64_t cap);

/// All vertices within `radius` of `center`, in BFS discovery order.
std::vector<DLVertex> ball(const DLVertex& center, std::uint64_t radius);

/// The vertical geodesic (left coset of <t>) through v, named by its config.
inline const LampConfig& coset_of(const DLVertex& v) { return v.config; }

/// Edges of the subgraph induced on `vertices`, as index pairs (i < j),
/// sorted.
std::vector<std::pair<std::size_t, std::size_t>> induced_edges(const std::vector<DLVertex>& vertices);

struct DotOptions {
  bool color_cosets = false;
  std::string graph_name = "dl";
};

/// `"<config>|<k>"`.
std::string format_vertex(const DLVertex& v);
DLVertex parse_vertex(std::string_view text, std::uint32_t n);

/// Undirected DOT graph. Node ids are vertex literals; with color_cosets each
/// vertical geodesic gets its own fill color in order of first appearance.
std::string export_dot(const std::vector<DLVertex>& vertices,
                       const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                       const DotOptions& options = {});

/// `u,v,closed_form,bfs` rows for every unordered pair (including u == v).
std::string distance_table_csv(const std::vector<DLVertex>& vertices, std::uint64_t bfs_cap);

}  // namespace lampqi
