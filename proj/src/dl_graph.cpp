#include "lampqi/dl_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lampqi/text_format.hpp"

namespace lampqi {

std::strong_ordering operator<=>(const DLVertex& a, const DLVertex& b) {
  if (auto c = a.cursor <=> b.cursor; c != 0) return c;
  return a.config <=> b.config;
}

std::size_t DLVertexHash::operator()(const DLVertex& v) const {
  return hash_value(v.config) ^ (static_cast<std::size_t>(v.cursor) * 0x9e3779b97f4a7c15ULL);
}

DLVertex dl_identity(std::uint32_t n) { return DLVertex{LampConfig(n), 0}; }

DLVertex dl_multiply(const DLVertex& g, const DLVertex& h) {
  return DLVertex{lamp_add(g.config, lamp_shift(h.config, -g.cursor)), g.cursor + h.cursor};
}

DLVertex dl_inverse(const DLVertex& g) {
  return DLVertex{lamp_neg(lamp_shift(g.config, g.cursor)), -g.cursor};
}

TreeCoord tree_coord(const DLVertex& v, TreeSide side) {
  if (side == TreeSide::left) return {side, lamp_restrict_below(v.config, v.cursor), v.cursor};
  return {side, lamp_restrict_at_or_above(v.config, v.cursor), -v.cursor};
}

std::vector<DLVertex> neighbors(const DLVertex& v) {
  const std::uint32_t n = v.config.modulus();
  std::vector<DLVertex> out;
  out.reserve(2 * n);
  const std::uint32_t here = v.config.at(v.cursor);
  for (std::uint32_t s = 0; s < n; ++s) {
    DLVertex w{v.config, v.cursor + 1};
    w.config.set(v.cursor, (here + s) % n);
    out.push_back(std::move(w));
  }
  const std::uint32_t below = v.config.at(v.cursor - 1);
  for (std::uint32_t s = 0; s < n; ++s) {
    DLVertex w{v.config, v.cursor - 1};
    w.config.set(v.cursor - 1, (below + s) % n);
    out.push_back(std::move(w));
  }
  return out;
}

std::uint64_t dl_distance(const DLVertex& u, const DLVertex& v) {
  const std::int64_t ku = u.cursor, kv = v.cursor;
  const auto g = supp_gap(u.config, v.config);
  // Left tree: the germs below min(ku, kv) first differ at l_+.
  std::int64_t c = std::min(ku, kv);
  // Right tree: the germs above max(ku, kv) last differ at l_-.
  std::int64_t c2 = std::max(ku, kv);
  if (g) {
    c = std::min(c, g->l_plus);
    c2 = std::max(c2, g->l_minus + 1);
  }
  const std::int64_t d_left = (ku - c) + (kv - c);
  const std::int64_t d_right = (c2 - ku) + (c2 - kv);
  return static_cast<std::uint64_t>(d_left + d_right - std::llabs(ku - kv));
}

std::unordered_map<DLVertex, std::uint64_t, DLVertexHash> bfs_distances(const DLVertex& source,
                                                                        std::uint64_t cap) {
  std::unordered_map<DLVertex, std::uint64_t, DLVertexHash> dist;
  std::deque<DLVertex> queue;
  dist.emplace(source, 0);
  queue.push_back(source);
  while (!queue.empty()) {
    DLVertex x = std::move(queue.front());
    queue.pop_front();
    const std::uint64_t d = dist.at(x);
    if (d == cap) continue;
    for (auto& y : neighbors(x)) {
      if (dist.emplace(y, d + 1).second) queue.push_back(std::move(y));
    }
  }
  return dist;
}

std::optional<std::uint64_t> bfs_distance(const DLVertex& u, const DLVertex& v, std::uint64_t cap) {
  if (u.config.modulus() != v.config.modulus()) throw std::domain_error("modulus mismatch");
  if (u == v) return 0;
  std::unordered_map<DLVertex, std::uint64_t, DLVertexHash> dist;
  std::deque<DLVertex> queue;
  dist.emplace(u, 0);
  queue.push_back(u);
  while (!queue.empty()) {
    DLVertex x = std::move(queue.front());
    queue.pop_front();
    const std::uint64_t d = dist.at(x);
    if (d == cap) continue;
    for (auto& y : neighbors(x)) {
      if (y == v) return d + 1;
      if (dist.emplace(y, d + 1).second) queue.push_back(std::move(y));
    }
  }
  return std::nullopt;
}

std::vector<DLVertex> ball(const DLVertex& center, std::uint64_t radius) {
  std::vector<DLVertex> order{center};
  std::unordered_map<DLVertex, std::uint64_t, DLVertexHash> dist{{center, 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint64_t d = dist.at(order[i]);
    if (d == radius) continue;
    for (auto& y : neighbors(order[i])) {
      if (dist.emplace(y, d + 1).second) order.push_back(std::move(y));
    }
  }
  return order;
}

std::vector<std::pair<std::size_t, std::size_t>> induced_edges(const std::vector<DLVertex>& vertices) {
  std::unordered_map<DLVertex, std::size_t, DLVertexHash> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index.emplace(vertices[i], i);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (const auto& w : neighbors(vertices[i])) {
      auto it = index.find(w);
      if (it != index.end() && i < it->second) edges.emplace_back(i, it->second);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::string format_vertex(const DLVertex& v) {
  return format_lamp_config(v.config) + "|" + std::to_string(v.cursor);
}

DLVertex parse_vertex(std::string_view text, std::uint32_t n) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw ParseError("vertex", text, text.size(), "'|'");
  DLVertex v;
  try {
    v.config = parse_lamp_config(text.substr(0, bar), n);
  } catch (const ParseError& e) {
    throw ParseError("vertex", text, e.position(), "config literal before '|'");
  }
  try {
    v.cursor = parse_int(text.substr(bar + 1), "cursor");
  } catch (const ParseError& e) {
    throw ParseError("vertex", text, bar + 1 + e.position(), "integer cursor after '|'");
  }
  return v;
}

namespace {
constexpr const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3",
                                    "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd",
                                    "#ccebc5", "#ffed6f"};
}

std::string export_dot(const std::vector<DLVertex>& vertices,
                       const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                       const DotOptions& options) {
  std::ostringstream out;
  out << "graph " << options.graph_name << " {\n";
  std::map<LampConfig, std::size_t> color_of;
  for (const auto& v : vertices) {
    out << "  \"" << format_vertex(v) << "\"";
    if (options.color_cosets) {
      const auto [it, fresh] = color_of.emplace(v.config, color_of.size());
      const std::size_t c = it->second;
      out << " [style=filled, fillcolor=\"" << kPalette[c % std::size(kPalette)]
          << "\", coset=" << c << "]";
    }
    out << ";\n";
  }
  for (const auto& [a, b] : edges) {
    if (a >= vertices.size() || b >= vertices.size()) {
      throw std::out_of_range("export_dot: edge endpoint outside vertex list");
    }
    out << "  \"" << format_vertex(vertices[a]) << "\" -- \"" << format_vertex(vertices[b]) << "\";\n";
  }
  out << "}\n";
  return out.str();
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}
}  // namespace

std::string distance_table_csv(const std::vector<DLVertex>& vertices, std::uint64_t bfs_cap) {
  std::ostringstream out;
  out << "u,v,closed_form,bfs\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto dist = bfs_distances(vertices[i], bfs_cap);
    for (std::size_t j = i; j < vertices.size(); ++j) {
      auto it = dist.find(vertices[j]);
      out << csv_field(format_vertex(vertices[i])) << ',' << csv_field(format_vertex(vertices[j]))
          << ',' << dl_distance(vertices[i], vertices[j]) << ','
          << (it == dist.end() ? std::string() : std::to_string(it->second)) << '\n';
    }
  }
  return out.str();
}

}  // namespace lampqi
