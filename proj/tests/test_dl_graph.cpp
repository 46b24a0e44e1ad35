#include <doctest.h>

#include <algorithm>
#include <set>

#include "lampqi/dl_graph.hpp"
#include "lampqi/text_format.hpp"

using namespace lampqi;

namespace {

DLVertex V(const char* s, std::uint32_t n = 2) { return parse_vertex(s, n); }

std::set<DLVertex> as_set(const std::vector<DLVertex>& vs) { return {vs.begin(), vs.end()}; }

// Right multiplication by (a^s t)^{+-1}: the Cayley graph edges.
std::set<DLVertex> cayley_neighbors(const DLVertex& g) {
  const std::uint32_t n = g.config.modulus();
  std::set<DLVertex> out;
  for (std::uint32_t s = 0; s < n; ++s) {
    LampConfig c(n);
    c.set(0, s);
    const DLVertex gen{c, 1};
    out.insert(dl_multiply(g, gen));
    out.insert(dl_multiply(g, dl_inverse(gen)));
  }
  return out;
}

}  // namespace

TEST_CASE("neighbors of the identity") {
  const auto nb = as_set(neighbors(V("|0")));
  CHECK(nb == std::set<DLVertex>{V("|1"), V("0:1|1"), V("|-1"), V("-1:1|-1")});
}

TEST_CASE("neighbors of ({0:1}, 0)") {
  const auto nb = as_set(neighbors(V("0:1|0")));
  CHECK(nb == std::set<DLVertex>{V("0:1|1"), V("|1"), V("0:1|-1"), V("-1:1,0:1|-1")});
}

TEST_CASE("neighbors equal right multiplication by the generators") {
  for (std::uint32_t n : {2u, 3u}) {
    for (const auto& v : ball(dl_identity(n), 3)) {
      const auto nb = neighbors(v);
      CHECK(nb.size() == 2 * n);
      CHECK(as_set(nb).size() == 2 * n);
      CHECK(as_set(nb) == cayley_neighbors(v));
    }
  }
}

TEST_CASE("DL(2,2) is 4-regular on the radius-4 ball") {
  for (const auto& v : ball(dl_identity(2), 4)) CHECK(neighbors(v).size() == 4);
}

TEST_CASE("group law") {
  const auto vs = ball(dl_identity(2), 2);
  for (const auto& a : vs) {
    CHECK(dl_multiply(a, dl_inverse(a)) == dl_identity(2));
    CHECK(dl_multiply(dl_inverse(a), a) == dl_identity(2));
    for (const auto& b : vs) {
      for (const auto& c : vs) CHECK(dl_multiply(dl_multiply(a, b), c) == dl_multiply(a, dl_multiply(b, c)));
    }
  }
  CHECK(dl_multiply(V("0:1|2"), V("0:1|1")) == V("0:1,2:1|3"));
}

TEST_CASE("dl_distance examples") {
  CHECK(dl_distance(V("|0"), V("|3")) == 3);
  CHECK(dl_distance(V("|0"), V("0:1|0")) == 2);
  CHECK(dl_distance(V("|0"), V("0:1,1:1|2")) == 2);
}

TEST_CASE("bfs_distance examples") {
  CHECK(bfs_distance(V("|0"), V("|1"), 5) == 1u);
  CHECK(bfs_distance(V("|0"), V("0:1|0"), 5) == 2u);
  CHECK_FALSE(bfs_distance(V("|0"), V("10:1|0"), 3));
  CHECK(bfs_distance(V("|0"), V("|0"), 0) == 0u);
}

TEST_CASE("closed form equals BFS on the radius-3 ball, n = 2 and 3") {
  for (std::uint32_t n : {2u, 3u}) {
    const auto vs = ball(dl_identity(n), 3);
    for (const auto& u : vs) {
      const auto d = bfs_distances(u, 6);
      for (const auto& v : vs) {
        REQUIRE(d.count(v));
        CHECK(dl_distance(u, v) == d.at(v));
      }
    }
  }
}

TEST_CASE("distance is left invariant") {
  const auto vs = ball(dl_identity(2), 3);
  const DLVertex g = V("-1:1,2:1|3");
  for (const auto& u : vs) {
    for (const auto& v : vs) CHECK(dl_distance(dl_multiply(g, u), dl_multiply(g, v)) == dl_distance(u, v));
  }
}

TEST_CASE("ball sizes") {
  CHECK(ball(dl_identity(2), 0) == std::vector<DLVertex>{dl_identity(2)});
  const std::vector<std::size_t> expected{1, 5, 15, 39, 92, 208};
  for (std::size_t r = 0; r < expected.size(); ++r) CHECK(ball(dl_identity(2), r).size() == expected[r]);
  // Radius-2 membership matches the closed form on a superset.
  const auto b2 = as_set(ball(dl_identity(2), 2));
  for (const auto& v : ball(dl_identity(2), 4)) CHECK((dl_distance(dl_identity(2), v) <= 2) == (b2.count(v) == 1));
}

TEST_CASE("ball is in BFS order") {
  const auto vs = ball(V("1:1|-2"), 4);
  std::uint64_t last = 0;
  for (const auto& v : vs) {
    const auto d = dl_distance(vs.front(), v);
    CHECK(d >= last);
    last = d;
  }
}

TEST_CASE("cosets") {
  CHECK(coset_of(V("0:1|7")) == parse_lamp_config("0:1", 2));
  CHECK(coset_of(V("|0")) == coset_of(V("|5")));
  CHECK(coset_of(V("0:1|0")) != coset_of(V("|0")));
}

TEST_CASE("tree coordinates") {
  const DLVertex v = V("-2:1,0:1,3:1|1");
  const auto l = tree_coord(v, TreeSide::left);
  const auto r = tree_coord(v, TreeSide::right);
  CHECK(l.height == 1);
  CHECK(r.height == -1);
  CHECK(l.germ == parse_lamp_config("-2:1,0:1", 2));
  CHECK(r.germ == parse_lamp_config("3:1", 2));
}

TEST_CASE("DOT export") {
  const auto b1 = ball(dl_identity(2), 1);
  const std::string dot = export_dot(b1, induced_edges(b1));
  CHECK(dot.rfind("graph dl {\n", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 1 + 5 + 4 + 1);
  CHECK(dot.find("\"|0\" -- \"|1\";") != std::string::npos);
  CHECK(export_dot({}, {}) == "graph dl {\n}\n");

  const auto b2 = ball(dl_identity(2), 2);
  const std::string colored = export_dot(b2, induced_edges(b2), {true, "dl"});
  std::set<LampConfig> cosets;
  for (const auto& v : b2) cosets.insert(coset_of(v));
  std::set<std::string> colors;
  for (std::size_t pos = colored.find("coset="); pos != std::string::npos; pos = colored.find("coset=", pos + 1)) {
    colors.insert(colored.substr(pos, colored.find(']', pos) - pos));
  }
  CHECK(colors.size() == cosets.size());
}

TEST_CASE("distance CSV") {
  const auto b1 = ball(dl_identity(2), 1);
  const std::string csv = distance_table_csv(b1, 2);
  CHECK(csv.rfind("u,v,closed_form,bfs\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 15);
  CHECK(csv.find("\"-1:1|-1\"") == std::string::npos);
  const auto b = std::vector<DLVertex>{V("0:1,1:1|0")};
  CHECK(distance_table_csv(b, 1).find("\"0:1,1:1|0\",\"0:1,1:1|0\",0,0") != std::string::npos);
}

TEST_CASE("vertex literals") {
  CHECK(format_vertex(V("3:1,-1:1|-4")) == "-1:1,3:1|-4");
  CHECK_THROWS_AS(V("0:1"), ParseError);
  CHECK_THROWS_AS(V("0:1|x"), ParseError);
  CHECK_THROWS_AS(V("0:3|0"), ParseError);
}
