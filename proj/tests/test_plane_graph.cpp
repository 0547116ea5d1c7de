#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nestkit/plane_graph.hpp"

using namespace nestkit;

namespace {

PlaneGraph k4() {
  // tetrahedron, vertex 3 in the middle of triangle 0,1,2
  std::vector<std::vector<int>> walks = {
      {0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 2, 1}};
  return PlaneGraph::from_faces(4, walks, 3);
}

PlaneGraph wheel(int rim) {
  // hub = rim, rim vertices 0..rim-1, outer face is the rim cycle
  std::vector<std::vector<int>> walks;
  for (int j = 0; j < rim; ++j) walks.push_back({j, (j + 1) % rim, rim});
  std::vector<int> outer;
  for (int j = rim - 1; j >= 0; --j) outer.push_back(j);
  walks.push_back(outer);
  return PlaneGraph::from_faces(rim + 1, walks, rim);
}

}  // namespace

TEST_CASE("triangle embeds with two faces") {
  auto g = PlaneGraph::from_faces(3, {{0, 1, 2}, {0, 2, 1}}, 1);
  CHECK(g.n() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.face_count() == 2);
  CHECK(g.is_simple());
  CHECK(is_triangulation(g));
  CHECK(g.face_len(g.outer_face()) == 3);
}

TEST_CASE("k4 from faces") {
  auto g = k4();
  CHECK(g.n() == 4);
  CHECK(g.edge_count() == 6);
  CHECK(g.face_count() == 4);
  CHECK(is_triangulation(g));
  for (int v = 0; v < 4; ++v) CHECK(g.degree(v) == 3);
  // twin structure and face closure
  for (int d = 0; d < g.dart_count(); ++d) {
    CHECK(PlaneGraph::twin(PlaneGraph::twin(d)) == d);
    CHECK(g.origin(d) == g.head(PlaneGraph::twin(d)));
    CHECK(g.face_of(g.face_next(d)) == g.face_of(d));
  }
}

TEST_CASE("quad face is not a triangulation") {
  auto g = PlaneGraph::from_faces(4, {{0, 1, 2, 3}, {3, 2, 1, 0}}, 1);
  CHECK(g.face_count() == 2);
  CHECK_FALSE(is_triangulation(g));
}

TEST_CASE("from_rotation matches from_faces on k4") {
  // counterclockwise neighbor lists read off the embedding above
  auto a = k4();
  std::vector<std::vector<int>> nbrs(4);
  for (int v = 0; v < 4; ++v) nbrs[v] = a.neighbors(v);
  std::vector<std::vector<int>> eids;
  auto b = PlaneGraph::from_rotation(4, nbrs, {0, 2, 1}, &eids);
  CHECK(b.n() == 4);
  CHECK(b.edge_count() == 6);
  CHECK(b.face_count() == 4);
  CHECK(b.face_len(b.outer_face()) == 3);
  for (int v = 0; v < 4; ++v) {
    CHECK(eids[v].size() == 3);
    // rotation order survives the round trip up to cyclic shift
    auto got = b.neighbors(v);
    bool match = false;
    for (size_t s = 0; s < got.size() && !match; ++s) {
      bool ok = true;
      for (size_t i = 0; i < got.size(); ++i)
        if (got[(s + i) % got.size()] != nbrs[v][i]) ok = false;
      match = ok;
    }
    CHECK(match);
  }
}

TEST_CASE("from_rotation accepts the outer cycle reversed") {
  auto a = k4();
  std::vector<std::vector<int>> nbrs(4);
  for (int v = 0; v < 4; ++v) nbrs[v] = a.neighbors(v);
  auto b = PlaneGraph::from_rotation(4, nbrs, {1, 2, 0});
  CHECK(b.face_len(b.outer_face()) == 3);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(PlaneGraph::from_faces(3, {{0, 1, 2}, {0, 1, 2}}, 0), Error);
  CHECK_THROWS_AS(PlaneGraph::from_faces(3, {{0, 1, 2}}, 0), Error);  // one-sided edges
  CHECK_THROWS_AS(PlaneGraph::from_faces(2, {{0, 1, 2}, {0, 2, 1}}, 0), Error);
  CHECK_THROWS_AS(PlaneGraph::from_rotation(4, {{1}, {0}, {3}, {2}}, {0, 1}), Error);
  // K5 rotation systems are never spherical
  std::vector<std::vector<int>> k5(5);
  for (int v = 0; v < 5; ++v)
    for (int u = 0; u < 5; ++u)
      if (u != v) k5[v].push_back(u);
  CHECK_THROWS_AS(PlaneGraph::from_rotation(5, k5, {0, 1, 2}), Error);
  try {
    PlaneGraph::from_faces(3, {{0, 1, 2}, {0, 1, 2}}, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_input);
  }
}

TEST_CASE("cycle construction and canonical form") {
  auto g = k4();
  auto c = CycleInG::from_vertices(g, {2, 0, 1});
  CHECK(c.length() == 3);
  CHECK(c.contains_vertex(0));
  CHECK_FALSE(c.contains_vertex(3));
  CHECK(c.index_of(2) == 0);
  auto c2 = CycleInG::from_vertices(g, {1, 0, 2});
  CHECK(c.canonical() == c2.canonical());
  CHECK(c.canonical() == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(CycleInG::from_vertices(g, {0, 1, 0, 2}), Error);
}

TEST_CASE("disk classification on k4") {
  auto g = k4();
  auto c = CycleInG::from_vertices(g, {0, 1, 2});
  auto info = disk_info(g, c);
  CHECK(info.inside_face_count == 3);
  CHECK(info.vertex_side[3] == Side::Inside);
  CHECK(info.vertex_side[0] == Side::OnCycle);
  CHECK(disk_vertices(g, c) == std::vector<int>{0, 1, 2, 3});

  auto small = CycleInG::from_vertices(g, {0, 1, 3});
  auto si = disk_info(g, small);
  CHECK(si.inside_face_count == 1);
  CHECK(si.vertex_side[2] == Side::Outside);
  CHECK(disk_vertices(g, small) == std::vector<int>{0, 1, 3});
}

TEST_CASE("nesting on the wheel") {
  auto g = wheel(6);
  auto rim = CycleInG::from_vertices(g, {0, 1, 2, 3, 4, 5});
  auto tri = CycleInG::from_vertices(g, {0, 1, 6});
  CHECK(is_nested(g, rim, tri));
  CHECK_FALSE(is_nested(g, tri, rim));
  CHECK(is_nested(g, rim, rim));
}

TEST_CASE("cycle metric on the wheel rim") {
  auto g = wheel(6);
  auto rim = CycleInG::from_vertices(g, {0, 1, 2, 3, 4, 5});
  auto m = cycle_metric(g, rim, 0, 3);
  CHECK(m.arc_dist == 3);
  CHECK(m.graph_dist == 2);  // through the hub
  CHECK_FALSE(is_geodesic_cycle(g, rim));
  auto tri = CycleInG::from_vertices(g, {0, 1, 6});
  CHECK(is_geodesic_cycle(g, tri));
  CHECK_THROWS_AS(cycle_metric(g, rim, 0, 6), Error);
}

TEST_CASE("with_outer_face relabels sides") {
  auto g = k4();
  auto c = CycleInG::from_vertices(g, {0, 1, 2});
  auto inner_face = g.find_face_with_vertices({0, 1, 3});
  REQUIRE(inner_face.has_value());
  auto flipped = g.with_outer_face(*inner_face);
  auto info = disk_info(flipped, c);
  // same curve, opposite side is now the disk
  CHECK(info.inside_face_count == 1);
  CHECK(info.vertex_side[3] == Side::Outside);
}

TEST_CASE("disk subgraph cuts a wheel sector") {
  auto g = wheel(8);
  auto c = CycleInG::from_vertices(g, {0, 1, 2, 8});
  auto sub = disk_subgraph(g, c);
  CHECK(sub.graph.n() == 4);
  CHECK(sub.graph.edge_count() == 5);
  CHECK(sub.graph.face_count() == 3);
  CHECK(sub.graph.face_len(sub.graph.outer_face()) == 4);
  // maps invert each other
  for (int v = 0; v < sub.graph.n(); ++v) CHECK(sub.from_parent[sub.to_parent[v]] == v);
  for (int d = 0; d < sub.graph.dart_count(); ++d) {
    int pd = sub.dart_to_parent[d];
    CHECK(pd >= 0);
    CHECK(sub.dart_from_parent[pd] == d);
    CHECK(sub.to_parent[sub.graph.origin(d)] == g.origin(pd));
  }
  // boundary darts trace c inside the copy
  CHECK(sub.boundary_darts.size() == 4);
  for (size_t i = 0; i < sub.boundary_darts.size(); ++i) {
    CHECK(sub.to_parent[sub.graph.origin(sub.boundary_darts[i])] == c.vertices()[i]);
  }
  CHECK(sub.graph.face_of(sub.boundary_darts[0]) != sub.graph.outer_face());
}

TEST_CASE("disk subgraph of the full graph keeps everything") {
  auto g = wheel(6);
  auto rim = CycleInG::from_vertices(g, {0, 1, 2, 3, 4, 5});
  auto sub = disk_subgraph(g, rim);
  CHECK(sub.graph.n() == g.n());
  CHECK(sub.graph.edge_count() == g.edge_count());
  CHECK(sub.graph.face_count() == g.face_count());
}
