#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "nestkit/gens.hpp"
#include "nestkit/maxflow.hpp"
#include "nestkit/oracle.hpp"

using namespace nestkit;

namespace {

PlaneGraph wheel(int rim) {
  std::vector<std::vector<int>> walks;
  for (int j = 0; j < rim; ++j) walks.push_back({j, (j + 1) % rim, rim});
  std::vector<int> outer;
  for (int j = rim - 1; j >= 0; --j) outer.push_back(j);
  walks.push_back(outer);
  return PlaneGraph::from_faces(rim + 1, walks, rim);
}

void check_family(const PlaneGraph& g, const PathFamily& fam, const std::vector<int>& sources,
                  const std::vector<int>& sinks, PathMode mode) {
  REQUIRE(static_cast<int>(fam.paths.size()) == fam.count);
  std::set<int> src(sources.begin(), sources.end()), snk(sinks.begin(), sinks.end());
  std::set<int> used_vertices;
  std::set<std::pair<int, int>> used_edges;
  for (const auto& p : fam.paths) {
    REQUIRE(p.size() >= 2);
    CHECK(src.count(p.front()) == 1);
    CHECK(snk.count(p.back()) == 1);
    for (size_t i = 0; i + 1 < p.size(); ++i) {
      CHECK(g.dart_between(p[i], p[i + 1]).has_value());
      auto e = std::minmax(p[i], p[i + 1]);
      CHECK(used_edges.insert({e.first, e.second}).second);
    }
    if (mode == PathMode::VertexDisjoint)
      for (int v : p) CHECK(used_vertices.insert(v).second);
    if (mode == PathMode::InternallyDisjoint) {
      for (size_t i = 1; i + 1 < p.size(); ++i) {
        CHECK(used_vertices.insert(p[i]).second);
        CHECK((!src.count(p[i]) && !snk.count(p[i])));
      }
    }
  }
  // the cut certificate really separates
  std::vector<char> blocked_v(g.n(), 0);
  std::set<int> blocked_e;
  if (mode != PathMode::EdgeDisjoint) {
    CHECK(static_cast<int>(fam.cut_vertices.size()) == fam.count);
    for (int v : fam.cut_vertices) blocked_v[v] = 1;
    if (mode == PathMode::InternallyDisjoint)
      for (int v : fam.cut_vertices) CHECK((!src.count(v) && !snk.count(v)));
  } else {
    CHECK(static_cast<int>(fam.cut_edges.size()) == fam.count);
    for (int e : fam.cut_edges) blocked_e.insert(e);
  }
  std::vector<char> vis(g.n(), 0);
  std::vector<int> stack;
  for (int a : sources)
    if (!blocked_v[a]) {
      vis[a] = 1;
      stack.push_back(a);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int d : g.out_darts(v)) {
      if (blocked_e.count(PlaneGraph::edge_of(d))) continue;
      int u = g.head(d);
      if (!blocked_v[u] && !vis[u]) {
        vis[u] = 1;
        stack.push_back(u);
      }
    }
  }
  for (int b : sinks) CHECK((blocked_v[b] || !vis[b]));
}

void agree_with_oracle(const PlaneGraph& g, int a, int b, bool adjacent) {
  std::vector<PathMode> modes{PathMode::EdgeDisjoint};
  if (!adjacent) modes.push_back(PathMode::InternallyDisjoint);
  for (auto mode : modes) {
    auto fam = disjoint_paths(g, {a}, {b}, mode);
    check_family(g, fam, {a}, {b}, mode);
    CHECK(fam.count == oracle::max_disjoint_paths(g, a, b, mode != PathMode::EdgeDisjoint));
  }
}

}  // namespace

TEST_CASE("wheel rim to rim") {
  auto g = wheel(6);
  agree_with_oracle(g, 0, 3, false);
  agree_with_oracle(g, 0, 6, true);
  auto fam = disjoint_paths(g, {0}, {3}, PathMode::InternallyDisjoint);
  CHECK(fam.count == 3);
  // a lone source admits exactly one fully disjoint path
  CHECK(disjoint_paths(g, {0}, {3}, PathMode::VertexDisjoint).count == 1);
}

TEST_CASE("small fixtures agree with the exhaustive count") {
  agree_with_oracle(gens::concentric(1), 0, 3, true);
  agree_with_oracle(gens::bipyramid(3), 3, 4, false);
  agree_with_oracle(wheel(5), 0, 2, false);
}

TEST_CASE("bipyramid poles need the whole equator") {
  auto g = gens::bipyramid(10);
  auto fam = disjoint_paths(g, {10}, {11}, PathMode::InternallyDisjoint);
  check_family(g, fam, {10}, {11}, PathMode::InternallyDisjoint);
  CHECK(fam.count == 10);
  auto fe = disjoint_paths(g, {10}, {11}, PathMode::EdgeDisjoint);
  check_family(g, fe, {10}, {11}, PathMode::EdgeDisjoint);
  CHECK(fe.count == 10);
}

TEST_CASE("ring sets are separated by the middle ring") {
  auto g = gens::concentric(3);
  std::vector<int> ring0{0, 1, 2}, ring2{6, 7, 8};
  auto fam = disjoint_paths(g, ring0, ring2, PathMode::VertexDisjoint);
  check_family(g, fam, ring0, ring2, PathMode::VertexDisjoint);
  CHECK(fam.count == 3);
  // middle ring is one valid witness; any certified cut of size three works
  CHECK(fam.cut_vertices.size() == 3);
}

TEST_CASE("set to set across a grid") {
  auto g = gens::grid_triangulation(4, 4);
  std::vector<int> bottom, top;
  for (int i = 0; i <= 4; ++i) {
    bottom.push_back(i);
    top.push_back(i + 5 * 4);
  }
  // five columns, fully disjoint, terminals consumed
  auto fam = disjoint_paths(g, bottom, top, PathMode::VertexDisjoint);
  check_family(g, fam, bottom, top, PathMode::VertexDisjoint);
  CHECK(fam.count == 5);
  // terminals shared: the apex adds a sixth route
  auto shared = disjoint_paths(g, bottom, top, PathMode::InternallyDisjoint);
  check_family(g, shared, bottom, top, PathMode::InternallyDisjoint);
  CHECK(shared.count == 6);
}

TEST_CASE("input validation") {
  auto g = wheel(4);
  CHECK_THROWS_AS(disjoint_paths(g, {0}, {0}, PathMode::VertexDisjoint), Error);
  CHECK_THROWS_AS(disjoint_paths(g, {}, {1}, PathMode::VertexDisjoint), Error);
  CHECK_THROWS_AS(disjoint_paths(g, {0}, {99}, PathMode::EdgeDisjoint), Error);
  CHECK_THROWS_AS(disjoint_paths(g, {0}, {1}, PathMode::InternallyDisjoint), Error);
}
