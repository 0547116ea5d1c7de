#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "nestkit/decomp.hpp"
#include "nestkit/gens.hpp"
#include "nestkit/nest.hpp"

using namespace nestkit;

namespace {

PlaneGraph k4() {
  return PlaneGraph::from_faces(4, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 2, 1}}, 3);
}

// annulus of `depth` aligned R-gon rings around a hub; the outer R-gon is
// geodesic in the whole graph, which makes the fixture an endgame-shaped disk
PlaneGraph ring_disk(int R, int depth) {
  auto at = [R](int layer, int j) { return layer * R + ((j % R) + R) % R; };
  const int hub = (depth + 1) * R;
  std::vector<std::vector<int>> walks;
  for (int layer = 0; layer < depth; ++layer)
    for (int j = 0; j < R; ++j) {
      walks.push_back({at(layer, j), at(layer, j + 1), at(layer + 1, j + 1)});
      walks.push_back({at(layer, j), at(layer + 1, j + 1), at(layer + 1, j)});
    }
  for (int j = 0; j < R; ++j) walks.push_back({at(depth, j), at(depth, j + 1), hub});
  std::vector<int> outer;
  for (int j = R - 1; j >= 0; --j) outer.push_back(j);
  walks.push_back(outer);
  return PlaneGraph::from_faces(hub + 1, walks, static_cast<int>(walks.size()) - 1);
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

void check_refine_outcome(const PlaneGraph& g, int k) {
  const DecompOutcome out = refine(g, k);
  REQUIRE(out.zero_nest.has_value() != out.decomposition.has_value());
  if (out.zero_nest) {
    const auto rep = verify_nest(g, out.zero_nest->cycles);
    REQUIRE(rep.ok);
    CHECK(rep.s == 0);
    CHECK(out.zero_nest->size() == k);
  } else {
    const auto& d = *out.decomposition;
    CHECK(validate_decomposition(g, d));
    CHECK(validate_decomposition(g, d, true));
    CHECK(d.width() <= 12 * k - 1);
    for (const auto& nd : d.nodes) {
      CHECK(static_cast<int>(nd.children.size()) + (nd.parent >= 0 ? 1 : 0) <= 3);
      if (nd.ring) CHECK(nd.ring->length() <= 8 * k);
    }
    for (int t : d.leaves()) CHECK(d.nodes[t].bag == disk_vertices(g, *d.nodes[t].ring));
  }
}

}  // namespace

TEST_CASE("initial decomposition has two nodes joined by the outer triangle") {
  const auto g = k4();
  const auto d = initial_decomposition(g);
  REQUIRE(d.nodes.size() == 2);
  CHECK(validate_decomposition(g, d));
  CHECK(d.width() == 3);
  CHECK(d.nodes[0].bag == std::vector<int>{0, 1, 2});
  CHECK(d.nodes[1].bag == iota_vec(4));
  REQUIRE(d.nodes[1].ring.has_value());
  CHECK(d.nodes[1].ring->sorted_vertices() == std::vector<int>{0, 1, 2});
  CHECK(d.is_leaf(1));
  CHECK(d.leaves() == std::vector<int>{1});

  const auto oct = gens::bipyramid(4);
  CHECK(initial_decomposition(oct).width() == 5);
}

TEST_CASE("validation pinpoints each broken condition") {
  const auto g = k4();
  const CycleInG outer = *initial_decomposition(g).nodes[1].ring;

  auto base = initial_decomposition(g);

  SUBCASE("missing vertex") {
    base.nodes[1].bag = {0, 1, 2};
    const auto rep = validate_decomposition(g, base);
    REQUIRE(!rep.ok);
    CHECK(rep.message.find("vertex 3") != std::string::npos);
    CHECK(rep.message.find("no bag") != std::string::npos);
  }
  SUBCASE("missing edge") {
    base.nodes[1].bag = {0, 1, 3};
    const auto rep = validate_decomposition(g, base);
    REQUIRE(!rep.ok);
    CHECK(rep.message.find("edge") != std::string::npos);
  }
  SUBCASE("disconnected vertex trace") {
    base.nodes.resize(3);
    base.nodes[0].bag = {0, 1, 2, 3};
    base.nodes[0].children = {1};
    base.nodes[1].parent = 0;
    base.nodes[1].bag = {0, 1, 2};
    base.nodes[1].ring = outer;
    base.nodes[1].children = {2};
    base.nodes[2].parent = 1;
    base.nodes[2].bag = {0, 1, 2, 3};
    base.nodes[2].ring = outer;
    const auto rep = validate_decomposition(g, base);
    REQUIRE(!rep.ok);
    CHECK(rep.message.find("vertex 3") != std::string::npos);
    CHECK(rep.message.find("disconnected") != std::string::npos);
  }
  SUBCASE("bags intersect off the ring") {
    base.nodes[1].ring = CycleInG::from_vertices(g, {0, 1, 3});
    const auto rep = validate_decomposition(g, base);
    REQUIRE(!rep.ok);
    CHECK(rep.message.find("off their ring") != std::string::npos);
  }
  SUBCASE("repeated ring on a root path") {
    base.nodes.resize(3);
    base.nodes[1].bag = {0, 1, 2, 3};
    base.nodes[1].children = {2};
    base.nodes[2].parent = 1;
    base.nodes[2].bag = {0, 1, 2};
    base.nodes[2].ring = outer;
    const auto rep = validate_decomposition(g, base);
    REQUIRE(!rep.ok);
    CHECK(rep.message.find("repeats") != std::string::npos);
  }
  SUBCASE("ring escaping its parent disk") {
    base.nodes.resize(3);
    base.nodes[0].bag = {0, 1, 3};
    base.nodes[1].bag = {0, 1, 2, 3};
    base.nodes[1].ring = CycleInG::from_vertices(g, {0, 1, 3});
    base.nodes[1].children = {2};
    base.nodes[2].parent = 1;
    base.nodes[2].bag = {0, 1, 2};
    base.nodes[2].ring = outer;
    const auto rep = validate_decomposition(g, base);
    REQUIRE(!rep.ok);
    CHECK(rep.message.find("leaves the disk") != std::string::npos);
  }
  SUBCASE("untouched decomposition is fine") {
    CHECK(validate_decomposition(g, base));
    CHECK(validate_decomposition(g, base, true));
  }
}

TEST_CASE("smallest triangulation refines to width three") {
  const auto g = k4();
  const auto out = refine(g, 1);
  REQUIRE(out.decomposition.has_value());
  CHECK(out.decomposition->width() <= 3);
  check_refine_outcome(g, 1);
}

TEST_CASE("refinement outcome verifies across generator families") {
  check_refine_outcome(gens::concentric(6), 1);
  check_refine_outcome(gens::concentric(12), 2);
  check_refine_outcome(gens::one_nest(6), 1);
  check_refine_outcome(gens::bipyramid(10), 2);
  check_refine_outcome(gens::apollonian(3, 7), 1);
  check_refine_outcome(gens::random_triangulation(24, 5), 1);
  check_refine_outcome(gens::grid_triangulation(8, 8), 1);
}

TEST_CASE("refinement is deterministic") {
  const auto g = gens::random_triangulation(30, 11);
  const auto a = refine(g, 1);
  const auto b = refine(g, 1);
  REQUIRE(a.zero_nest.has_value() == b.zero_nest.has_value());
  if (a.decomposition) {
    REQUIRE(a.decomposition->nodes.size() == b.decomposition->nodes.size());
    for (size_t t = 0; t < a.decomposition->nodes.size(); ++t) {
      CHECK(a.decomposition->nodes[t].bag == b.decomposition->nodes[t].bag);
      CHECK(a.decomposition->nodes[t].children == b.decomposition->nodes[t].children);
    }
  } else {
    for (size_t i = 0; i < a.zero_nest->cycles.size(); ++i)
      CHECK(a.zero_nest->cycles[i].canonical() == b.zero_nest->cycles[i].canonical());
  }
}

TEST_CASE("wide grids force a nest out of the refinement") {
  const auto g = gens::grid_triangulation(20, 20);
  const auto out = refine(g, 1);
  REQUIRE(out.zero_nest.has_value());
  const auto rep = verify_nest(g, out.zero_nest->cycles);
  REQUIRE(rep.ok);
  CHECK(rep.s == 0);
  CHECK(out.zero_nest->size() == 1);
}

TEST_CASE("radial peel recovers the planted rings of the concentric family") {
  const int m = 5;
  const auto g = gens::concentric(m);
  const auto cycles = nested_cycles_radial(g);
  REQUIRE(static_cast<int>(cycles.size()) == m);
  for (int r = 0; r < m; ++r)
    CHECK(cycles[r].sorted_vertices() == std::vector<int>{3 * r, 3 * r + 1, 3 * r + 2});
  const auto rep = verify_nest(g, cycles);
  REQUIRE(rep.ok);
  CHECK(rep.s == 0);
}

TEST_CASE("radial peel output always verifies as a vertex-disjoint nest") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto g = gens::random_triangulation(40, seed);
    const auto cycles = nested_cycles_radial(g);
    REQUIRE(!cycles.empty());
    const auto rep = verify_nest(g, cycles);
    REQUIRE(rep.ok);
    CHECK(rep.s == 0);
  }
  const auto disk = ring_disk(8, 2);
  const auto cycles = nested_cycles_radial(disk);
  REQUIRE(static_cast<int>(cycles.size()) >= 2);
  CHECK(verify_nest(disk, cycles).ok);
}

TEST_CASE("endgame on a geodesic ring disk yields a verified nest") {
  SUBCASE("one ring requested") {
    const auto h = ring_disk(8, 2);
    const auto c = CycleInG::from_vertices(h, iota_vec(8));
    const auto nest = zero_nest_endgame(h, c, 1);
    CHECK(nest.size() == 1);
    const auto rep = verify_nest(h, nest.cycles);
    REQUIRE(rep.ok);
    CHECK(rep.s == 0);
  }
  SUBCASE("two rings requested") {
    const auto h = ring_disk(16, 4);
    const auto c = CycleInG::from_vertices(h, iota_vec(16));
    const auto nest = zero_nest_endgame(h, c, 2);
    CHECK(nest.size() == 2);
    const auto rep = verify_nest(h, nest.cycles);
    REQUIRE(rep.ok);
    CHECK(rep.s == 0);
  }
}

TEST_CASE("mesh construction rejects malformed inputs") {
  const auto h = ring_disk(8, 2);
  const auto c = CycleInG::from_vertices(h, iota_vec(8));
  CHECK_THROWS_AS(zero_nest_endgame(h, c, 2), Error);           // ring is 8, not 16
  CHECK_THROWS_AS(zero_nest_from_mesh(h, c, {}, {}, 1), Error);  // no paths at all
}
