#include "nestkit/gens.hpp"

#include <array>
#include <unordered_map>
#include <unordered_set>

namespace nestkit::gens {

namespace {

int ring_v(int r, int j) { return 3 * r + (j % 3); }

std::vector<std::vector<int>> to_walks(const std::vector<std::array<int, 3>>& faces) {
  std::vector<std::vector<int>> walks;
  walks.reserve(faces.size());
  for (const auto& f : faces) walks.push_back({f[0], f[1], f[2]});
  return walks;
}

}  // namespace

PlaneGraph concentric(int rings) {
  expect(rings >= 1, Errc::bad_input, "need at least one ring");
  int apex = 3 * rings;
  std::vector<std::vector<int>> walks;
  for (int r = 0; r + 1 < rings; ++r)
    for (int j = 0; j < 3; ++j) {
      walks.push_back({ring_v(r, j), ring_v(r + 1, j + 1), ring_v(r + 1, j)});
      walks.push_back({ring_v(r, j), ring_v(r, j + 1), ring_v(r + 1, j + 1)});
    }
  for (int j = 0; j < 3; ++j)
    walks.push_back({ring_v(rings - 1, j), ring_v(rings - 1, j + 1), apex});
  walks.push_back({0, 2, 1});
  return PlaneGraph::from_faces(3 * rings + 1, walks, static_cast<int>(walks.size()) - 1);
}

std::vector<CycleInG> concentric_rings(const PlaneGraph& g, int rings) {
  std::vector<CycleInG> out;
  out.reserve(rings);
  for (int r = 0; r < rings; ++r)
    out.push_back(CycleInG::from_vertices(g, {ring_v(r, 0), ring_v(r, 1), ring_v(r, 2)}));
  return out;
}

PlaneGraph one_nest(int layers) {
  expect(layers >= 1, Errc::bad_input, "need at least one layer");
  const int x = 0;
  const int p = 2 * layers + 1;
  auto a = [](int i) { return 1 + 2 * i; };
  auto b = [](int i) { return 2 + 2 * i; };
  std::vector<std::vector<int>> walks;
  for (int i = 0; i + 1 < layers; ++i) {
    walks.push_back({b(i + 1), b(i), x});
    walks.push_back({b(i), b(i + 1), a(i + 1)});
    walks.push_back({a(i), b(i), a(i + 1)});
    walks.push_back({x, a(i), a(i + 1)});
  }
  walks.push_back({x, a(layers - 1), p});
  walks.push_back({a(layers - 1), b(layers - 1), p});
  walks.push_back({b(layers - 1), x, p});
  walks.push_back({x, b(0), a(0)});
  return PlaneGraph::from_faces(2 * layers + 2, walks, static_cast<int>(walks.size()) - 1);
}

std::vector<CycleInG> one_nest_cycles(const PlaneGraph& g, int layers) {
  std::vector<CycleInG> out;
  out.reserve(layers);
  for (int i = 0; i < layers; ++i)
    out.push_back(CycleInG::from_vertices(g, {0, 1 + 2 * i, 2 + 2 * i}));
  return out;
}

PlaneGraph bipyramid(int equator) {
  expect(equator >= 3, Errc::bad_input, "equator needs at least three vertices");
  int a = equator, b = equator + 1;
  std::vector<std::vector<int>> walks;
  for (int j = 0; j < equator; ++j) {
    walks.push_back({j, (j + 1) % equator, a});
    walks.push_back({(j + 1) % equator, j, b});
  }
  return PlaneGraph::from_faces(equator + 2, walks, 2 * (equator - 1) + 1);
}

std::vector<CycleInG> bipyramid_meridians(const PlaneGraph& g, int equator) {
  std::vector<CycleInG> out;
  for (int j = 0; 2 * j + 1 < equator; ++j)
    out.push_back(CycleInG::from_vertices(g, {equator, j, equator + 1, equator - 1 - j}));
  return out;
}

PlaneGraph grid_triangulation(int w, int h) {
  expect(w >= 1 && h >= 1, Errc::bad_input, "grid needs positive dimensions");
  auto v = [w](int i, int j) { return i + j * (w + 1); };
  std::vector<std::vector<int>> walks;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      walks.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      walks.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
    }
  std::vector<int> rim;
  for (int i = 0; i < w; ++i) rim.push_back(v(i, 0));
  for (int j = 0; j < h; ++j) rim.push_back(v(w, j));
  for (int i = w; i > 0; --i) rim.push_back(v(i, h));
  for (int j = h; j > 0; --j) rim.push_back(v(0, j));
  int z = (w + 1) * (h + 1);
  int B = static_cast<int>(rim.size());
  int first_apex = static_cast<int>(walks.size());
  for (int t = 0; t < B; ++t) walks.push_back({rim[(t + 1) % B], rim[t], z});
  return PlaneGraph::from_faces(z + 1, walks, first_apex);
}

PlaneGraph apollonian(int rounds, std::uint64_t seed) {
  expect(rounds >= 0, Errc::bad_input, "rounds must not be negative");
  SplitMix64 rng(seed);
  std::vector<std::array<int, 3>> faces = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
  int n = 4;
  for (int r = 0; r < rounds; ++r) {
    size_t count = faces.size();
    size_t forced = rng.below(count);
    std::vector<std::array<int, 3>> next;
    for (size_t f = 0; f < count; ++f) {
      bool split = f == forced || (rng.next() & 1);
      if (!split) {
        next.push_back(faces[f]);
        continue;
      }
      auto [u, v, w] = faces[f];
      int z = n++;
      next.push_back({u, v, z});
      next.push_back({v, w, z});
      next.push_back({w, u, z});
    }
    faces = std::move(next);
  }
  auto walks = to_walks(faces);
  walks.push_back({0, 2, 1});
  return PlaneGraph::from_faces(n, walks, static_cast<int>(walks.size()) - 1);
}

PlaneGraph random_triangulation(int n, std::uint64_t seed) {
  expect(n >= 4, Errc::bad_input, "need at least four vertices");
  SplitMix64 rng(seed);
  std::vector<std::array<int, 3>> faces = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
  for (int z = 4; z < n; ++z) {
    size_t f = rng.below(faces.size());
    auto [u, v, w] = faces[f];
    faces[f] = {u, v, z};
    faces.push_back({v, w, z});
    faces.push_back({w, u, z});
  }
  // bounded faces only; lookups that miss mean the outer face, those flips skip
  auto dkey = [n](int u, int v) { return static_cast<long long>(u) * n + v; };
  auto ekey = [n, dkey](int u, int v) { return dkey(std::min(u, v), std::max(u, v)); };
  std::unordered_map<long long, int> face_at;
  std::unordered_set<long long> edge_set;
  for (size_t f = 0; f < faces.size(); ++f)
    for (int c = 0; c < 3; ++c) {
      int u = faces[f][c], v = faces[f][(c + 1) % 3];
      face_at[dkey(u, v)] = static_cast<int>(f);
      edge_set.insert(ekey(u, v));
    }
  edge_set.insert(ekey(0, 2));
  long long attempts = 3LL * n;
  for (long long t = 0; t < attempts; ++t) {
    int f1 = static_cast<int>(rng.below(faces.size()));
    int c = static_cast<int>(rng.below(3));
    int u = faces[f1][c], v = faces[f1][(c + 1) % 3], a = faces[f1][(c + 2) % 3];
    auto it = face_at.find(dkey(v, u));
    if (it == face_at.end()) continue;
    int f2 = it->second;
    int b = -1;
    for (int x : faces[f2])
      if (x != u && x != v) b = x;
    if (b == a || edge_set.count(ekey(a, b))) continue;
    faces[f1] = {a, u, b};
    faces[f2] = {b, v, a};
    face_at.erase(dkey(u, v));
    face_at.erase(dkey(v, u));
    face_at[dkey(a, u)] = f1;
    face_at[dkey(u, b)] = f1;
    face_at[dkey(b, a)] = f1;
    face_at[dkey(b, v)] = f2;
    face_at[dkey(v, a)] = f2;
    face_at[dkey(a, b)] = f2;
    edge_set.erase(ekey(u, v));
    edge_set.insert(ekey(a, b));
  }
  auto walks = to_walks(faces);
  walks.push_back({0, 2, 1});
  return PlaneGraph::from_faces(n, walks, static_cast<int>(walks.size()) - 1);
}

}  // namespace nestkit::gens
