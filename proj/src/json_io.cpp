#include "nestkit/json_io.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

#include "json.hpp"

namespace nestkit {
namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  expect(!j.is_discarded(), Errc::bad_input, "malformed JSON");
  return j;
}

template <typename T>
T field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    fail(Errc::bad_input, std::string("missing or ill-typed field: ") + key);
  }
}

// Lexicographically minimal rotation of a face walk. Emission must not
// depend on which dart the face orbit happens to start at.
std::vector<int> canonical_walk(std::vector<int> walk) {
  const std::size_t L = walk.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < L; ++s)
    for (std::size_t i = 0; i < L; ++i) {
      const int a = walk[(s + i) % L], b = walk[(best + i) % L];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  std::rotate(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(best), walk.end());
  return walk;
}

bool cyclic_match(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t L = a.size();
  if (L != b.size() || L == 0) return false;
  for (std::size_t s = 0; s < L; ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < L && ok; ++i) ok = a[(s + i) % L] == b[i];
    if (ok) return true;
  }
  return false;
}

std::vector<int> face_walk(const PlaneGraph& g, int f) {
  std::vector<int> w;
  for (int d : g.face_darts(f)) w.push_back(g.origin(d));
  return w;
}

// Either orientation is accepted; the embedding fixes which one is real.
int match_face(const PlaneGraph& g, const std::vector<int>& walk) {
  for (int f = 0; f < g.face_count(); ++f) {
    std::vector<int> fw = face_walk(g, f);
    const std::vector<int> rev(fw.rbegin(), fw.rend());
    if (cyclic_match(fw, walk) || cyclic_match(rev, walk)) return f;
  }
  fail(Errc::bad_input, "outer_face does not match any face of the embedding");
}

void emit_embedding(Json& j, const PlaneGraph& g) {
  const int n = g.n();
  // Rows start at their lexicographically smallest rotation, neighbor ties
  // broken by edge, so emission does not depend on internal dart numbering.
  std::vector<std::vector<int>> rows(n);
  for (int v = 0; v < n; ++v) {
    const auto& od = g.out_darts(v);
    const std::size_t L = od.size();
    if (L == 0) continue;
    auto less_at = [&](std::size_t s, std::size_t b) {
      for (std::size_t i = 0; i < L; ++i) {
        const int ds = od[(s + i) % L], db = od[(b + i) % L];
        if (g.head(ds) != g.head(db)) return g.head(ds) < g.head(db);
        if (ds / 2 != db / 2) return ds / 2 < db / 2;
      }
      return false;
    };
    std::size_t best = 0;
    for (std::size_t s = 1; s < L; ++s)
      if (less_at(s, best)) best = s;
    for (std::size_t i = 0; i < L; ++i) rows[v].push_back(od[(best + i) % L]);
  }

  Json rot = Json::array();
  for (int v = 0; v < n; ++v) {
    Json row = Json::array();
    for (int d : rows[v]) row.push_back(g.head(d));
    rot.push_back(std::move(row));
  }
  j["rotation"] = std::move(rot);
  j["outer_face"] = canonical_walk(face_walk(g, g.outer_face()));
  if (!g.is_simple()) {
    // Ids renumbered by first use in the emitted order, for the same reason.
    std::vector<int> rank(g.edge_count(), -1);
    int next = 0;
    Json ids = Json::array();
    for (int v = 0; v < n; ++v) {
      Json row = Json::array();
      for (int d : rows[v]) {
        if (rank[d / 2] < 0) rank[d / 2] = next++;
        row.push_back(rank[d / 2]);
      }
      ids.push_back(std::move(row));
    }
    j["edge_ids"] = std::move(ids);
  }
}

PlaneGraph parse_embedding(const Json& j, int n) {
  auto rotation = field<std::vector<std::vector<int>>>(j, "rotation");
  auto outer = field<std::vector<int>>(j, "outer_face");
  expect(n >= 0 && static_cast<int>(rotation.size()) == n, Errc::bad_input,
         "rotation must list every vertex");
  if (!j.contains("edge_ids")) return PlaneGraph::from_rotation(n, rotation, outer);

  auto edge_ids = field<std::vector<std::vector<int>>>(j, "edge_ids");
  expect(edge_ids.size() == rotation.size(), Errc::bad_input,
         "edge_ids must have the shape of rotation");
  std::size_t slots = 0;
  for (const auto& row : rotation) slots += row.size();
  expect(slots % 2 == 0, Errc::bad_input, "odd number of edge ends");
  const int m = static_cast<int>(slots / 2);

  std::vector<int> origin(2 * m, -1), rot_next(2 * m, -1), uses(m, 0);
  std::vector<std::vector<int>> dart_at(rotation.size());
  for (int v = 0; v < n; ++v) {
    expect(edge_ids[v].size() == rotation[v].size(), Errc::bad_input,
           "edge_ids must have the shape of rotation");
    dart_at[v].resize(rotation[v].size());
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      const int e = edge_ids[v][i];
      expect(e >= 0 && e < m, Errc::bad_input, "edge id out of range");
      expect(uses[e] < 2, Errc::bad_input, "edge id used more than twice");
      const int d = 2 * e + uses[e]++;
      origin[d] = v;
      dart_at[v][i] = d;
    }
  }
  for (int e = 0; e < m; ++e)
    expect(uses[e] == 2, Errc::bad_input, "every edge id needs exactly two ends");
  for (int v = 0; v < n; ++v)
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      const int d = dart_at[v][i];
      expect(rotation[v][i] == origin[d ^ 1], Errc::bad_input,
             "rotation and edge_ids disagree on an edge's endpoints");
      rot_next[d] = dart_at[v][(i + 1) % rotation[v].size()];
    }

  // Outer face is only known once the orbits exist; build, locate, rebuild.
  const PlaneGraph probe = PlaneGraph::from_darts(n, origin, rot_next, 0);
  const int f = match_face(probe, outer);
  return PlaneGraph::from_darts(n, std::move(origin), std::move(rot_next),
                                probe.face_darts(f).front());
}

std::pair<int, int> ordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct CrossingRecord {
  std::pair<int, int> e1, e2;
  int pos1 = 0, pos2 = 0;

  // The two (edge, position) halves carry no preferred order.
  void normalize() {
    if (std::tie(e2, pos2) < std::tie(e1, pos1)) {
      std::swap(e1, e2);
      std::swap(pos1, pos2);
    }
  }
  bool operator==(const CrossingRecord&) const = default;
};

CrossingRecord derived_record(const Drawing& d, const Crossing& c) {
  CrossingRecord r{d.base_edge_ends(c.e1), d.base_edge_ends(c.e2), c.pos1, c.pos2};
  r.normalize();
  return r;
}

}  // namespace

std::string emit_graph(const PlaneGraph& g) {
  Json j;
  j["n"] = g.n();
  emit_embedding(j, g);
  return j.dump();
}

PlaneGraph parse_graph(const std::string& text) {
  const Json j = parse_json(text);
  return parse_embedding(j, field<int>(j, "n"));
}

std::string emit_drawing(const Drawing& d) {
  Json j;
  Json graph;
  graph["n"] = d.base_n();
  Json edges = Json::array();
  for (int e = 0; e < d.base_edge_count(); ++e) {
    const auto [u, v] = d.base_edge_ends(e);
    edges.push_back(Json::array({u, v}));
  }
  graph["edges"] = std::move(edges);
  j["graph"] = std::move(graph);
  emit_embedding(j, d.plan());
  Json xs = Json::array();
  for (const Crossing& c : d.crossings()) {
    const auto [a, b] = d.base_edge_ends(c.e1);
    const auto [x, y] = d.base_edge_ends(c.e2);
    Json rec;
    rec["e1"] = Json::array({a, b});
    rec["e2"] = Json::array({x, y});
    rec["pos1"] = c.pos1;
    rec["pos2"] = c.pos2;
    xs.push_back(std::move(rec));
  }
  j["crossings"] = std::move(xs);
  return j.dump();
}

Drawing parse_drawing(const std::string& text) {
  const Json j = parse_json(text);
  const Json graph = field<Json>(j, "graph");
  const int n = field<int>(graph, "n");
  auto stored_edges = field<std::vector<std::vector<int>>>(graph, "edges");
  auto stored_xs = field<std::vector<Json>>(j, "crossings");

  const PlaneGraph plan = parse_embedding(j, n + static_cast<int>(stored_xs.size()));
  std::vector<int> marked;
  for (std::size_t i = 0; i < stored_xs.size(); ++i)
    marked.push_back(n + static_cast<int>(i));
  const Drawing d = Drawing::from_planarization(plan, marked);

  std::vector<std::pair<int, int>> want, have;
  for (const auto& e : stored_edges) {
    expect(e.size() == 2, Errc::bad_input, "edges must be vertex pairs");
    want.push_back(ordered(e[0], e[1]));
  }
  for (int e = 0; e < d.base_edge_count(); ++e) have.push_back(d.base_edge_ends(e));
  std::sort(want.begin(), want.end());
  expect(want == have, Errc::inconsistent_ledger,
         "stored edge list disagrees with the planarization");

  for (std::size_t i = 0; i < stored_xs.size(); ++i) {
    const auto e1 = field<std::vector<int>>(stored_xs[i], "e1");
    const auto e2 = field<std::vector<int>>(stored_xs[i], "e2");
    expect(e1.size() == 2 && e2.size() == 2, Errc::bad_input, "crossed edges must be vertex pairs");
    CrossingRecord stored{ordered(e1[0], e1[1]), ordered(e2[0], e2[1]),
                          field<int>(stored_xs[i], "pos1"), field<int>(stored_xs[i], "pos2")};
    stored.normalize();
    expect(stored == derived_record(d, d.crossings()[i]), Errc::inconsistent_ledger,
           "stored crossing disagrees with the planarization");
  }
  return d;
}

std::string emit_nest(const Nest& nest, bool guaranteed) {
  NestFile f;
  f.s = nest.s;
  f.x_set = nest.x_set;
  f.guaranteed = guaranteed;
  for (const CycleInG& c : nest.cycles) f.cycles.push_back(c.vertices());
  return emit_nest(f);
}

std::string emit_nest(const NestFile& file) {
  Json j;
  j["s"] = file.s;
  j["X"] = file.x_set;
  j["cycles"] = file.cycles;
  j["guaranteed"] = file.guaranteed;
  return j.dump();
}

NestFile parse_nest(const std::string& text) {
  const Json j = parse_json(text);
  NestFile f;
  f.s = field<int>(j, "s");
  f.x_set = field<std::vector<int>>(j, "X");
  f.cycles = field<std::vector<std::vector<int>>>(j, "cycles");
  f.guaranteed = field<bool>(j, "guaranteed");
  return f;
}

std::vector<CycleInG> bind_cycles(const PlaneGraph& g,
                                  const std::vector<std::vector<int>>& walks) {
  std::vector<CycleInG> cycles;
  cycles.reserve(walks.size());
  for (const auto& w : walks) cycles.push_back(CycleInG::from_vertices(g, w));
  return cycles;
}

Nest realize_nest(const PlaneGraph& g, const NestFile& file) {
  Nest nest = make_nest(g, bind_cycles(g, file.cycles));
  expect(nest.s == file.s, Errc::bad_input, "stored s disagrees with the cycles");
  std::vector<int> x = file.x_set;
  std::sort(x.begin(), x.end());
  expect(nest.x_set == x, Errc::bad_input, "stored X disagrees with the cycles");
  return nest;
}

}  // namespace nestkit
