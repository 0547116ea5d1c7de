#include "nestkit/plane_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

namespace nestkit {

namespace {

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  int L = static_cast<int>(a.size());
  for (int s = 0; s < L; ++s) {
    bool ok = true;
    for (int i = 0; i < L && ok; ++i) ok = a[(s + i) % L] == b[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

void PlaneGraph::finalize() {
  int dc = dart_count();
  expect(n_ >= 1, Errc::bad_input, "graph needs at least one vertex");
  expect(dc >= 2, Errc::bad_input, "graph needs at least one edge");
  expect(static_cast<int>(rot_next_.size()) == dc, Errc::internal_invariant_broken,
         "rotation table size mismatch");
  rot_prev_.assign(dc, -1);
  std::vector<char> hit(dc, 0);
  for (int d = 0; d < dc; ++d) {
    int e = rot_next_[d];
    expect(e >= 0 && e < dc && !hit[e], Errc::bad_input, "rotation is not a permutation");
    hit[e] = 1;
    rot_prev_[e] = d;
    expect(origin_[e] == origin_[d], Errc::bad_input, "rotation mixes distinct vertices");
  }
  // one rotation orbit per vertex
  out_darts_.assign(n_, {});
  std::vector<char> seen(dc, 0);
  for (int d = 0; d < dc; ++d) {
    if (seen[d]) continue;
    int v = origin_[d];
    expect(out_darts_[v].empty(), Errc::bad_input, "rotation splits at a vertex");
    int cur = d;
    do {
      seen[cur] = 1;
      out_darts_[v].push_back(cur);
      cur = rot_next_[cur];
    } while (cur != d);
  }
  for (int v = 0; v < n_; ++v) expect(!out_darts_[v].empty(), Errc::disconnected, "isolated vertex");
  std::vector<char> vis(n_, 0);
  std::vector<int> stack{origin_[0]};
  vis[origin_[0]] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int d : out_darts_[v]) {
      int u = origin_[d ^ 1];
      if (!vis[u]) {
        vis[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  expect(reached == n_, Errc::disconnected, "graph is not connected");
  face_of_.assign(dc, -1);
  faces_.clear();
  for (int d = 0; d < dc; ++d) {
    if (face_of_[d] >= 0) continue;
    int f = static_cast<int>(faces_.size());
    faces_.emplace_back();
    int cur = d;
    do {
      face_of_[cur] = f;
      faces_[f].push_back(cur);
      cur = face_next(cur);
    } while (cur != d);
  }
  long long euler = static_cast<long long>(n_) - edge_count() + face_count();
  expect(euler == 2, Errc::euler_violation,
         "rotation system is not spherical (V-E+F = " + std::to_string(euler) + ")");
  simple_ = true;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(edge_count());
  for (int e = 0; e < edge_count() && simple_; ++e) {
    auto [a, b] = edge_ends(e);
    if (a == b)
      simple_ = false;
    else
      pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  if (simple_) {
    std::sort(pairs.begin(), pairs.end());
    simple_ = std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
  }
}

PlaneGraph PlaneGraph::from_faces(int n, const std::vector<std::vector<int>>& walks,
                                  int outer_index,
                                  std::vector<std::vector<int>>* face_darts_out) {
  expect(n >= 1, Errc::bad_input, "vertex count must be positive");
  expect(!walks.empty(), Errc::bad_input, "need at least one face walk");
  expect(outer_index >= 0 && outer_index < static_cast<int>(walks.size()), Errc::bad_input,
         "outer face index out of range");
  PlaneGraph g;
  g.n_ = n;
  auto key = [n](int u, int v) { return static_cast<long long>(u) * n + v; };
  std::unordered_map<long long, int> dart_of;
  std::vector<std::vector<int>> walk_darts(walks.size());
  int edges = 0;
  for (size_t i = 0; i < walks.size(); ++i) {
    const auto& w = walks[i];
    expect(w.size() >= 2, Errc::bad_input, "face walk shorter than two vertices");
    walk_darts[i].reserve(w.size());
    for (size_t j = 0; j < w.size(); ++j) {
      int u = w[j], v = w[(j + 1) % w.size()];
      expect(u >= 0 && u < n && v >= 0 && v < n, Errc::bad_input, "walk vertex out of range");
      expect(u != v, Errc::bad_input, "loop edge in face walk");
      expect(dart_of.find(key(u, v)) == dart_of.end(), Errc::bad_input,
             "directed edge traced twice");
      int d;
      auto rit = dart_of.find(key(v, u));
      if (rit != dart_of.end())
        d = rit->second ^ 1;
      else
        d = 2 * edges++;
      dart_of.emplace(key(u, v), d);
      walk_darts[i].push_back(d);
    }
  }
  int dc = 2 * edges;
  g.origin_.assign(dc, -1);
  for (const auto& [k, d] : dart_of) g.origin_[d] = static_cast<int>(k / n);
  for (int d = 0; d < dc; ++d)
    expect(g.origin_[d] >= 0, Errc::bad_input, "edge traced in only one direction");
  // sigma(d) = phi(twin(d)), so tracing faces recovers the input walks
  std::vector<int> phi(dc, -1);
  for (auto& wd : walk_darts)
    for (size_t j = 0; j < wd.size(); ++j) phi[wd[j]] = wd[(j + 1) % wd.size()];
  g.rot_next_.assign(dc, -1);
  for (int d = 0; d < dc; ++d) g.rot_next_[d] = phi[d ^ 1];
  g.finalize();
  expect(g.face_count() == static_cast<int>(walks.size()), Errc::internal_invariant_broken,
         "face trace disagrees with input walks");
  g.outer_ = g.face_of_[walk_darts[outer_index][0]];
  if (face_darts_out) *face_darts_out = std::move(walk_darts);
  return g;
}

PlaneGraph PlaneGraph::from_rotation(int n, const std::vector<std::vector<int>>& neighbors,
                                     const std::vector<int>& outer_cycle,
                                     std::vector<std::vector<int>>* edge_ids_out) {
  expect(n >= 1 && static_cast<int>(neighbors.size()) == n, Errc::bad_input,
         "neighbor list size mismatch");
  PlaneGraph g;
  g.n_ = n;
  std::vector<std::vector<int>> slot_dart(n);
  // i-th copy of v in u's list pairs with the i-th copy of u in v's list
  std::map<std::tuple<int, int, int>, int> pending;
  std::vector<std::unordered_map<int, int>> occ(n);
  int edges = 0;
  for (int u = 0; u < n; ++u) {
    slot_dart[u].assign(neighbors[u].size(), -1);
    for (size_t j = 0; j < neighbors[u].size(); ++j) {
      int v = neighbors[u][j];
      expect(v >= 0 && v < n, Errc::bad_input, "neighbor out of range");
      expect(v != u, Errc::bad_input, "loop edges not supported");
      int k = occ[u][v]++;
      std::tuple<int, int, int> key{std::min(u, v), std::max(u, v), k};
      auto it = pending.find(key);
      if (it == pending.end()) {
        int d = 2 * edges++;
        pending.emplace(key, d);
        slot_dart[u][j] = d;
      } else {
        slot_dart[u][j] = it->second ^ 1;
        pending.erase(it);
      }
    }
  }
  expect(pending.empty(), Errc::bad_input, "asymmetric adjacency lists");
  int dc = 2 * edges;
  g.origin_.assign(dc, -1);
  g.rot_next_.assign(dc, -1);
  for (int u = 0; u < n; ++u) {
    expect(!slot_dart[u].empty(), Errc::disconnected, "isolated vertex");
    for (size_t j = 0; j < slot_dart[u].size(); ++j) {
      int d = slot_dart[u][j];
      g.origin_[d] = u;
      g.rot_next_[d] = slot_dart[u][(j + 1) % slot_dart[u].size()];
    }
  }
  g.finalize();
  std::vector<int> rev(outer_cycle.rbegin(), outer_cycle.rend());
  int found = -1;
  for (int f = 0; f < g.face_count() && found < 0; ++f) {
    if (g.faces_[f].size() != outer_cycle.size()) continue;
    std::vector<int> vs;
    vs.reserve(g.faces_[f].size());
    for (int d : g.faces_[f]) vs.push_back(g.origin_[d]);
    if (cyclic_equal(vs, outer_cycle) || cyclic_equal(vs, rev)) found = f;
  }
  expect(found >= 0, Errc::bad_input, "outer cycle does not bound a face");
  g.outer_ = found;
  if (edge_ids_out) {
    edge_ids_out->assign(n, {});
    for (int u = 0; u < n; ++u)
      for (int d : slot_dart[u]) (*edge_ids_out)[u].push_back(d >> 1);
  }
  return g;
}

PlaneGraph PlaneGraph::from_darts(int n, std::vector<int> origin, std::vector<int> rot_next,
                                  int outer_dart) {
  expect(origin.size() == rot_next.size(), Errc::bad_input, "dart table size mismatch");
  expect(origin.size() % 2 == 0, Errc::bad_input, "darts come in twin pairs");
  PlaneGraph g;
  g.n_ = n;
  for (int v : origin) expect(v >= 0 && v < n, Errc::bad_input, "dart origin out of range");
  g.origin_ = std::move(origin);
  g.rot_next_ = std::move(rot_next);
  g.finalize();
  expect(outer_dart >= 0 && outer_dart < g.dart_count(), Errc::bad_input,
         "outer dart out of range");
  g.outer_ = g.face_of_[outer_dart];
  return g;
}

std::vector<int> PlaneGraph::neighbors(int v) const {
  std::vector<int> out;
  out.reserve(out_darts_[v].size());
  for (int d : out_darts_[v]) out.push_back(head(d));
  return out;
}

std::optional<int> PlaneGraph::dart_between(int u, int v) const {
  for (int d : out_darts_[u])
    if (head(d) == v) return d;
  return std::nullopt;
}

PlaneGraph PlaneGraph::with_outer_face(int f) const {
  expect(f >= 0 && f < face_count(), Errc::bad_input, "face index out of range");
  PlaneGraph g = *this;
  g.outer_ = f;
  return g;
}

std::optional<int> PlaneGraph::find_face_with_vertices(const std::vector<int>& verts) const {
  std::vector<int> want = verts;
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  for (int f = 0; f < face_count(); ++f) {
    std::vector<int> have;
    have.reserve(faces_[f].size());
    for (int d : faces_[f]) have.push_back(origin_[d]);
    std::sort(have.begin(), have.end());
    have.erase(std::unique(have.begin(), have.end()), have.end());
    if (have == want) return f;
  }
  return std::nullopt;
}

CycleInG::CycleInG(const PlaneGraph& g, std::vector<int> darts) : darts_(std::move(darts)) {
  expect(!darts_.empty(), Errc::not_a_cycle, "empty dart list");
  int L = static_cast<int>(darts_.size());
  verts_.reserve(L);
  for (int i = 0; i < L; ++i) {
    int d = darts_[i];
    expect(d >= 0 && d < g.dart_count(), Errc::not_a_cycle, "dart out of range");
    expect(g.head(d) == g.origin(darts_[(i + 1) % L]), Errc::not_a_cycle, "darts do not chain");
    verts_.push_back(g.origin(d));
  }
  expect(L >= 3 || (L == 2 && PlaneGraph::edge_of(darts_[0]) != PlaneGraph::edge_of(darts_[1])),
         Errc::not_a_cycle, "too short for a cycle");
  sorted_verts_ = verts_;
  std::sort(sorted_verts_.begin(), sorted_verts_.end());
  expect(std::adjacent_find(sorted_verts_.begin(), sorted_verts_.end()) == sorted_verts_.end(),
         Errc::cycle_not_simple, "vertex repeats on cycle");
}

CycleInG CycleInG::from_vertices(const PlaneGraph& g, const std::vector<int>& verts) {
  expect(verts.size() >= 3, Errc::not_a_cycle, "need at least three vertices");
  std::vector<int> darts;
  darts.reserve(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    auto d = g.dart_between(verts[i], verts[(i + 1) % verts.size()]);
    expect(d.has_value(), Errc::not_a_cycle, "consecutive cycle vertices not adjacent");
    darts.push_back(*d);
  }
  return CycleInG(g, std::move(darts));
}

bool CycleInG::contains_vertex(int v) const {
  return std::binary_search(sorted_verts_.begin(), sorted_verts_.end(), v);
}

bool CycleInG::contains_edge(int e) const {
  for (int d : darts_)
    if (PlaneGraph::edge_of(d) == e) return true;
  return false;
}

std::vector<int> CycleInG::edges() const {
  std::vector<int> out;
  out.reserve(darts_.size());
  for (int d : darts_) out.push_back(PlaneGraph::edge_of(d));
  return out;
}

int CycleInG::index_of(int v) const {
  for (size_t i = 0; i < verts_.size(); ++i)
    if (verts_[i] == v) return static_cast<int>(i);
  return -1;
}

std::vector<int> CycleInG::canonical() const {
  auto best_rotation = [](const std::vector<int>& v) {
    int L = static_cast<int>(v.size());
    std::vector<int> best, cur(L);
    for (int s = 0; s < L; ++s) {
      for (int i = 0; i < L; ++i) cur[i] = v[(s + i) % L];
      if (best.empty() || cur < best) best = cur;
    }
    return best;
  };
  auto fwd = best_rotation(verts_);
  std::vector<int> rv(verts_.rbegin(), verts_.rend());
  auto bwd = best_rotation(rv);
  return fwd < bwd ? fwd : bwd;
}

bool is_triangulation(const PlaneGraph& g) {
  if (!g.is_simple()) return false;
  for (const auto& f : g.faces())
    if (f.size() != 3) return false;
  return true;
}

DiskInfo disk_info(const PlaneGraph& g, const CycleInG& c) {
  std::vector<char> wall(g.edge_count(), 0);
  for (int d : c.darts()) wall[PlaneGraph::edge_of(d)] = 1;
  DiskInfo info;
  info.face_inside.assign(g.face_count(), 1);
  info.face_inside[g.outer_face()] = 0;
  std::vector<int> stack{g.outer_face()};
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int d : g.face_darts(f)) {
      if (wall[PlaneGraph::edge_of(d)]) continue;
      int nf = g.face_of(PlaneGraph::twin(d));
      if (info.face_inside[nf]) {
        info.face_inside[nf] = 0;
        stack.push_back(nf);
      }
    }
  }
  for (char b : info.face_inside) info.inside_face_count += b;
  expect(info.inside_face_count >= 1, Errc::internal_invariant_broken, "cycle bounds no face");
  info.vertex_side.assign(g.n(), Side::Outside);
  for (int v = 0; v < g.n(); ++v) {
    // off-cycle vertices see only one side, any incident face decides
    int d = g.out_darts(v)[0];
    info.vertex_side[v] = info.face_inside[g.face_of(d)] ? Side::Inside : Side::Outside;
  }
  for (int v : c.vertices()) info.vertex_side[v] = Side::OnCycle;
  return info;
}

std::vector<int> disk_vertices(const PlaneGraph& g, const CycleInG& c) {
  DiskInfo info = disk_info(g, c);
  std::vector<int> out;
  for (int v = 0; v < g.n(); ++v)
    if (info.vertex_side[v] != Side::Outside) out.push_back(v);
  return out;
}

bool is_nested(const PlaneGraph& g, const CycleInG& outer, const CycleInG& inner) {
  DiskInfo a = disk_info(g, outer);
  DiskInfo b = disk_info(g, inner);
  for (int f = 0; f < g.face_count(); ++f)
    if (b.face_inside[f] && !a.face_inside[f]) return false;
  return true;
}

CycleMetric cycle_metric(const PlaneGraph& g, const CycleInG& c, int u, int v) {
  int iu = c.index_of(u), iv = c.index_of(v);
  expect(iu >= 0 && iv >= 0, Errc::vertex_not_on_cycle, "vertex not on cycle");
  int L = c.length();
  int gap = std::abs(iu - iv);
  CycleMetric m;
  m.arc_dist = std::min(gap, L - gap);
  std::vector<int> dist(g.n(), -1);
  std::queue<int> q;
  dist[u] = 0;
  q.push(u);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) break;
    for (int d : g.out_darts(x)) {
      int y = g.head(d);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  expect(dist[v] >= 0, Errc::internal_invariant_broken, "graph must be connected");
  m.graph_dist = dist[v];
  return m;
}

bool is_geodesic_cycle(const PlaneGraph& g, const CycleInG& c) {
  for (int i = 0; i < c.length(); ++i)
    for (int j = i + 1; j < c.length(); ++j) {
      CycleMetric m = cycle_metric(g, c, c.vertices()[i], c.vertices()[j]);
      if (m.graph_dist < m.arc_dist) return false;
    }
  return true;
}

DiskSubgraph disk_subgraph(const PlaneGraph& g, const CycleInG& c) {
  DiskInfo info = disk_info(g, c);
  DiskSubgraph out;
  out.from_parent.assign(g.n(), -1);
  for (int v = 0; v < g.n(); ++v)
    if (info.vertex_side[v] != Side::Outside) {
      out.from_parent[v] = static_cast<int>(out.to_parent.size());
      out.to_parent.push_back(v);
    }
  std::vector<std::vector<int>> parent_walks;
  size_t kept = 0;
  for (int f = 0; f < g.face_count(); ++f) {
    if (!info.face_inside[f]) continue;
    parent_walks.push_back(g.face_darts(f));
    kept += parent_walks.back().size();
  }
  const auto& cd = c.darts();
  int L = static_cast<int>(cd.size());
  std::vector<int> pd;
  if (info.face_inside[g.face_of(cd[0])]) {
    // c's darts keep the disk on their left, so the new outer walk runs on twins
    for (int p = 0; p < L; ++p) pd.push_back(PlaneGraph::twin(cd[(L - 1 - p + L) % L]));
  } else {
    pd = cd;
  }
  kept += pd.size();
  parent_walks.push_back(std::move(pd));
  // the kept darts are closed under twin, so edges transfer whole; pairing by
  // dart keeps parallel edges apart where vertex walks could not
  out.dart_from_parent.assign(g.dart_count(), -1);
  std::vector<int> origin(kept, -1), phi(kept, -1);
  int edges = 0;
  for (const auto& walk : parent_walks)
    for (int d : walk) {
      if (out.dart_from_parent[d] >= 0) continue;
      int nd = 2 * edges++;
      out.dart_from_parent[d] = nd;
      out.dart_from_parent[PlaneGraph::twin(d)] = nd ^ 1;
      origin[nd] = out.from_parent[g.origin(d)];
      origin[nd ^ 1] = out.from_parent[g.head(d)];
    }
  expect(2 * edges == static_cast<int>(kept), Errc::internal_invariant_broken,
         "disk boundary darts do not pair up");
  for (const auto& walk : parent_walks)
    for (size_t j = 0; j < walk.size(); ++j)
      phi[out.dart_from_parent[walk[j]]] = out.dart_from_parent[walk[(j + 1) % walk.size()]];
  std::vector<int> rot(kept, -1);
  for (size_t d = 0; d < kept; ++d) rot[d] = phi[d ^ 1];
  out.graph = PlaneGraph::from_darts(static_cast<int>(out.to_parent.size()), std::move(origin),
                                     std::move(rot), out.dart_from_parent[parent_walks.back()[0]]);
  expect(out.graph.face_count() == static_cast<int>(parent_walks.size()),
         Errc::internal_invariant_broken, "disk cut produced unexpected faces");
  out.dart_to_parent.assign(out.graph.dart_count(), -1);
  for (int d = 0; d < g.dart_count(); ++d)
    if (out.dart_from_parent[d] >= 0) out.dart_to_parent[out.dart_from_parent[d]] = d;
  out.boundary_darts.reserve(L);
  for (int d : cd) {
    int sd = out.dart_from_parent[d];
    expect(sd >= 0, Errc::internal_invariant_broken, "boundary dart lost in disk cut");
    out.boundary_darts.push_back(sd);
  }
  return out;
}

}  // namespace nestkit
