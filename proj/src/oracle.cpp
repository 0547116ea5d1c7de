#include "nestkit/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <unordered_map>

namespace nestkit::oracle {

namespace {

constexpr size_t kCycleGuard = 500000;
constexpr int kPathGuard = 22;

std::vector<std::vector<int>> sorted_adjacency(const PlaneGraph& g) {
  std::vector<std::vector<int>> adj(g.n());
  for (int v = 0; v < g.n(); ++v) {
    adj[v] = g.neighbors(v);
    std::sort(adj[v].begin(), adj[v].end());
    adj[v].erase(std::unique(adj[v].begin(), adj[v].end()), adj[v].end());
  }
  return adj;
}

struct DualTree {
  std::vector<int> parent_face;
  std::vector<int> parent_edge;
  std::vector<int> order;  // BFS order from the outer face
};

DualTree dual_tree(const PlaneGraph& g) {
  DualTree t;
  t.parent_face.assign(g.face_count(), -1);
  t.parent_edge.assign(g.face_count(), -1);
  t.order.reserve(g.face_count());
  std::vector<char> seen(g.face_count(), 0);
  std::vector<int> queue{g.outer_face()};
  seen[g.outer_face()] = 1;
  for (size_t h = 0; h < queue.size(); ++h) {
    int f = queue[h];
    t.order.push_back(f);
    for (int d : g.face_darts(f)) {
      int nf = g.face_of(PlaneGraph::twin(d));
      if (!seen[nf]) {
        seen[nf] = 1;
        t.parent_face[nf] = f;
        t.parent_edge[nf] = PlaneGraph::edge_of(d);
        queue.push_back(nf);
      }
    }
  }
  return t;
}

}  // namespace

int vertex_cap() {
  if (const char* s = std::getenv("NESTKIT_MAX_ORACLE")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 14;
}

std::vector<std::vector<int>> enumerate_cycles(const PlaneGraph& g) {
  expect(g.n() <= vertex_cap(), Errc::too_large, "graph too large for exhaustive cycle search");
  auto adj = sorted_adjacency(g);
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> on_path(g.n(), 0);
  // path[0] is the smallest vertex of the cycle; path[1] < back() kills the
  // mirror copy
  auto dfs = [&](auto&& self, int v) -> void {
    for (int u : adj[v]) {
      if (u == path[0] && path.size() >= 3 && path[1] < path.back()) {
        out.push_back(path);
        expect(out.size() <= kCycleGuard, Errc::too_large, "cycle census exploded");
      }
      if (u <= path[0] || on_path[u]) continue;
      on_path[u] = 1;
      path.push_back(u);
      self(self, u);
      path.pop_back();
      on_path[u] = 0;
    }
  };
  for (int s = 0; s < g.n(); ++s) {
    path = {s};
    on_path.assign(g.n(), 0);
    on_path[s] = 1;
    dfs(dfs, s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<char> inside_faces_by_parity(const PlaneGraph& g, const CycleInG& c) {
  std::vector<char> wall(g.edge_count(), 0);
  for (int d : c.darts()) wall[PlaneGraph::edge_of(d)] = 1;
  DualTree t = dual_tree(g);
  std::vector<char> inside(g.face_count(), 0);
  for (int f : t.order) {
    if (t.parent_face[f] < 0) continue;
    inside[f] = inside[t.parent_face[f]] ^ wall[t.parent_edge[f]];
  }
  return inside;
}

bool face_inside_by_parity(const PlaneGraph& g, const CycleInG& c, int f) {
  return inside_faces_by_parity(g, c)[f] != 0;
}

NestWitness max_nest(const PlaneGraph& g, int s) {
  expect(s >= 0 && s <= 2, Errc::bad_input, "only 0, 1 or 2 shared vertices supported");
  auto canon = enumerate_cycles(g);
  int m = static_cast<int>(canon.size());
  expect(m > 0, Errc::bad_input, "graph has no cycle");
  std::vector<CycleInG> cyc;
  cyc.reserve(m);
  for (const auto& vs : canon) cyc.push_back(CycleInG::from_vertices(g, vs));
  std::vector<std::vector<char>> ins(m);
  std::vector<int> ins_count(m, 0);
  for (int i = 0; i < m; ++i) {
    ins[i] = inside_faces_by_parity(g, cyc[i]);
    for (char b : ins[i]) ins_count[i] += b;
  }
  auto strictly_contains = [&](int i, int j) {
    if (ins_count[j] >= ins_count[i]) return false;
    for (int f = 0; f < g.face_count(); ++f)
      if (ins[j][f] && !ins[i][f]) return false;
    return true;
  };
  auto intersection = [&](int i, int j) {
    std::vector<int> out;
    std::set_intersection(cyc[i].sorted_vertices().begin(), cyc[i].sorted_vertices().end(),
                          cyc[j].sorted_vertices().begin(), cyc[j].sorted_vertices().end(),
                          std::back_inserter(out));
    return out;
  };

  std::vector<std::vector<int>> x_candidates;
  if (s == 0) {
    x_candidates.push_back({});
  } else if (s == 1) {
    for (int v = 0; v < g.n(); ++v) x_candidates.push_back({v});
  } else {
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v) x_candidates.push_back({u, v});
  }

  NestWitness best;
  best.cycles = {canon[0]};
  size_t best_size = 1;
  for (const auto& x : x_candidates) {
    std::vector<int> cand;
    for (int i = 0; i < m; ++i)
      if (std::includes(cyc[i].sorted_vertices().begin(), cyc[i].sorted_vertices().end(),
                        x.begin(), x.end()))
        cand.push_back(i);
    if (cand.size() <= best_size) continue;
    std::sort(cand.begin(), cand.end(),
              [&](int a, int b) { return ins_count[a] != ins_count[b] ? ins_count[a] > ins_count[b]
                                                                      : a < b; });
    int xe = -1;  // the one edge two nest members could share
    if (s == 2)
      if (auto d = g.dart_between(x[0], x[1])) xe = PlaneGraph::edge_of(*d);
    auto uses_xe = [&](int i) { return xe >= 0 && cyc[i].contains_edge(xe); };
    int k = static_cast<int>(cand.size());
    // chain[i][used]: longest chain starting at cand[i]; used means the x
    // edge is already taken by some earlier member
    std::vector<std::array<int, 2>> len(k, {-1, -1});
    std::vector<std::array<int, 2>> nxt(k, {-1, -1});
    auto solve = [&](auto&& self, int i, int used) -> int {
      if (len[i][used] >= 0) return len[i][used];
      int best_l = 1, best_n = -1;
      int used2 = used || uses_xe(cand[i]) ? 1 : 0;
      for (int j = i + 1; j < k; ++j) {
        if (used2 && uses_xe(cand[j])) continue;
        if (!strictly_contains(cand[i], cand[j])) continue;
        if (intersection(cand[i], cand[j]) != x) continue;
        int l = 1 + self(self, j, used2);
        if (l > best_l) {
          best_l = l;
          best_n = j;
        }
      }
      len[i][used] = best_l;
      nxt[i][used] = best_n;
      return best_l;
    };
    for (int i = 0; i < k; ++i) {
      int l = solve(solve, i, 0);
      if (static_cast<size_t>(l) > best_size) {
        best_size = l;
        best.cycles.clear();
        best.x_set = x;
        int cur = i, used = 0;
        while (cur >= 0) {
          best.cycles.push_back(canon[cand[cur]]);
          int u2 = used || uses_xe(cand[cur]) ? 1 : 0;
          cur = nxt[cur][used];
          used = u2;
        }
      }
    }
  }
  // the chain recursion only ties consecutive members, re-check every pair
  if (best.cycles.size() >= 2) {
    std::vector<int> idx;
    for (const auto& vs : best.cycles)
      idx.push_back(static_cast<int>(std::lower_bound(canon.begin(), canon.end(), vs) -
                                     canon.begin()));
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = i + 1; j < idx.size(); ++j) {
        expect(intersection(idx[i], idx[j]) == best.x_set, Errc::internal_invariant_broken,
               "chain members drifted apart");
        expect(strictly_contains(idx[i], idx[j]), Errc::internal_invariant_broken,
               "chain containment broken");
      }
  }
  return best;
}

int max_disjoint_paths(const PlaneGraph& g, int a, int b, bool vertex_mode) {
  expect(a != b && a >= 0 && b >= 0 && a < g.n() && b < g.n(), Errc::bad_input,
         "endpoints must be two distinct vertices");
  auto adj = sorted_adjacency(g);
  std::vector<std::vector<int>> paths;
  std::vector<int> path{a};
  std::vector<char> used(g.n(), 0);
  used[a] = 1;
  auto dfs = [&](auto&& self, int v) -> void {
    for (int u : adj[v]) {
      if (u == b) {
        paths.push_back(path);
        paths.back().push_back(b);
        expect(paths.size() <= kPathGuard, Errc::too_large, "too many paths to exhaust");
        continue;
      }
      if (used[u]) continue;
      used[u] = 1;
      path.push_back(u);
      self(self, u);
      path.pop_back();
      used[u] = 0;
    }
  };
  dfs(dfs, a);
  int p = static_cast<int>(paths.size());
  std::vector<std::uint32_t> conflict(p, 0);
  auto edges_of = [](const std::vector<int>& pa) {
    std::vector<std::pair<int, int>> es;
    for (size_t i = 0; i + 1 < pa.size(); ++i)
      es.emplace_back(std::min(pa[i], pa[i + 1]), std::max(pa[i], pa[i + 1]));
    std::sort(es.begin(), es.end());
    return es;
  };
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      bool clash = false;
      if (vertex_mode) {
        std::vector<int> vi(paths[i].begin() + 1, paths[i].end() - 1);
        std::vector<int> vj(paths[j].begin() + 1, paths[j].end() - 1);
        std::sort(vi.begin(), vi.end());
        std::sort(vj.begin(), vj.end());
        std::vector<int> both;
        std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(),
                              std::back_inserter(both));
        clash = !both.empty();
      } else {
        auto ei = edges_of(paths[i]), ej = edges_of(paths[j]);
        std::vector<std::pair<int, int>> both;
        std::set_intersection(ei.begin(), ei.end(), ej.begin(), ej.end(),
                              std::back_inserter(both));
        clash = !both.empty();
      }
      if (clash) {
        conflict[i] |= 1u << j;
        conflict[j] |= 1u << i;
      }
    }
  std::unordered_map<std::uint32_t, int> memo;
  auto pick = [&](auto&& self, std::uint32_t mask) -> int {
    if (!mask) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int i = std::countr_zero(mask);
    std::uint32_t bit = 1u << i;
    int skip = self(self, mask & ~bit);
    int take = 1 + self(self, mask & ~bit & ~conflict[i]);
    int r = std::max(skip, take);
    memo.emplace(mask, r);
    return r;
  };
  std::uint32_t all = p == 32 ? ~0u : (1u << p) - 1;
  return pick(pick, all);
}

}  // namespace nestkit::oracle

