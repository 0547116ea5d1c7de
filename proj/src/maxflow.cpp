#include "nestkit/maxflow.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace nestkit {

namespace {

constexpr int kInf = 1 << 29;

struct Dinic {
  struct Arc {
    int to, cap;
  };
  std::vector<Arc> arcs;
  std::vector<int> orig;
  std::vector<std::vector<int>> adj;
  std::vector<int> level, it;
  int n;

  explicit Dinic(int n_) : adj(n_), level(n_), it(n_), n(n_) {}

  int add(int u, int v, int cap, int rcap = 0) {
    int id = static_cast<int>(arcs.size());
    arcs.push_back({v, cap});
    arcs.push_back({u, rcap});
    orig.push_back(cap);
    orig.push_back(rcap);
    adj[u].push_back(id);
    adj[v].push_back(id + 1);
    return id;
  }

  bool bfs(int s, int t) {
    level.assign(n, -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : adj[v])
        if (arcs[id].cap > 0 && level[arcs[id].to] < 0) {
          level[arcs[id].to] = level[v] + 1;
          q.push(arcs[id].to);
        }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = it[v]; i < static_cast<int>(adj[v].size()); ++i) {
      int id = adj[v][i];
      Arc& a = arcs[id];
      if (a.cap > 0 && level[a.to] == level[v] + 1) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          arcs[id ^ 1].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int run(int s, int t) {
    int total = 0;
    while (bfs(s, t)) {
      it.assign(n, 0);
      while (int f = dfs(s, t, kInf)) total += f;
    }
    return total;
  }

  std::vector<char> residual_reach(int s) const {
    std::vector<char> r(n, 0);
    std::vector<int> stack{s};
    r[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int id : adj[v])
        if (arcs[id].cap > 0 && !r[arcs[id].to]) {
          r[arcs[id].to] = 1;
          stack.push_back(arcs[id].to);
        }
    }
    return r;
  }

  // flow decomposition into s-t node walks; loops cancel on the fly
  std::vector<std::vector<int>> walks(int s, int t, int units) {
    std::vector<int> used(arcs.size());
    for (size_t i = 0; i < arcs.size(); ++i) used[i] = std::max(0, orig[i] - arcs[i].cap);
    std::vector<std::vector<int>> out;
    for (int u = 0; u < units; ++u) {
      std::vector<int> walk{s};
      std::unordered_map<int, int> pos{{s, 0}};
      int guard = 0;
      while (walk.back() != t) {
        expect(++guard < 4 * static_cast<int>(arcs.size()) + 16,
               Errc::internal_invariant_broken, "flow decomposition ran away");
        int v = walk.back(), next = -1;
        for (int id : adj[v])
          if (used[id] > 0) {
            used[id]--;
            next = arcs[id].to;
            break;
          }
        expect(next >= 0, Errc::internal_invariant_broken, "flow conservation broken");
        auto seen = pos.find(next);
        if (seen != pos.end()) {
          while (static_cast<int>(walk.size()) > seen->second + 1) {
            pos.erase(walk.back());
            walk.pop_back();
          }
        } else {
          pos[next] = static_cast<int>(walk.size());
          walk.push_back(next);
        }
      }
      out.push_back(std::move(walk));
    }
    return out;
  }
};

// cuts each walk down to its last source before the first sink, so terminals
// appear only as endpoints
void trim_to_terminals(std::vector<std::vector<int>>& paths, const std::vector<char>& is_src,
                       const std::vector<char>& is_snk) {
  for (auto& p : paths) {
    size_t j = 0;
    while (j < p.size() && !is_snk[p[j]]) ++j;
    expect(j < p.size(), Errc::internal_invariant_broken, "path misses all sinks");
    size_t i = j;
    while (i > 0 && !is_src[p[i - 1]]) --i;
    expect(i > 0, Errc::internal_invariant_broken, "path misses all sources");
    p = std::vector<int>(p.begin() + (i - 1), p.begin() + (j + 1));
  }
}

}  // namespace

PathFamily disjoint_paths(int n, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<int>& sources, const std::vector<int>& sinks,
                          PathMode mode) {
  expect(n >= 2 && !sources.empty() && !sinks.empty(), Errc::bad_input,
         "need vertices, sources and sinks");
  auto in_range = [n](int v) { return v >= 0 && v < n; };
  std::vector<char> is_src(n, 0), is_snk(n, 0);
  for (int a : sources) {
    expect(in_range(a), Errc::bad_input, "source out of range");
    is_src[a] = 1;
  }
  for (int b : sinks) {
    expect(in_range(b), Errc::bad_input, "sink out of range");
    expect(!is_src[b], Errc::bad_input, "sources and sinks must not overlap");
    is_snk[b] = 1;
  }
  for (auto [u, v] : edges)
    expect(in_range(u) && in_range(v) && u != v, Errc::bad_input, "bad edge");

  PathFamily fam;
  if (mode != PathMode::EdgeDisjoint) {
    // v -> (2v, 2v+1) with a unit bottleneck between; everything else is wide
    bool internal_only = mode == PathMode::InternallyDisjoint;
    int S = 2 * n, T = 2 * n + 1;
    Dinic din(2 * n + 2);
    for (int v = 0; v < n; ++v) {
      bool terminal = is_src[v] || is_snk[v];
      din.add(2 * v, 2 * v + 1, internal_only && terminal ? kInf : 1);
    }
    for (auto [u, v] : edges) {
      expect(!internal_only || !((is_src[u] && is_snk[v]) || (is_snk[u] && is_src[v])),
             Errc::bad_input, "source adjacent to sink breaks the shared-terminal mode");
      din.add(2 * u + 1, 2 * v, kInf);
      din.add(2 * v + 1, 2 * u, kInf);
    }
    for (int a : sources) din.add(S, 2 * a, kInf);
    for (int b : sinks) din.add(2 * b + 1, T, kInf);
    fam.count = din.run(S, T);
    for (auto& w : din.walks(S, T, fam.count)) {
      std::vector<int> p;
      for (int node : w) {
        if (node >= 2 * n) continue;
        int v = node / 2;
        if (p.empty() || p.back() != v) p.push_back(v);
      }
      fam.paths.push_back(std::move(p));
    }
    trim_to_terminals(fam.paths, is_src, is_snk);
    auto r = din.residual_reach(S);
    for (int v = 0; v < n; ++v)
      if (r[2 * v] && !r[2 * v + 1]) fam.cut_vertices.push_back(v);
    expect(static_cast<int>(fam.cut_vertices.size()) == fam.count,
           Errc::internal_invariant_broken, "cut size disagrees with flow");
  } else {
    int S = n, T = n + 1;
    Dinic din(n + 2);
    // undirected unit edges: a single arc pair with capacity both ways
    for (auto [u, v] : edges) din.add(u, v, 1, 1);
    for (int a : sources) din.add(S, a, kInf);
    for (int b : sinks) din.add(b, T, kInf);
    fam.count = din.run(S, T);
    for (auto& w : din.walks(S, T, fam.count)) {
      std::vector<int> p;
      for (int node : w)
        if (node < n) p.push_back(node);
      fam.paths.push_back(std::move(p));
    }
    trim_to_terminals(fam.paths, is_src, is_snk);
    auto r = din.residual_reach(S);
    for (size_t i = 0; i < edges.size(); ++i)
      if (r[edges[i].first] != r[edges[i].second]) fam.cut_edges.push_back(static_cast<int>(i));
    expect(static_cast<int>(fam.cut_edges.size()) == fam.count, Errc::internal_invariant_broken,
           "cut size disagrees with flow");
  }
  return fam;
}

PathFamily disjoint_paths(const PlaneGraph& g, const std::vector<int>& sources,
                          const std::vector<int>& sinks, PathMode mode) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) edges.push_back(g.edge_ends(e));
  return disjoint_paths(g.n(), edges, sources, sinks, mode);
}

}  // namespace nestkit
