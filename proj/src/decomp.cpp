#include "nestkit/decomp.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nestkit/maxflow.hpp"
#include "nestkit/oracle.hpp"

namespace nestkit {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool bag_contains(const std::vector<int>& bag, int v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

std::vector<int> bag_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ValidationReport bad_report(std::string msg) { return {false, std::move(msg)}; }

}  // namespace

int StandardTreeDecomposition::width() const {
  int w = 0;
  for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()));
  return w - 1;
}

std::vector<int> StandardTreeDecomposition::leaves() const {
  std::vector<int> out;
  for (int t = 1; t < static_cast<int>(nodes.size()); ++t)
    if (nodes[t].children.empty()) out.push_back(t);
  return out;
}

ValidationReport validate_decomposition(const PlaneGraph& g, const StandardTreeDecomposition& d,
                                        bool exhaustive_nesting) {
  const int nn = static_cast<int>(d.nodes.size());
  if (nn == 0) return bad_report("decomposition has no nodes");
  if (d.nodes[0].parent != -1) return bad_report("root must not have a parent");
  if (d.nodes[0].ring) return bad_report("root must not carry a ring");

  for (int t = 0; t < nn; ++t) {
    const auto& nd = d.nodes[t];
    if (t > 0) {
      if (nd.parent < 0 || nd.parent >= nn)
        return bad_report("node " + std::to_string(t) + " has an invalid parent");
      const auto& pc = d.nodes[nd.parent].children;
      if (std::find(pc.begin(), pc.end(), t) == pc.end())
        return bad_report("node " + std::to_string(t) + " is missing from its parent's children");
      if (!nd.ring) return bad_report("node " + std::to_string(t) + " has no ring");
    }
    for (int c : nd.children)
      if (c <= 0 || c >= nn || d.nodes[c].parent != t)
        return bad_report("child link " + std::to_string(t) + " -> " + std::to_string(c) +
                          " is inconsistent");
    if (!std::is_sorted(nd.bag.begin(), nd.bag.end()) ||
        std::adjacent_find(nd.bag.begin(), nd.bag.end()) != nd.bag.end())
      return bad_report("bag of node " + std::to_string(t) + " is not sorted and unique");
    for (int v : nd.bag)
      if (v < 0 || v >= g.n())
        return bad_report("bag of node " + std::to_string(t) + " mentions an unknown vertex");
  }

  {
    std::vector<char> seen(nn, 0);
    std::deque<int> dq{0};
    seen[0] = 1;
    int cnt = 1;
    while (!dq.empty()) {
      int t = dq.front();
      dq.pop_front();
      for (int c : d.nodes[t].children) {
        if (seen[c]) return bad_report("node " + std::to_string(c) + " reached twice; not a tree");
        seen[c] = 1;
        ++cnt;
        dq.push_back(c);
      }
    }
    if (cnt != nn) return bad_report("tree is disconnected from the root");
  }

  // coverage: every vertex and every edge lands in some bag
  std::vector<std::vector<int>> holders(g.n());
  for (int t = 0; t < nn; ++t)
    for (int v : d.nodes[t].bag) holders[v].push_back(t);
  for (int v = 0; v < g.n(); ++v)
    if (holders[v].empty()) return bad_report("vertex " + std::to_string(v) + " lies in no bag");
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge_ends(e);
    bool found = false;
    for (int t : holders[u])
      if (bag_contains(d.nodes[t].bag, v)) {
        found = true;
        break;
      }
    if (!found)
      return bad_report("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") lies in no bag");
  }

  // the nodes holding one vertex must form a connected subtree
  for (int v = 0; v < g.n(); ++v) {
    int tops = 0;
    for (int t : holders[v])
      if (t == 0 || !bag_contains(d.nodes[d.nodes[t].parent].bag, v)) ++tops;
    if (tops != 1)
      return bad_report("vertex " + std::to_string(v) + " appears in a disconnected set of bags");
  }

  // adjacent bags intersect exactly on their ring
  for (int t = 1; t < nn; ++t) {
    auto inter = bag_intersection(d.nodes[t].bag, d.nodes[d.nodes[t].parent].bag);
    if (inter != d.nodes[t].ring->sorted_vertices())
      return bad_report("bags of node " + std::to_string(t) +
                        " and its parent intersect off their ring");
  }

  // rings along a root path are distinct and nested; consecutive checks
  // suffice because disk containment is transitive and equal disks force
  // equal rings. Equality needs the edges too: on a multigraph the same
  // vertex cycle through the other parallel copy bounds a different disk.
  auto same_ring = [](const CycleInG& a, const CycleInG& b) {
    if (a.canonical() != b.canonical()) return false;
    auto ea = a.edges(), eb = b.edges();
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
  };
  for (int t = 1; t < nn; ++t) {
    const int p = d.nodes[t].parent;
    if (p == 0) continue;
    const CycleInG& rt = *d.nodes[t].ring;
    const CycleInG& rp = *d.nodes[p].ring;
    if (same_ring(rt, rp))
      return bad_report("ring repeats between node " + std::to_string(t) + " and its parent");
    if (!is_nested(g, rp, rt))
      return bad_report("ring of node " + std::to_string(t) +
                        " leaves the disk of its parent ring");
  }
  if (exhaustive_nesting) {
    for (int t = 1; t < nn; ++t)
      for (int a = d.nodes[t].parent; a != 0; a = d.nodes[a].parent) {
        if (same_ring(*d.nodes[t].ring, *d.nodes[a].ring))
          return bad_report("ring repeats between node " + std::to_string(t) + " and ancestor " +
                            std::to_string(a));
        if (!is_nested(g, *d.nodes[a].ring, *d.nodes[t].ring))
          return bad_report("ring of node " + std::to_string(t) +
                            " leaves the disk of ancestor " + std::to_string(a));
      }
  }
  return {};
}

StandardTreeDecomposition initial_decomposition(const PlaneGraph& g) {
  // parallel edges are fine as long as every face is a triangle; face-filled
  // graphs arrive here with doubled apex edges
  for (const auto& f : g.faces())
    expect(f.size() == 3, Errc::not_a_triangulation,
           "initial decomposition needs triangular faces");
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge_ends(e);
    expect(a != b, Errc::not_a_triangulation, "loop edge");
  }
  CycleInG outer_ring(g, g.face_darts(g.outer_face()));
  StandardTreeDecomposition d;
  d.nodes.resize(2);
  d.nodes[0].bag = outer_ring.sorted_vertices();
  d.nodes[0].children = {1};
  d.nodes[1].parent = 0;
  d.nodes[1].bag.resize(g.n());
  std::iota(d.nodes[1].bag.begin(), d.nodes[1].bag.end(), 0);
  d.nodes[1].ring = std::move(outer_ring);
  return d;
}

namespace {

std::vector<int> bfs_dist(const PlaneGraph& h, int src) {
  std::vector<int> dist(h.n(), -1);
  std::deque<int> dq{src};
  dist[src] = 0;
  while (!dq.empty()) {
    int u = dq.front();
    dq.pop_front();
    for (int dd : h.out_darts(u)) {
      int w = h.head(dd);
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        dq.push_back(w);
      }
    }
  }
  return dist;
}

struct RingViolation {
  int hu = -1, hv = -1;  // disk-local ids, parent id of hu smaller
  int dist = INT_MAX;
};

// ring pair joined faster through the disk than along the ring, minimal
// distance first, ties by parent id pair
std::optional<RingViolation> min_violating_pair(const PlaneGraph& h, const CycleInG& bc,
                                                const std::vector<int>& to_parent) {
  const auto& cv = bc.vertices();
  const int L = bc.length();
  std::optional<RingViolation> best;
  std::pair<int, int> best_key{INT_MAX, INT_MAX};
  for (int i = 0; i < L; ++i) {
    auto dist = bfs_dist(h, cv[i]);
    for (int j = 0; j < L; ++j) {
      const int gap = std::abs(i - j);
      const int arc = std::min(gap, L - gap);
      if (arc < 2) continue;
      const int dh = dist[cv[j]];
      expect(dh >= 0, Errc::internal_invariant_broken, "disk graph is disconnected");
      if (dh >= arc) continue;
      int a = cv[i], b = cv[j];
      int pu = to_parent[a], pv = to_parent[b];
      if (pu > pv) {
        std::swap(pu, pv);
        std::swap(a, b);
      }
      const std::pair<int, int> key{pu, pv};
      if (!best || dh < best->dist || (dh == best->dist && key < best_key)) {
        best = RingViolation{a, b, dh};
        best_key = key;
      }
    }
  }
  return best;
}

// shortest hu-hv path as darts, predecessor ties resolved by smallest parent
// id, parallel edges by smallest dart; darts keep the region choice exact
std::vector<int> shortcut_path(const PlaneGraph& h, int hu, int hv,
                               const std::vector<int>& to_parent) {
  auto dist = bfs_dist(h, hu);
  std::vector<int> rev;
  int cur = hv;
  while (cur != hu) {
    int pick = -1;
    for (int dd : h.out_darts(cur)) {
      int w = h.head(dd);
      if (dist[w] != dist[cur] - 1) continue;
      if (pick < 0 || to_parent[w] < to_parent[h.head(pick)] ||
          (w == h.head(pick) && dd < pick))
        pick = dd;
    }
    expect(pick >= 0, Errc::internal_invariant_broken, "shortest path reconstruction failed");
    rev.push_back(PlaneGraph::twin(pick));
    cur = h.head(pick);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace

DecompOutcome refine(const PlaneGraph& g, int k) {
  expect(k >= 1, Errc::bad_input, "nest size target must be positive");
  StandardTreeDecomposition d = initial_decomposition(g);
  std::set<int> work{1};
  while (!work.empty()) {
    const int t = *work.begin();
    work.erase(work.begin());
    while (true) {
      const CycleInG ring = *d.nodes[t].ring;
      const DiskSubgraph disk = disk_subgraph(g, ring);
      const PlaneGraph& h = disk.graph;
      if (h.face_count() <= 2) break;  // a single face inside: leaf is finished
      const CycleInG bc(h, disk.boundary_darts);

      if (auto viol = min_violating_pair(h, bc, disk.to_parent)) {
        // split along a shortcut; minimality keeps its interior off the ring
        const auto path = shortcut_path(h, viol->hu, viol->hv, disk.to_parent);
        std::vector<int> pverts{viol->hu};
        for (int dd : path) pverts.push_back(h.head(dd));
        for (int i = 1; i + 1 < static_cast<int>(pverts.size()); ++i)
          expect(!bc.contains_vertex(pverts[i]), Errc::internal_invariant_broken,
                 "minimal shortcut touched the ring");
        const int iu = bc.index_of(viol->hu), iv = bc.index_of(viol->hv);
        const int L = bc.length();
        // children assembled dart by dart: ring arc plus the shortcut, one
        // orientation each, so parallel edges stay on their own sides
        std::vector<int> c1, c2;
        for (int p = iu; p != iv; p = (p + 1) % L) c1.push_back(ring.darts()[p]);
        for (int i = static_cast<int>(path.size()) - 1; i >= 0; --i)
          c1.push_back(disk.dart_to_parent[PlaneGraph::twin(path[i])]);
        for (int p = iv; p != iu; p = (p + 1) % L) c2.push_back(ring.darts()[p]);
        for (int dd : path) c2.push_back(disk.dart_to_parent[dd]);
        CycleInG r1(g, std::move(c1));
        CycleInG r2(g, std::move(c2));
        expect(r1.length() < ring.length() && r2.length() < ring.length(),
               Errc::internal_invariant_broken, "split failed to shorten the ring");

        std::vector<int> tb = ring.sorted_vertices();
        for (int hv2 : pverts) tb.push_back(disk.to_parent[hv2]);
        const int id1 = static_cast<int>(d.nodes.size());
        const int id2 = id1 + 1;
        DecompNode n1, n2;
        n1.parent = n2.parent = t;
        n1.bag = disk_vertices(g, r1);
        n1.ring = std::move(r1);
        n2.bag = disk_vertices(g, r2);
        n2.ring = std::move(r2);
        d.nodes[t].bag = sorted_unique(std::move(tb));
        d.nodes[t].children = {id1, id2};
        d.nodes.push_back(std::move(n1));
        d.nodes.push_back(std::move(n2));
        work.insert(id1);
        work.insert(id2);
        break;
      }

      if (ring.length() < 8 * k) {
        // absorb the inner face at the smallest usable ring edge
        const auto& rv = ring.vertices();
        const int L = ring.length();
        std::vector<int> order(L);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          return std::minmax(rv[a], rv[(a + 1) % L]) < std::minmax(rv[b], rv[(b + 1) % L]);
        });
        int pos = -1, w = -1, rep1 = -1, rep2 = -1;
        for (int p : order) {
          const int bd0 = disk.boundary_darts[p];
          const bool flip = h.face_of(bd0) == h.outer_face();
          const int td = flip ? PlaneGraph::twin(bd0) : bd0;
          const int f = h.face_of(td);
          expect(f != h.outer_face() && h.face_len(f) == 3, Errc::internal_invariant_broken,
                 "inner face at a ring edge must be a triangle");
          const int d2 = h.face_next(td), d3 = h.face_next(d2);
          const int hw = h.head(d2);
          if (bc.contains_vertex(hw)) continue;
          pos = p;
          w = disk.to_parent[hw];
          // detour darts taken from the triangle itself, oriented with the
          // ring, so the extension hugs the absorbed face exactly
          rep1 = disk.dart_to_parent[flip ? d2 : PlaneGraph::twin(d3)];
          rep2 = disk.dart_to_parent[flip ? d3 : PlaneGraph::twin(d2)];
          break;
        }
        expect(pos >= 0, Errc::internal_invariant_broken,
               "geodesic ring with interior admits no extension");
        std::vector<int> ndarts(ring.darts().begin(), ring.darts().end());
        ndarts[pos] = rep1;
        ndarts.insert(ndarts.begin() + pos + 1, rep2);
        CycleInG nring(g, std::move(ndarts));

        const int mid = static_cast<int>(d.nodes.size());
        DecompNode mn;
        mn.parent = d.nodes[t].parent;
        mn.children = {t};
        mn.bag = ring.sorted_vertices();
        mn.bag.push_back(w);
        mn.bag = sorted_unique(std::move(mn.bag));
        mn.ring = ring;
        auto& pc = d.nodes[mn.parent].children;
        *std::find(pc.begin(), pc.end(), t) = mid;
        d.nodes.push_back(std::move(mn));
        d.nodes[t].parent = mid;
        d.nodes[t].bag = disk_vertices(g, nring);
        d.nodes[t].ring = std::move(nring);
        continue;
      }

      expect(ring.length() == 8 * k, Errc::internal_invariant_broken, "ring grew past its cap");
      if (static_cast<int>(d.nodes[t].bag.size()) <= 12 * k) break;  // within width, done

      // oversized leaf stuck at a geodesic ring of full length
      Nest inner = zero_nest_endgame(h, bc, k);
      std::vector<CycleInG> lifted;
      for (const auto& cyc : inner.cycles) {
        std::vector<int> ds;
        for (int dd : cyc.darts()) ds.push_back(disk.dart_to_parent[dd]);
        lifted.emplace_back(g, std::move(ds));
      }
      Nest out = make_nest(g, std::move(lifted));
      expect(out.s == 0 && out.size() == k, Errc::internal_invariant_broken,
             "endgame nest came out wrong");
      return {std::move(out), std::nullopt};
    }
  }

  for (const auto& nd : d.nodes) {
    const int deg = static_cast<int>(nd.children.size()) + (nd.parent >= 0 ? 1 : 0);
    expect(deg <= 3, Errc::internal_invariant_broken, "tree degree exceeded three");
  }
  const auto rep = validate_decomposition(g, d);
  expect(rep.ok, Errc::internal_invariant_broken,
         "refined decomposition failed validation: " + rep.message);
  expect(d.width() <= 12 * k - 1, Errc::internal_invariant_broken,
         "refined decomposition too wide");
  return {std::nullopt, std::move(d)};
}

std::vector<CycleInG> nested_cycles_radial(const PlaneGraph& g) {
  const int F = g.face_count();
  const int N = g.n();
  std::vector<int> df(F, INT_MAX), dv(N, INT_MAX);

  // 0/1 BFS over face-vertex incidences: stepping onto a vertex costs one,
  // stepping onto a face is free
  struct Item {
    int dist, kind, id;  // kind 0 face, 1 vertex
  };
  std::deque<Item> dq;
  df[g.outer_face()] = 0;
  dq.push_back({0, 0, g.outer_face()});
  while (!dq.empty()) {
    const Item it = dq.front();
    dq.pop_front();
    if (it.dist != (it.kind == 0 ? df[it.id] : dv[it.id])) continue;
    if (it.kind == 0) {
      for (int dd : g.face_darts(it.id)) {
        const int v = g.origin(dd);
        if (it.dist + 1 < dv[v]) {
          dv[v] = it.dist + 1;
          dq.push_back({dv[v], 1, v});
        }
      }
    } else {
      for (int dd : g.out_darts(it.id)) {
        const int f = g.face_of(dd);
        if (it.dist < df[f]) {
          df[f] = it.dist;
          dq.push_front({df[f], 0, f});
        }
      }
    }
  }

  int fstar = 0;
  for (int f = 0; f < F; ++f)
    if (df[f] > df[fstar]) fstar = f;
  const int levels = df[fstar];
  std::vector<CycleInG> out;
  if (levels == 0) return out;

  // fixed dual path from the outer face to the deepest face; a cycle
  // separates the two exactly when it crosses the path an odd number of times
  std::vector<int> par_face(F, -1), par_edge(F, -1);
  {
    std::deque<int> q2{g.outer_face()};
    std::vector<char> vis(F, 0);
    vis[g.outer_face()] = 1;
    while (!q2.empty()) {
      const int f = q2.front();
      q2.pop_front();
      for (int dd : g.face_darts(f)) {
        const int nf = g.face_of(PlaneGraph::twin(dd));
        if (!vis[nf]) {
          vis[nf] = 1;
          par_face[nf] = f;
          par_edge[nf] = PlaneGraph::edge_of(dd);
          q2.push_back(nf);
        }
      }
    }
  }
  std::vector<char> ref_edge(g.edge_count(), 0);
  for (int f = fstar; f != g.outer_face(); f = par_face[f]) {
    expect(par_face[f] >= 0, Errc::internal_invariant_broken, "dual graph is disconnected");
    ref_edge[par_edge[f]] = 1;
  }

  for (int j = 1; j <= levels; ++j) {
    // component of depth >= j faces around the deepest face
    std::vector<char> comp(F, 0);
    {
      std::deque<int> q2{fstar};
      comp[fstar] = 1;
      while (!q2.empty()) {
        const int f = q2.front();
        q2.pop_front();
        for (int dd : g.face_darts(f)) {
          const int nf = g.face_of(PlaneGraph::twin(dd));
          if (!comp[nf] && df[nf] >= j) {
            comp[nf] = 1;
            q2.push_back(nf);
          }
        }
      }
    }
    std::vector<char> isb(g.dart_count(), 0);
    std::vector<int> border;
    for (int dd = 0; dd < g.dart_count(); ++dd)
      if (comp[g.face_of(dd)] && !comp[g.face_of(PlaneGraph::twin(dd))]) {
        isb[dd] = 1;
        border.push_back(dd);
      }

    std::vector<char> used(g.dart_count(), 0);
    std::vector<int> pos(N, -1);
    std::optional<CycleInG> level_cycle;
    for (int start : border) {
      if (level_cycle) break;
      if (used[start]) continue;
      // trace the region boundary walk with the region on the left
      std::vector<int> walk;
      int dcur = start;
      do {
        used[dcur] = 1;
        walk.push_back(dcur);
        int e = g.face_next(dcur);
        while (!isb[e]) e = g.face_next(PlaneGraph::twin(e));
        dcur = e;
      } while (dcur != start);

      // cut the closed walk into simple cycles at repeated vertices
      std::vector<int> stack;
      std::vector<int> touched{g.origin(walk[0])};
      pos[g.origin(walk[0])] = 0;
      std::vector<std::vector<int>> simple;
      for (int dd : walk) {
        stack.push_back(dd);
        const int x = g.head(dd);
        if (pos[x] >= 0) {
          const int s = pos[x];
          simple.emplace_back(stack.begin() + s, stack.end());
          for (int cd : simple.back()) pos[g.origin(cd)] = -1;
          stack.resize(s);
          pos[x] = s;
          touched.push_back(x);
        } else {
          pos[x] = static_cast<int>(stack.size());
          touched.push_back(x);
        }
      }
      expect(stack.empty(), Errc::internal_invariant_broken, "boundary walk did not close");
      for (int v : touched) pos[v] = -1;

      for (auto& cyc : simple) {
        int par = 0;
        for (int cd : cyc) par ^= ref_edge[PlaneGraph::edge_of(cd)];
        if (par) {
          level_cycle = CycleInG(g, cyc);
          break;
        }
      }
    }
    expect(level_cycle.has_value(), Errc::internal_invariant_broken,
           "no separating cycle at a radial level");
    out.push_back(std::move(*level_cycle));
  }

  // levels use disjoint vertex sets and nest strictly
  for (size_t i = 0; i < out.size(); ++i)
    for (int v : out[i].vertices())
      expect(dv[v] == static_cast<int>(i) + 1, Errc::internal_invariant_broken,
             "radial cycle strayed off its level");
  for (size_t i = 0; i + 1 < out.size(); ++i)
    expect(is_nested(g, out[i], out[i + 1]), Errc::internal_invariant_broken,
           "radial levels failed to nest");
  return out;
}

namespace {

// shared fallbacks: peel the disk radially, then try exhaustive search when
// the disk is small enough
std::optional<Nest> nest_fallbacks(const PlaneGraph& h, int k) {
  {
    auto peel = nested_cycles_radial(h);
    if (static_cast<int>(peel.size()) >= k) {
      std::vector<CycleInG> take(peel.begin(), peel.begin() + k);
      auto rep = verify_nest(h, take);
      if (rep.ok && rep.s == 0) return Nest{std::move(take), 0, {}};
    }
  }
  if (h.n() <= oracle::vertex_cap()) {
    auto w = oracle::max_nest(h, 0);
    if (static_cast<int>(w.cycles.size()) >= k) {
      std::vector<CycleInG> take;
      for (int i = 0; i < k; ++i) take.push_back(CycleInG::from_vertices(h, w.cycles[i]));
      auto rep = verify_nest(h, take);
      if (rep.ok && rep.s == 0) return Nest{std::move(take), 0, {}};
    }
  }
  return std::nullopt;
}

// the direct construction: k concentric cycles stitched from path segments
// of the two families
std::optional<Nest> mesh_walk_nest(const PlaneGraph& h, const std::vector<std::vector<int>>& p,
                                   const std::vector<std::vector<int>>& q, int k) {
  try {
    const int twok = 2 * k;
    std::vector<std::map<int, int>> ppos(twok), qpos(twok);
    for (int i = 0; i < twok; ++i) {
      for (int a = 0; a < static_cast<int>(p[i].size()); ++a) ppos[i].emplace(p[i][a], a);
      for (int a = 0; a < static_cast<int>(q[i].size()); ++a) qpos[i].emplace(q[i][a], a);
    }
    // first index of path where the other family's path is hit, scanning
    // from a starting index outward in the stated direction first
    auto first_hit = [](const std::vector<int>& path, const std::map<int, int>& target,
                        int from) -> int {
      for (int a = from; a < static_cast<int>(path.size()); ++a)
        if (target.count(path[a])) return a;
      for (int a = from - 1; a >= 0; --a)
        if (target.count(path[a])) return a;
      return -1;
    };
    auto segment = [](const std::vector<int>& path, int a, int b) {
      std::vector<int> out;
      const int step = a <= b ? 1 : -1;
      for (int i = a;; i += step) {
        out.push_back(path[i]);
        if (i == b) break;
      }
      return out;
    };

    std::vector<CycleInG> cycles;
    for (int i = 0; i < k; ++i) {
      const auto& pa = p[i];
      const auto& pb = p[twok - 1 - i];
      const auto& qa = q[i];
      const auto& qb = q[twok - 1 - i];
      const int ia = first_hit(pa, qpos[i], 0);
      const int ib = first_hit(pa, qpos[twok - 1 - i], 0);
      if (ia < 0 || ib < 0) return std::nullopt;
      auto s1 = segment(pa, ia, ib);
      const int jb = qpos[twok - 1 - i].at(pa[ib]);
      const int jc = first_hit(qb, ppos[twok - 1 - i], jb);
      if (jc < 0) return std::nullopt;
      auto s2 = segment(qb, jb, jc);
      const int ic = ppos[twok - 1 - i].at(qb[jc]);
      const int id = first_hit(pb, qpos[i], ic);
      if (id < 0) return std::nullopt;
      auto s3 = segment(pb, ic, id);
      const int jd = qpos[i].at(pb[id]);
      auto s4 = segment(qa, jd, qpos[i].at(pa[ia]));
      std::vector<int> verts(s1.begin(), s1.end());
      verts.insert(verts.end(), s2.begin() + 1, s2.end());
      verts.insert(verts.end(), s3.begin() + 1, s3.end());
      verts.insert(verts.end(), s4.begin() + 1, s4.end() - 1);
      cycles.push_back(CycleInG::from_vertices(h, verts));
    }
    std::sort(cycles.begin(), cycles.end(), [&](const CycleInG& a, const CycleInG& b) {
      return disk_info(h, a).inside_face_count > disk_info(h, b).inside_face_count;
    });
    auto rep = verify_nest(h, cycles);
    if (rep.ok && rep.s == 0) return Nest{std::move(cycles), 0, {}};
    return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

Nest zero_nest_from_mesh(const PlaneGraph& h, const CycleInG& c,
                         const std::vector<std::vector<int>>& p_paths,
                         const std::vector<std::vector<int>>& q_paths, int k) {
  expect(k >= 1, Errc::bad_input, "nest size target must be positive");
  expect(c.length() == 8 * k, Errc::bad_input, "mesh ring must have length 8k");
  expect(static_cast<int>(p_paths.size()) == 2 * k && static_cast<int>(q_paths.size()) == 2 * k,
         Errc::bad_input, "mesh needs two families of 2k paths");
  if (auto direct = mesh_walk_nest(h, p_paths, q_paths, k)) return *direct;
  if (auto fb = nest_fallbacks(h, k)) return *fb;
  fail(Errc::mesh_degenerate, "mesh walk failed and the disk resists the fallbacks");
}

Nest zero_nest_endgame(const PlaneGraph& h, const CycleInG& c, int k) {
  expect(k >= 1 && c.length() == 8 * k, Errc::bad_input, "endgame ring must have length 8k");
  const auto& cv = c.vertices();
  auto arc = [&](int s) {
    std::vector<int> a;
    for (int i = 0; i < 2 * k; ++i) a.push_back(cv[s * 2 * k + i]);
    return a;
  };
  const auto a1 = arc(0), a2 = arc(1), a3 = arc(2), a4 = arc(3);
  PathFamily p = disjoint_paths(h, a1, a3, PathMode::VertexDisjoint);
  PathFamily q = disjoint_paths(h, a2, a4, PathMode::VertexDisjoint);
  if (p.count == 2 * k && q.count == 2 * k) {
    auto order = [](std::vector<std::vector<int>>& fam, const std::vector<int>& src) {
      std::map<int, int> at;
      for (int i = 0; i < static_cast<int>(src.size()); ++i) at[src[i]] = i;
      std::sort(fam.begin(), fam.end(), [&](const auto& x, const auto& y) {
        return at.at(x.front()) < at.at(y.front());
      });
    };
    order(p.paths, a1);
    order(q.paths, a2);
    return zero_nest_from_mesh(h, c, p.paths, q.paths, k);
  }
  if (auto fb = nest_fallbacks(h, k)) return *fb;
  fail(Errc::mesh_degenerate, "arc families fell short and the fallbacks failed");
}

}  // namespace nestkit
