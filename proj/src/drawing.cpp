#include "nestkit/drawing.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "nestkit/maxflow.hpp"
#include "nestkit/oracle.hpp"

namespace nestkit {

namespace {

std::pair<int, int> norm_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

Drawing Drawing::from_plane_graph(const PlaneGraph& g) {
  expect(g.is_simple(), Errc::bad_input, "base graph must be simple");
  Drawing d;
  d.base_n_ = g.n();
  d.plan_ = g;
  std::vector<std::pair<std::pair<int, int>, int>> ends;
  ends.reserve(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge_ends(e);
    ends.emplace_back(norm_pair(u, v), e);
  }
  std::sort(ends.begin(), ends.end());
  d.seg_origin_.assign(g.edge_count(), -1);
  d.base_edges_.reserve(ends.size());
  for (size_t i = 0; i < ends.size(); ++i) {
    d.base_edges_.push_back(ends[i].first);
    d.seg_origin_[ends[i].second] = static_cast<int>(i);
  }
  d.edge_crossings_.assign(ends.size(), {});
  return d;
}

Drawing Drawing::from_planarization(const PlaneGraph& plan,
                                    const std::vector<int>& crossing_vertices) {
  std::vector<int> marked = crossing_vertices;
  std::sort(marked.begin(), marked.end());
  expect(std::adjacent_find(marked.begin(), marked.end()) == marked.end(), Errc::bad_input,
         "crossing vertex listed twice");
  const int l = static_cast<int>(marked.size());
  const int b = plan.n() - l;
  expect(b >= 1, Errc::bad_input, "drawing needs at least one base vertex");
  std::vector<char> is_marked(plan.n(), 0);
  for (int v : marked) {
    expect(v >= 0 && v < plan.n(), Errc::bad_input, "crossing vertex out of range");
    is_marked[v] = 1;
    expect(plan.degree(v) == 4, Errc::bad_input, "crossing vertex must have degree 4");
  }

  // crossing vertices go last so that crossing j is plan vertex b + j
  std::vector<int> perm(plan.n());
  int next = 0;
  for (int v = 0; v < plan.n(); ++v)
    if (!is_marked[v]) perm[v] = next++;
  for (int v : marked) perm[v] = next++;
  bool identity = true;
  for (int v = 0; v < plan.n(); ++v) identity = identity && perm[v] == v;
  PlaneGraph p = plan;
  if (!identity) {
    // rebuilding through rotation lists re-pairs parallel edges by occurrence,
    // which may differ from the input pairing; refuse rather than guess
    expect(plan.is_simple(), Errc::bad_input,
           "with parallel segments the crossing vertices must already come last");
    std::vector<std::vector<int>> nbrs(plan.n());
    for (int v = 0; v < plan.n(); ++v) {
      auto& row = nbrs[perm[v]];
      row.reserve(plan.degree(v));
      for (int dd : plan.out_darts(v)) row.push_back(perm[plan.head(dd)]);
    }
    std::vector<int> outer;
    for (int dd : plan.face_darts(plan.outer_face())) outer.push_back(perm[plan.origin(dd)]);
    p = PlaneGraph::from_rotation(plan.n(), nbrs, outer);
  }

  Drawing d;
  d.base_n_ = b;
  d.plan_ = p;
  d.seg_origin_.assign(p.edge_count(), -1);

  // walk every edge chain straight through its crossings
  auto straight = [&p](int din) { return p.rot_next(p.rot_next(PlaneGraph::twin(din))); };
  struct ChainRec {
    int u = -1, v = -1;
    std::vector<int> segs;   // plan edges, from u
    std::vector<int> cross;  // crossing ids, from u
  };
  std::vector<ChainRec> chains;
  std::map<std::pair<int, int>, int> chain_of;
  std::vector<int> visits(l, 0);
  std::vector<char> claimed(p.edge_count(), 0);
  for (int u = 0; u < b; ++u)
    for (int dd : p.out_darts(u)) {
      if (claimed[PlaneGraph::edge_of(dd)]) continue;
      ChainRec rec;
      rec.u = u;
      std::vector<char> seen_here(l, 0);
      int cur = dd;
      while (true) {
        claimed[PlaneGraph::edge_of(cur)] = 1;
        rec.segs.push_back(PlaneGraph::edge_of(cur));
        int h = p.head(cur);
        if (h < b) {
          rec.v = h;
          break;
        }
        int ci = h - b;
        expect(!seen_here[ci], Errc::bad_input, "edge crosses itself");
        seen_here[ci] = 1;
        ++visits[ci];
        rec.cross.push_back(ci);
        cur = straight(cur);
      }
      expect(rec.v != rec.u, Errc::bad_input, "edge chain closes into a loop");
      // u scans upward, so every chain is first met from its lower endpoint
      expect(rec.u < rec.v, Errc::internal_invariant_broken, "chain met from its upper end");
      auto key = std::pair(rec.u, rec.v);
      expect(chain_of.find(key) == chain_of.end(), Errc::bad_input, "parallel base edges");
      chain_of.emplace(key, static_cast<int>(chains.size()));
      chains.push_back(std::move(rec));
    }
  for (int e = 0; e < p.edge_count(); ++e)
    expect(claimed[e], Errc::bad_input, "segments form a closed loop of crossings");
  for (int ci = 0; ci < l; ++ci)
    expect(visits[ci] == 2, Errc::bad_input, "crossing vertex not passed by exactly two chains");

  d.base_edges_.reserve(chains.size());
  d.edge_crossings_.reserve(chains.size());
  std::vector<std::array<int, 2>> hit_edge(l, {-1, -1});
  std::vector<std::array<int, 2>> hit_pos(l, {-1, -1});
  for (const auto& [key, idx] : chain_of) {
    int e = static_cast<int>(d.base_edges_.size());
    const ChainRec& rec = chains[idx];
    d.base_edges_.push_back(key);
    for (int seg : rec.segs) d.seg_origin_[seg] = e;
    for (size_t j = 0; j < rec.cross.size(); ++j) {
      auto& he = hit_edge[rec.cross[j]];
      auto& hp = hit_pos[rec.cross[j]];
      int slot = he[0] < 0 ? 0 : 1;
      he[slot] = e;
      hp[slot] = static_cast<int>(j);
    }
    d.edge_crossings_.push_back(rec.cross);
  }
  d.crossings_.reserve(l);
  for (int ci = 0; ci < l; ++ci)
    d.crossings_.push_back({hit_edge[ci][0], hit_edge[ci][1], hit_pos[ci][0], hit_pos[ci][1]});
  return d;
}

GenericReport check_generic(const Drawing& d) {
  for (size_t i = 0; i < d.crossings().size(); ++i) {
    const Crossing& c = d.crossings()[i];
    if (c.e1 == c.e2)
      return {false, static_cast<int>(i), "edge crosses itself"};
    auto [a1, b1] = d.base_edge_ends(c.e1);
    auto [a2, b2] = d.base_edge_ends(c.e2);
    if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2)
      return {false, static_cast<int>(i), "adjacent edges cross"};
  }
  return {};
}

Planarization planarize(const Drawing& d) {
  GenericReport rep = check_generic(d);
  expect(rep.ok, Errc::bad_input, "drawing is not generic: " + rep.message);
  Planarization p;
  p.plane_graph = d.plan();
  p.v4.resize(d.crossings().size());
  std::iota(p.v4.begin(), p.v4.end(), d.base_n());
  p.edge_origin.resize(d.plan().edge_count());
  for (int e = 0; e < d.plan().edge_count(); ++e) p.edge_origin[e] = d.segment_origin(e);
  return p;
}

EulerReport euler_accounting(const Planarization& p, long long r) {
  const PlaneGraph& g = p.plane_graph;
  EulerReport rep;
  rep.deficit.resize(g.n());
  for (int v = 0; v < g.n(); ++v) {
    rep.deficit[v] = 6 - g.degree(v);
    rep.vertex_term += rep.deficit[v];
  }
  for (const auto& f : g.faces()) {
    long long len = static_cast<long long>(f.size());
    rep.face_term += 2 * (3 - len);
    rep.excess += len - 3;
    if (len != 3) ++rep.nontriangular_faces;
  }
  expect(rep.vertex_term + rep.face_term == 12, Errc::identity_violated,
         "deficit terms sum to " + std::to_string(rep.vertex_term + rep.face_term));
  rep.bound = static_cast<long long>(p.v4.size()) + r - 6;
  std::vector<char> on_v4(g.n(), 0);
  for (int v : p.v4) on_v4[v] = 1;
  long long off = 0;
  for (int v = 0; v < g.n(); ++v)
    if (!on_v4[v]) off += rep.deficit[v];
  rep.hypothesis_ok = off <= r;
  rep.bound_ok = rep.excess <= rep.bound;
  return rep;
}

Planarization fill_faces(const Planarization& p) {
  const PlaneGraph& g = p.plane_graph;
  std::vector<int> nontri;
  for (int f = 0; f < g.face_count(); ++f)
    if (g.face_len(f) != 3) nontri.push_back(f);
  if (nontri.empty()) return p;
  int extra = 0;
  for (int f : nontri) extra += g.face_len(f);
  const int dc = g.dart_count();
  std::vector<int> origin(dc + 2 * extra, -1), rot(dc + 2 * extra, -1);
  for (int dd = 0; dd < dc; ++dd) {
    origin[dd] = g.origin(dd);
    rot[dd] = g.rot_next(dd);
  }
  Planarization out;
  out.v4 = p.v4;
  out.apexes = p.apexes;
  out.edge_origin = p.edge_origin;
  int nd = dc;
  int apex = g.n();
  int outer_dart = g.face_darts(g.outer_face())[0];
  for (int f : nontri) {
    const auto& walk = g.face_darts(f);
    const int L = static_cast<int>(walk.size());
    // fan darts: s[j] runs walk vertex j -> apex, its twin back
    std::vector<int> s(L);
    for (int j = 0; j < L; ++j) {
      s[j] = nd;
      nd += 2;
      origin[s[j]] = g.origin(walk[j]);
      origin[s[j] ^ 1] = apex;
    }
    for (int j = 0; j < L; ++j) {
      int prev = walk[(j + L - 1) % L];
      // splice into the corner between the walk's in- and out-dart
      rot[PlaneGraph::twin(prev)] = s[j];
      rot[s[j]] = walk[j];
      rot[s[j] ^ 1] = s[(j + L - 1) % L] ^ 1;
    }
    if (f == g.outer_face()) outer_dart = walk[0];  // its fan triangle stays outermost
    out.apexes.push_back(apex++);
  }
  out.plane_graph = PlaneGraph::from_darts(apex, std::move(origin), std::move(rot), outer_dart);
  for (const auto& fw : out.plane_graph.faces())
    expect(fw.size() == 3, Errc::internal_invariant_broken, "face fill left a non-triangle");
  out.edge_origin.resize(out.plane_graph.edge_count(), -1);
  return out;
}

DrawingNest nest_in_drawing(const Drawing& d, int k, long long r) {
  expect(k >= 1, Errc::bad_input, "requested nest size must be positive");
  Planarization filled = fill_faces(planarize(d));
  const long long l = static_cast<long long>(d.crossings().size());
  DrawingNest out;
  out.target = static_cast<int>(std::max<long long>(k, k + 2 * l + r - 6));
  FoundNest found = find_nest(filled.plane_graph, out.target);
  std::vector<std::vector<int>> keep;
  for (const CycleInG& c : found.nest.cycles) {
    bool clean = true;
    for (int v : c.vertices()) clean = clean && v < d.base_n();
    if (clean)
      keep.push_back(c.vertices());
    else
      ++out.dropped;
  }
  out.guaranteed = static_cast<int>(keep.size()) >= k;
  if (static_cast<int>(keep.size()) > k) keep.resize(k);
  if (keep.empty()) return out;
  // surviving cycles avoid every crossing, so their segments are whole
  // uncrossed base edges and carry over to the plan unchanged
  std::vector<CycleInG> cycles;
  cycles.reserve(keep.size());
  for (const auto& vs : keep) cycles.push_back(CycleInG::from_vertices(d.plan(), vs));
  out.nest = make_nest(d.plan(), cycles);
  return out;
}

std::vector<int> crossings_in_annulus(const Drawing& d, const Nest& nest, int i) {
  expect(i >= 0 && i + 1 < nest.size(), Errc::bad_input, "annulus index out of range");
  DiskInfo outer = disk_info(d.plan(), nest.cycles[i]);
  DiskInfo inner = disk_info(d.plan(), nest.cycles[i + 1]);
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(d.crossings().size()); ++j) {
    int w = d.crossing_vertex(j);
    expect(outer.vertex_side[w] != Side::OnCycle && inner.vertex_side[w] != Side::OnCycle,
           Errc::bad_input, "nest cycle passes through a crossing");
    if (outer.vertex_side[w] == Side::Inside && inner.vertex_side[w] == Side::Outside)
      out.push_back(j);
  }
  return out;
}

Nest clean_subnest(const Drawing& d, const Nest& nest, int k, int t) {
  expect(k >= 0 && t >= 1, Errc::bad_input, "window parameters out of range");
  expect(static_cast<int>(d.crossings().size()) <= k, Errc::bad_input,
         "drawing has more than k crossings");
  const int m = nest.size();
  int w = -1;
  if (m >= t) {
    std::vector<char> free_gap(m > 0 ? m - 1 : 0, 0);
    for (int i = 0; i + 1 < m; ++i) free_gap[i] = crossings_in_annulus(d, nest, i).empty();
    for (int start = 0; start + t - 1 < m && w < 0; ++start) {
      bool ok = true;
      for (int j = start; j < start + t - 1 && ok; ++j) ok = free_gap[j];
      if (ok) w = start;
    }
  }
  if (w < 0) {
    // k crossings block at most k of the m-1 gaps, so a nest of size
    // (k+1)(t-1)+1 always has t-1 consecutive free ones
    expect(m < (k + 1) * (t - 1) + 1, Errc::internal_invariant_broken,
           "window missing from a nest large enough to pigeonhole");
    fail(Errc::nest_too_small,
         "no crossing-free window of " + std::to_string(t) + " cycles");
  }
  std::vector<CycleInG> sub(nest.cycles.begin() + w, nest.cycles.begin() + w + t);
  Nest out = make_nest(d.plan(), sub);
  DiskInfo outer = disk_info(d.plan(), out.cycles.front());
  DiskInfo inner = disk_info(d.plan(), out.cycles.back());
  for (int j = 0; j < static_cast<int>(d.crossings().size()); ++j) {
    int cv = d.crossing_vertex(j);
    expect(inner.vertex_side[cv] == Side::Inside || outer.vertex_side[cv] == Side::Outside,
           Errc::internal_invariant_broken, "crossing caught between clean cycles");
  }
  return out;
}

BridgeReport bridge_report(const PlaneGraph& g, const CycleInG& outer, const CycleInG& inner,
                           const std::vector<int>& x_set, std::optional<int> omega_face) {
  std::vector<int> xs = x_set;
  std::sort(xs.begin(), xs.end());
  expect(std::adjacent_find(xs.begin(), xs.end()) == xs.end(), Errc::bad_input,
         "shared vertex listed twice");
  expect(xs.size() <= 2, Errc::bad_input, "at most two shared vertices supported");
  std::vector<int> inter;
  std::set_intersection(outer.sorted_vertices().begin(), outer.sorted_vertices().end(),
                        inner.sorted_vertices().begin(), inner.sorted_vertices().end(),
                        std::back_inserter(inter));
  expect(inter == xs, Errc::bad_input, "x_set must equal the cycles' vertex intersection");
  std::vector<char> on_h_edge(g.edge_count(), 0);
  for (int e : outer.edges()) on_h_edge[e] = 1;
  for (int e : inner.edges()) {
    expect(!on_h_edge[e], Errc::bad_input, "cycles share an edge");
    on_h_edge[e] = 1;
  }
  expect(is_nested(g, outer, inner), Errc::bad_input, "cycles are not nested");
  std::vector<char> on_h(g.n(), 0);
  for (int v : outer.vertices()) on_h[v] = 1;
  for (int v : inner.vertices()) on_h[v] = 1;

  // faces of H: flood g-faces across every edge not on a cycle
  std::vector<int> region(g.face_count(), -1);
  int nregions = 0;
  for (int f = 0; f < g.face_count(); ++f) {
    if (region[f] >= 0) continue;
    region[f] = nregions;
    std::vector<int> stack{f};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int dd : g.face_darts(cur)) {
        if (on_h_edge[PlaneGraph::edge_of(dd)]) continue;
        int nf = g.face_of(PlaneGraph::twin(dd));
        if (region[nf] < 0) {
          region[nf] = nregions;
          stack.push_back(nf);
        }
      }
    }
    ++nregions;
  }
  std::vector<char> touch_outer(nregions, 0), touch_inner(nregions, 0);
  for (int dd : outer.darts()) {
    touch_outer[region[g.face_of(dd)]] = 1;
    touch_outer[region[g.face_of(PlaneGraph::twin(dd))]] = 1;
  }
  for (int dd : inner.darts()) {
    touch_inner[region[g.face_of(dd)]] = 1;
    touch_inner[region[g.face_of(PlaneGraph::twin(dd))]] = 1;
  }
  std::vector<int> cand;
  for (int rg = 0; rg < nregions; ++rg)
    if (touch_outer[rg] && touch_inner[rg]) cand.push_back(rg);
  expect(static_cast<int>(cand.size()) == (xs.size() == 2 ? 2 : 1),
         Errc::internal_invariant_broken, "unexpected face count between the cycles");

  BridgeReport rep;
  std::vector<int> breg;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (on_h_edge[e]) continue;
    auto [a, bb] = g.edge_ends(e);
    if (!on_h[a] || !on_h[bb]) continue;
    HBridge hb;
    hb.edges = {e};
    hb.attachments = {std::min(a, bb), std::max(a, bb)};
    rep.bridges.push_back(std::move(hb));
    breg.push_back(region[g.face_of(2 * e)]);
  }
  std::vector<char> seen(g.n(), 0);
  for (int v0 = 0; v0 < g.n(); ++v0) {
    if (on_h[v0] || seen[v0]) continue;
    HBridge hb;
    std::set<int> att;
    std::vector<int> stack{v0};
    seen[v0] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      hb.vertices.push_back(u);
      for (int dd : g.out_darts(u)) {
        int h = g.head(dd);
        hb.edges.push_back(PlaneGraph::edge_of(dd));
        if (on_h[h])
          att.insert(h);
        else if (!seen[h]) {
          seen[h] = 1;
          stack.push_back(h);
        }
      }
    }
    std::sort(hb.vertices.begin(), hb.vertices.end());
    std::sort(hb.edges.begin(), hb.edges.end());
    hb.edges.erase(std::unique(hb.edges.begin(), hb.edges.end()), hb.edges.end());
    hb.attachments.assign(att.begin(), att.end());
    breg.push_back(region[g.face_of(g.out_darts(hb.vertices[0])[0])]);
    rep.bridges.push_back(std::move(hb));
  }

  int omega_region;
  if (omega_face) {
    expect(*omega_face >= 0 && *omega_face < g.face_count(), Errc::bad_input,
           "omega face out of range");
    omega_region = region[*omega_face];
    expect(std::find(cand.begin(), cand.end(), omega_region) != cand.end(), Errc::bad_input,
           "omega face is not bordered by both cycles");
  } else if (cand.size() == 1) {
    omega_region = cand[0];
  } else {
    // candidates come in region-id order, so ties pick the smaller face
    std::vector<int> score(cand.size(), 0);
    for (size_t i = 0; i < rep.bridges.size(); ++i)
      for (size_t c = 0; c < cand.size(); ++c)
        if (breg[i] == cand[c]) ++score[c];
    omega_region = cand[score[1] > score[0] ? 1 : 0];
    rep.omega_defaulted = true;
  }
  for (int f = 0; f < g.face_count(); ++f)
    if (region[f] == omega_region) {
      rep.omega_face = f;
      break;
    }
  std::vector<char> is_x(g.n(), 0);
  for (int x : xs) is_x[x] = 1;
  for (size_t i = 0; i < rep.bridges.size(); ++i) {
    rep.bridges[i].interior = breg[i] == omega_region;
    rep.bridges[i].singular = rep.bridges[i].attachments == xs;
  }

  // omega's boundary pieces on each cycle; one arc between the two shared
  // vertices when the cycle is split, the whole cycle otherwise
  auto boundary_walk = [&](const CycleInG& c) {
    const int L = c.length();
    std::vector<char> keep(L, 0);
    bool all = true;
    for (int i = 0; i < L; ++i) {
      int dd = c.darts()[i];
      keep[i] = region[g.face_of(dd)] == omega_region ||
                region[g.face_of(PlaneGraph::twin(dd))] == omega_region;
      all = all && keep[i];
    }
    if (all) return c.vertices();
    int start = -1;
    for (int i = 0; i < L && start < 0; ++i)
      if (keep[i] && !keep[(i + L - 1) % L]) start = i;
    expect(start >= 0, Errc::internal_invariant_broken, "omega boundary missing from a cycle");
    std::vector<int> walk{c.vertices()[start]};
    for (int i = start; keep[i % L]; ++i) {
      expect(i < start + L, Errc::internal_invariant_broken, "omega boundary arc does not close");
      walk.push_back(c.vertices()[(i + 1) % L]);
    }
    expect(std::binary_search(xs.begin(), xs.end(), walk.front()) &&
               std::binary_search(xs.begin(), xs.end(), walk.back()),
           Errc::internal_invariant_broken, "omega boundary arc misses the shared vertices");
    if (walk.back() < walk.front()) std::reverse(walk.begin(), walk.end());
    return walk;
  };
  rep.p2 = boundary_walk(outer);
  rep.p4 = boundary_walk(inner);

  auto strip_x = [&](const std::vector<int>& walk) {
    std::vector<int> out;
    for (int v : walk)
      if (!is_x[v]) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<int> sources = strip_x(rep.p2), sinks = strip_x(rep.p4);
  auto side_flow = [&](bool interior, int* count, std::vector<std::pair<int, int>>* cut) {
    std::vector<std::pair<int, int>> pool;
    for (const HBridge& hb : rep.bridges) {
      if (hb.interior != interior) continue;
      for (int e : hb.edges) {
        auto [a, bb] = g.edge_ends(e);
        if (is_x[a] || is_x[bb]) continue;  // paths must avoid the shared vertices
        pool.emplace_back(a, bb);
      }
    }
    PathFamily pf = disjoint_paths(g.n(), pool, sources, sinks, PathMode::EdgeDisjoint);
    *count = pf.count;
    if (cut)
      for (int idx : pf.cut_edges) cut->push_back(pool[idx]);
  };
  side_flow(true, &rep.d1, &rep.f1_cut);
  side_flow(false, &rep.d2, nullptr);

  if (xs.size() == 2) {
    for (const HBridge& hb : rep.bridges) {
      if (hb.interior || !hb.singular) continue;
      std::vector<std::pair<int, int>> pool;
      for (int e : hb.edges) pool.push_back(g.edge_ends(e));
      PathFamily pf = disjoint_paths(g.n(), pool, {xs[0]}, {xs[1]}, PathMode::EdgeDisjoint);
      rep.d = pf.count;
      for (int idx : pf.cut_edges) rep.f_cut.push_back(pool[idx]);
      break;  // the report covers the first exterior singular bridge
    }
  }
  return rep;
}

std::optional<MinimalityWitness> nest_minimality_check(const PlaneGraph& g, const Nest& nest) {
  expect(g.n() <= oracle::vertex_cap(), Errc::too_large,
         "exhaustive replacement check beyond the oracle vertex cap");
  const int m = nest.size();
  if (m < 3) return std::nullopt;
  auto all_cycles = oracle::enumerate_cycles(g);
  std::vector<std::vector<char>> disks(m);
  for (int i = 0; i < m; ++i) disks[i] = disk_info(g, nest.cycles[i]).face_inside;
  auto subset = [](const std::vector<char>& a, const std::vector<char>& b) {
    for (size_t f = 0; f < a.size(); ++f)
      if (a[f] && !b[f]) return false;
    return true;
  };
  auto witness_at = [&](int i, bool outward) -> std::optional<MinimalityWitness> {
    std::vector<int> self = nest.cycles[i].canonical();
    for (const auto& vs : all_cycles) {
      if (vs == self) continue;
      CycleInG cand = CycleInG::from_vertices(g, vs);
      NestReport nr = verify_nest(g, {nest.cycles[i - 1], cand, nest.cycles[i + 1]});
      if (!nr.ok || nr.s != nest.s) continue;
      std::vector<char> dc = disk_info(g, cand).face_inside;
      if (outward ? subset(disks[i], dc) : subset(dc, disks[i]))
        return MinimalityWitness{i, vs, outward};
    }
    return std::nullopt;
  };
  // outer half may not admit a disk-growing swap, inner half no shrinking one
  const int mid_lo = (m - 1) / 2, mid_hi = m / 2;
  for (int i = 1; i < mid_lo; ++i)
    if (auto w = witness_at(i, true)) return w;
  for (int i = mid_hi + 1; i <= m - 2; ++i)
    if (auto w = witness_at(i, false)) return w;
  return std::nullopt;
}

Drawing stub_crossings(const PlaneGraph& g, const std::vector<std::pair<int, int>>& edges) {
  expect(g.is_simple(), Errc::bad_input, "base graph must be simple");
  const int n = g.n();
  const int S = static_cast<int>(edges.size());
  if (S == 0) return Drawing::from_plane_graph(g);
  std::vector<std::vector<int>> walks;
  walks.reserve(g.face_count());
  for (int f = 0; f < g.face_count(); ++f) {
    std::vector<int> w;
    w.reserve(g.face_len(f));
    for (int dd : g.face_darts(f)) w.push_back(g.origin(dd));
    walks.push_back(std::move(w));
  }
  // repeats stack along the edge: each stub lands on the last segment
  std::map<std::pair<int, int>, std::pair<int, int>> segment;
  for (int i = 0; i < S; ++i) {
    auto [u, v] = edges[i];
    expect(u >= 0 && u < n && v >= 0 && v < n && u != v, Errc::bad_input, "bad stub edge");
    auto key = norm_pair(u, v);
    auto it = segment.find(key);
    std::pair<int, int> seg = it == segment.end() ? key : it->second;
    const int p = n + 2 * i, q = n + 2 * i + 1, w = n + 2 * S + i;
    int fa = -1, fb = -1, ia = -1, ib = -1;
    for (size_t f = 0; f < walks.size(); ++f)
      for (size_t j = 0; j < walks[f].size(); ++j) {
        int a = walks[f][j], b = walks[f][(j + 1) % walks[f].size()];
        if (a == seg.first && b == seg.second && fa < 0) {
          fa = static_cast<int>(f);
          ia = static_cast<int>(j);
        }
        if (a == seg.second && b == seg.first && fb < 0) {
          fb = static_cast<int>(f);
          ib = static_cast<int>(j);
        }
      }
    expect(fa >= 0 && fb >= 0, Errc::bad_input, "stub edge not in the graph");
    expect(fa != fb, Errc::bad_input, "stub edge must separate two faces");
    // [.., a, b, ..] -> [.., a, w, p, w, b, ..], and q on the reverse side
    walks[fa].insert(walks[fa].begin() + ia + 1, {w, p, w});
    walks[fb].insert(walks[fb].begin() + ib + 1, {w, q, w});
    segment[key] = {w, seg.second};
  }
  PlaneGraph plan = PlaneGraph::from_faces(n + 3 * S, walks, g.outer_face());
  std::vector<int> marked(S);
  std::iota(marked.begin(), marked.end(), n + 2 * S);
  return Drawing::from_planarization(plan, marked);
}

}  // namespace nestkit
