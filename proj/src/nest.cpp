#include "nestkit/nest.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nestkit/decomp.hpp"

namespace nestkit {

namespace {

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset_sorted(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

NestReport verify_nest(const PlaneGraph& g, const std::vector<CycleInG>& cycles) {
  NestReport r;
  const int n = static_cast<int>(cycles.size());
  if (n == 0) {
    r.ok = false;
    r.message = "empty cycle family";
    return r;
  }
  if (n == 1) return r;  // one cycle nests trivially, nothing is shared

  std::vector<std::vector<int>> vs(n);
  for (int i = 0; i < n; ++i) vs[i] = cycles[i].sorted_vertices();
  std::vector<int> x = intersect_sorted(vs[0], vs[1]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (intersect_sorted(vs[i], vs[j]) != x) {
        r.ok = false;
        r.message = "cycles " + std::to_string(i) + " and " + std::to_string(j) +
                    " meet off the common set";
        return r;
      }

  std::vector<int> owner(g.edge_count(), -1);
  for (int i = 0; i < n; ++i)
    for (int e : cycles[i].edges()) {
      if (owner[e] >= 0) {
        auto [u, v] = g.edge_ends(e);
        r.ok = false;
        r.message = "cycles " + std::to_string(owner[e]) + " and " + std::to_string(i) +
                    " share the edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
        return r;
      }
      owner[e] = i;
    }

  for (int i = 0; i + 1 < n; ++i)
    if (!is_nested(g, cycles[i], cycles[i + 1])) {
      r.ok = false;
      r.message = "cycle " + std::to_string(i + 1) + " leaves the closed disk of cycle " +
                  std::to_string(i);
      return r;
    }

  r.s = static_cast<int>(x.size());
  r.x_set = std::move(x);
  return r;
}

Nest make_nest(const PlaneGraph& g, std::vector<CycleInG> cycles) {
  auto rep = verify_nest(g, cycles);
  expect(rep.ok, Errc::internal_invariant_broken, "nest construction failed: " + rep.message);
  return Nest{std::move(cycles), rep.s, std::move(rep.x_set)};
}

namespace {

std::vector<CycleInG> chain_to_leaf(const StandardTreeDecomposition& d, int leaf) {
  std::vector<CycleInG> rings;
  for (int t = leaf; t != 0; t = d.nodes[t].parent) rings.push_back(*d.nodes[t].ring);
  std::reverse(rings.begin(), rings.end());
  return rings;
}

// a root path chain is laminar: vertices shared by an outer and an inner
// ring stay on every ring between them
void check_chain(const PlaneGraph& g, const std::vector<CycleInG>& rings) {
  const int L = static_cast<int>(rings.size());
  std::vector<std::vector<int>> vs(L);
  std::vector<std::vector<int>> canon(L);
  std::vector<std::vector<int>> es(L);
  for (int i = 0; i < L; ++i) {
    vs[i] = rings[i].sorted_vertices();
    canon[i] = rings[i].canonical();
    es[i] = rings[i].edges();
    std::sort(es[i].begin(), es[i].end());
  }
  for (int i = 0; i + 1 < L; ++i)
    expect(is_nested(g, rings[i], rings[i + 1]), Errc::internal_invariant_broken,
           "chain rings are not nested in order");
  // repeat means same vertices and same edges; the vertex cycle alone can
  // recur legitimately through the other copy of a parallel edge
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j)
      expect(canon[i] != canon[j] || es[i] != es[j], Errc::internal_invariant_broken,
             "chain repeats a ring");
  for (int i = 0; i < L; ++i)
    for (int l = i + 2; l < L; ++l) {
      const auto shared = intersect_sorted(vs[i], vs[l]);
      if (shared.empty()) continue;
      for (int j = i + 1; j < l; ++j)
        expect(subset_sorted(shared, vs[j]), Errc::internal_invariant_broken,
               "chain is not laminar");
    }
}

}  // namespace

RingChain root_path_rings(const PlaneGraph& g, const StandardTreeDecomposition& d) {
  expect(!d.nodes.empty(), Errc::bad_input, "decomposition has no nodes");
  std::vector<int> depth(d.nodes.size(), 0);
  std::deque<int> dq{0};
  int deepest = 0;
  while (!dq.empty()) {
    const int t = dq.front();
    dq.pop_front();
    for (int c : d.nodes[t].children) {
      depth[c] = depth[t] + 1;
      if (depth[c] > depth[deepest] || (depth[c] == depth[deepest] && c < deepest)) deepest = c;
      dq.push_back(c);
    }
  }
  if (deepest == 0) return {};
  auto rings = chain_to_leaf(d, deepest);
  check_chain(g, rings);
  return RingChain{std::move(rings)};
}

namespace {

struct DpResult {
  int length = 0;
  std::vector<int> indices;
};

// longest subsequence whose consecutive intersections all equal x, earliest
// indices on ties
DpResult dp_for_shared_set(const std::vector<std::vector<int>>& sets,
                           const std::vector<std::vector<std::vector<int>>>& pairwise,
                           const std::vector<int>& x) {
  const int h = static_cast<int>(sets.size());
  std::vector<int> len(h, 0), prev(h, -1);
  std::vector<char> holds(h, 0);
  for (int i = 0; i < h; ++i) holds[i] = subset_sorted(x, sets[i]) ? 1 : 0;
  DpResult best;
  int best_end = -1;
  for (int i = 0; i < h; ++i) {
    if (!holds[i]) continue;
    len[i] = 1;
    for (int j = 0; j < i; ++j) {
      if (!holds[j] || len[j] == 0) continue;
      if (pairwise[j][i] == x && len[j] + 1 > len[i]) {
        len[i] = len[j] + 1;
        prev[i] = j;
      }
    }
    if (len[i] > best.length) {
      best.length = len[i];
      best_end = i;
    }
  }
  for (int i = best_end; i >= 0; i = prev[i]) best.indices.push_back(i);
  std::reverse(best.indices.begin(), best.indices.end());
  return best;
}

std::vector<std::vector<int>> shared_set_candidates(
    const std::vector<std::vector<std::vector<int>>>& pairwise, int h) {
  std::set<std::vector<int>> cand;
  cand.insert({});
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) cand.insert(pairwise[i][j]);
  std::vector<std::vector<int>> xs(cand.begin(), cand.end());
  std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return xs;
}

std::vector<std::vector<std::vector<int>>> pairwise_intersections(
    const std::vector<std::vector<int>>& sets) {
  const int h = static_cast<int>(sets.size());
  std::vector<std::vector<std::vector<int>>> pin(h, std::vector<std::vector<int>>(h));
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j) pin[i][j] = intersect_sorted(sets[i], sets[j]);
  return pin;
}

}  // namespace

std::optional<ConstantSubsequence> constant_subsequence_raw(
    const std::vector<std::vector<int>>& vertex_sets, int m) {
  expect(m >= 1, Errc::bad_input, "subsequence target must be positive");
  for (const auto& s : vertex_sets)
    expect(std::is_sorted(s.begin(), s.end()), Errc::bad_input, "vertex sets must be sorted");
  const int h = static_cast<int>(vertex_sets.size());
  if (h == 0) return std::nullopt;
  const auto pin = pairwise_intersections(vertex_sets);
  ConstantSubsequence best;
  int best_len = 0;
  for (const auto& x : shared_set_candidates(pin, h)) {
    auto dp = dp_for_shared_set(vertex_sets, pin, x);
    if (dp.length > best_len) {
      best_len = dp.length;
      best = ConstantSubsequence{std::move(dp.indices), x};
    }
  }
  if (best_len < m) return std::nullopt;
  return best;
}

std::optional<ConstantSubsequence> constant_intersection_subsequence(const RingChain& chain,
                                                                     int m) {
  std::vector<std::vector<int>> sets;
  sets.reserve(chain.rings.size());
  for (const auto& r : chain.rings) sets.push_back(r.sorted_vertices());
  auto res = constant_subsequence_raw(sets, m);
  if (!res) return res;
  // consecutive agreement spreads to all pairs on a laminar chain
  for (size_t a = 0; a < res->indices.size(); ++a)
    for (size_t b = a + 1; b < res->indices.size(); ++b)
      expect(intersect_sorted(sets[res->indices[a]], sets[res->indices[b]]) == res->x_set,
             Errc::internal_invariant_broken, "chain subsequence lost the shared set");
  return res;
}

namespace {

// arcs[j][s] runs from x_order[s] to x_order[s+1] along cycle j, endpoints
// included
struct ArcSplit {
  std::vector<int> x_order;
  std::vector<std::vector<std::vector<int>>> arcs;
};

std::vector<int> rotate_to_front(std::vector<int> seq, int v) {
  const auto it = std::find(seq.begin(), seq.end(), v);
  std::rotate(seq.begin(), it, seq.end());
  return seq;
}

ArcSplit split_at_shared_set(const std::vector<CycleInG>& cycles, const std::vector<int>& x_set) {
  const int t = static_cast<int>(x_set.size());
  auto on_x = [&](int v) { return std::binary_search(x_set.begin(), x_set.end(), v); };

  // canonical cyclic order from the first cycle: smallest member first, then
  // the lexicographically smaller direction
  std::vector<int> order;
  for (int v : cycles[0].vertices())
    if (on_x(v)) order.push_back(v);
  expect(static_cast<int>(order.size()) == t, Errc::bad_input,
         "shared set must lie on every cycle");
  order = rotate_to_front(order, *std::min_element(order.begin(), order.end()));
  if (t >= 3) {
    std::vector<int> rev(order.begin() + 1, order.end());
    std::reverse(rev.begin(), rev.end());
    rev.insert(rev.begin(), order[0]);
    if (rev < order) order = rev;
  }
  std::map<int, int> slot_of_start;
  for (int s = 0; s < t; ++s) slot_of_start[order[s]] = s;

  ArcSplit out;
  out.x_order = order;
  for (const auto& cyc : cycles) {
    const auto& vl = cyc.vertices();
    const int L = cyc.length();
    std::vector<int> hits;
    for (int i = 0; i < L; ++i)
      if (on_x(vl[i])) hits.push_back(i);
    expect(static_cast<int>(hits.size()) == t, Errc::bad_input,
           "shared set must lie on every cycle");

    // cyclic order must match the canonical one, up to rotation and
    // reflection
    std::vector<int> seq;
    for (int i : hits) seq.push_back(vl[i]);
    auto fwd = rotate_to_front(seq, order[0]);
    auto bwd = seq;
    std::reverse(bwd.begin(), bwd.end());
    bwd = rotate_to_front(bwd, order[0]);
    expect(fwd == order || bwd == order, Errc::bad_input,
           "cycles disagree on the cyclic order of the shared set");

    std::vector<std::vector<int>> arcs(t);
    for (int r = 0; r < t; ++r) {
      const int from = hits[r];
      const int to = hits[(r + 1) % static_cast<int>(hits.size())];
      std::vector<int> run;
      for (int i = from;; i = (i + 1) % L) {
        run.push_back(vl[i]);
        if (i == to) break;
      }
      int slot;
      if (t == 2) {
        // both runs join the same endpoints; number them by this cycle's own
        // orientation starting from the canonical first member
        slot = run.front() == order[0] ? 0 : 1;
      } else {
        const auto it = slot_of_start.find(run.front());
        if (it != slot_of_start.end() && order[(it->second + 1) % t] == run.back()) {
          slot = it->second;
        } else {
          // the run traverses a slot against the canonical direction
          const int s = slot_of_start.at(run.back());
          expect(order[(s + 1) % t] == run.front(), Errc::bad_input,
                 "cycle arc does not join consecutive members of the shared set");
          std::reverse(run.begin(), run.end());
          slot = s;
        }
      }
      expect(arcs[slot].empty(), Errc::bad_input, "cycle visits a slot twice");
      arcs[slot] = std::move(run);
    }
    out.arcs.push_back(std::move(arcs));
  }
  return out;
}

// best pairing across the slot richest in interior vertices; null when no
// pairing of at least min_k cycles exists or the result fails verification
std::optional<Nest> two_nest_best(const PlaneGraph& g, const std::vector<CycleInG>& cycles,
                                  const std::vector<int>& x_set, int min_k) {
  const ArcSplit as = split_at_shared_set(cycles, x_set);
  const int t = static_cast<int>(x_set.size());
  const int n = static_cast<int>(cycles.size());
  int best_slot = 0, best_count = -1;
  for (int s = 0; s < t; ++s) {
    int cnt = 0;
    for (int j = 0; j < n; ++j)
      if (as.arcs[j][s].size() > 2) ++cnt;
    if (cnt > best_count) {
      best_count = cnt;
      best_slot = s;
    }
  }
  const int pairs = best_count / 2;
  if (pairs < std::max(min_k, 1)) return std::nullopt;
  std::vector<int> sel;
  for (int j = 0; j < n && static_cast<int>(sel.size()) < 2 * pairs; ++j)
    if (as.arcs[j][best_slot].size() > 2) sel.push_back(j);

  std::vector<CycleInG> out;
  try {
    for (int a = 0; a < pairs; ++a) {
      const auto& outer = as.arcs[sel[a]][best_slot];
      const auto& inner = as.arcs[sel[2 * pairs - 1 - a]][best_slot];
      std::vector<int> verts(outer.begin(), outer.end());
      verts.insert(verts.end(), inner.rbegin() + 1, inner.rend() - 1);
      out.push_back(CycleInG::from_vertices(g, verts));
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  auto rep = verify_nest(g, out);
  if (!rep.ok) return std::nullopt;
  if (out.size() >= 2) {
    const std::vector<int> want = [&] {
      std::vector<int> w{as.x_order[best_slot], as.x_order[(best_slot + 1) % t]};
      std::sort(w.begin(), w.end());
      return w;
    }();
    if (rep.s != 2 || rep.x_set != want) return std::nullopt;
  }
  return Nest{std::move(out), rep.s, std::move(rep.x_set)};
}

}  // namespace

Nest two_nest_from_arcs(const PlaneGraph& g, const std::vector<CycleInG>& d_cycles,
                        const std::vector<int>& x_set, int k) {
  expect(k >= 1, Errc::bad_input, "nest size target must be positive");
  expect(static_cast<int>(x_set.size()) >= 2, Errc::bad_input,
         "shared set needs at least two vertices");
  expect(std::is_sorted(x_set.begin(), x_set.end()) &&
             std::adjacent_find(x_set.begin(), x_set.end()) == x_set.end(),
         Errc::bad_input, "shared set must be sorted and unique");
  expect(!d_cycles.empty(), Errc::bad_input, "cycle family is empty");
  std::vector<std::vector<int>> vs;
  for (const auto& c : d_cycles) vs.push_back(c.sorted_vertices());
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      expect(intersect_sorted(vs[i], vs[j]) == x_set, Errc::bad_input,
             "cycles must meet exactly in the shared set");
  for (size_t i = 0; i + 1 < vs.size(); ++i)
    expect(is_nested(g, d_cycles[i], d_cycles[i + 1]), Errc::bad_input,
           "cycles must be nested outermost first");

  auto nest = two_nest_best(g, d_cycles, x_set, k);
  expect(nest.has_value(), Errc::insufficient_interior_arcs,
         "fewer than 2k arcs carry interior vertices at every slot");
  if (nest->size() > k) {
    nest->cycles.erase(nest->cycles.begin() + k, nest->cycles.end());
    *nest = make_nest(g, std::move(nest->cycles));
  }
  return std::move(*nest);
}

FoundNest find_nest(const PlaneGraph& g, int k) {
  expect(k >= 1, Errc::bad_input, "nest size target must be positive");
  DecompOutcome out = refine(g, k);
  if (out.zero_nest) return {std::move(*out.zero_nest), true};
  const StandardTreeDecomposition& d = *out.decomposition;

  std::optional<Nest> best;
  // size ties: disjoint beats shared, then a larger shared set wins
  auto rank = [](int s) { return s == 0 ? 3 : s; };
  auto consider = [&](std::optional<Nest> cand) {
    if (!cand) return;
    if (!best || cand->size() > best->size() ||
        (cand->size() == best->size() && rank(cand->s) > rank(best->s)))
      best = std::move(cand);
  };

  for (int leaf : d.leaves()) {
    const auto rings = chain_to_leaf(d, leaf);
    if (rings.empty()) continue;
    check_chain(g, rings);
    std::vector<std::vector<int>> sets;
    sets.reserve(rings.size());
    for (const auto& r : rings) sets.push_back(r.sorted_vertices());
    const auto pin = pairwise_intersections(sets);
    for (const auto& x : shared_set_candidates(pin, static_cast<int>(sets.size()))) {
      const auto dp = dp_for_shared_set(sets, pin, x);
      if (dp.length == 0) continue;
      std::vector<CycleInG> sub;
      sub.reserve(dp.indices.size());
      for (int i : dp.indices) sub.push_back(rings[i]);
      if (x.size() <= 1) {
        auto rep = verify_nest(g, sub);
        if (rep.ok) consider(Nest{std::move(sub), rep.s, std::move(rep.x_set)});
      } else {
        try {
          consider(two_nest_best(g, sub, x, 1));
        } catch (const Error&) {
          // a slot mismatch on this candidate only rules out this candidate
        }
      }
    }
  }
  expect(best.has_value(), Errc::internal_invariant_broken, "no candidate nest at all");
  const bool guaranteed = best->size() >= k;
  return {std::move(*best), guaranteed};
}

long long clean_nest_input(long long k, long long t) {
  expect(k >= 1 && t >= 1, Errc::bad_input, "budget needs positive arguments");
  return (k + 1) * (t - 1) + 1;
}

ParameterBudget parameter_budget(long long k, long long r) {
  expect(k >= 1 && r >= 0, Errc::bad_input, "budget needs k >= 1 and r >= 0");
  ParameterBudget b;
  b.l.num = 5 * k + 32;                 // 2.5k + 16, kept as doubled numerator
  b.t = 2 * k * (b.l.num + 2) + 1;      // 4k(l + 1) + 1 is always integral
  b.t_prime = b.t + b.l.num + r - 6;    // t + 2l + r - 6
  b.clean_input = clean_nest_input(k, b.t);
  return b;
}

}  // namespace nestkit
