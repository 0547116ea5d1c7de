#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nestkit/plane_graph.hpp"

namespace nestkit {

struct StandardTreeDecomposition;

// Family of cycles, outermost first: consecutive closed-disk containment,
// every pairwise vertex intersection equal to x_set, pairwise edge-disjoint.
struct Nest {
  std::vector<CycleInG> cycles;
  int s = 0;
  std::vector<int> x_set;  // sorted, |x_set| == s
  int size() const { return static_cast<int>(cycles.size()); }
};

struct NestReport {
  bool ok = true;
  std::string message;
  int s = 0;
  std::vector<int> x_set;
};

// Checks all three nest conditions; a single cycle passes with (0, {}).
NestReport verify_nest(const PlaneGraph& g, const std::vector<CycleInG>& cycles);

// Convenience: verify and wrap, throwing on violation.
Nest make_nest(const PlaneGraph& g, std::vector<CycleInG> cycles);

// Rings read off one root-to-leaf path of a decomposition, outermost first.
// Valid chains are laminar: for i < j < l the i/l intersection sits inside
// ring j.
struct RingChain {
  std::vector<CycleInG> rings;
  int length() const { return static_cast<int>(rings.size()); }
};

RingChain root_path_rings(const PlaneGraph& g, const StandardTreeDecomposition& d);

struct ConstantSubsequence {
  std::vector<int> indices;  // positions in the chain, increasing
  std::vector<int> x_set;
};

// Longest subsequence whose consecutive intersections all equal one set, by
// exact DP over the realized intersection sets. On plain vertex sets only
// consecutive pairs are tied down.
std::optional<ConstantSubsequence> constant_subsequence_raw(
    const std::vector<std::vector<int>>& vertex_sets, int m);

// Same DP on a laminar ring chain, where consecutive agreement makes every
// pairwise intersection equal x_set; that is re-checked before returning.
std::optional<ConstantSubsequence> constant_intersection_subsequence(const RingChain& chain,
                                                                     int m);

// Builds a 2-nest of size k from nested cycles whose pairwise intersections
// all equal x_set (|x_set| >= 2): splits each cycle at the x vertices, picks
// the arc slot with the most internal-vertex arcs, pairs outermost with
// innermost.
Nest two_nest_from_arcs(const PlaneGraph& g, const std::vector<CycleInG>& d_cycles,
                        const std::vector<int>& x_set, int k);

struct FoundNest {
  Nest nest;
  bool guaranteed = false;  // reached the requested size
};

// Full pipeline: refine to a decomposition or a direct 0-nest, then sweep
// every root-to-leaf ring chain and every realized intersection set for the
// largest verified nest; size ties prefer disjoint cycles, then the larger
// shared set.
FoundNest find_nest(const PlaneGraph& g, int k);

// Exact rational with denominator 1 or 2.
struct Half {
  long long num = 0;  // value = num / 2
  double value() const { return static_cast<double>(num) / 2.0; }
  bool integral() const { return num % 2 == 0; }
};

struct ParameterBudget {
  Half l;                    // 2.5k + 16
  long long t = 0;           // 4k(l+1) + 1
  long long t_prime = 0;     // t + 2l + r - 6
  long long clean_input = 0; // (k+1)(t-1) + 1
};

long long clean_nest_input(long long k, long long t);
ParameterBudget parameter_budget(long long k, long long r);

}  // namespace nestkit
