#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nestkit/nest.hpp"
#include "nestkit/plane_graph.hpp"

namespace nestkit {

struct DecompNode {
  int parent = -1;  // -1 only at the root
  std::vector<int> children;
  std::vector<int> bag;            // sorted vertex ids
  std::optional<CycleInG> ring;    // ring on the edge toward the parent
};

// Rooted tree decomposition whose parent edges carry nested rings: bags
// intersect exactly on the ring between them, and rings along any root path
// are distinct and sit in each other's closed disks.
struct StandardTreeDecomposition {
  std::vector<DecompNode> nodes;  // node 0 is the root

  int width() const;
  bool is_leaf(int t) const { return nodes[t].children.empty() && t != 0; }
  std::vector<int> leaves() const;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

// Checks tree shape, coverage, subtree connectivity per vertex, the
// bag-intersection-equals-ring condition, and ring nesting along root paths.
// Nesting is checked on consecutive tree edges; disk containment is
// transitive and equal disks force equal rings, so that covers all pairs.
// exhaustive_nesting re-checks every ancestor pair directly.
ValidationReport validate_decomposition(const PlaneGraph& g, const StandardTreeDecomposition& d,
                                        bool exhaustive_nesting = false);

// Two nodes: root bag is the outer triangle, leaf bag is everything, the
// ring between them is the outer triangle.
StandardTreeDecomposition initial_decomposition(const PlaneGraph& g);

struct DecompOutcome {
  std::optional<Nest> zero_nest;                       // 0-nest of size k
  std::optional<StandardTreeDecomposition> decomposition;  // width <= 12k - 1
};

// Refines the initial decomposition leaf by leaf: shortcut splits while the
// ring is non-geodesic in its disk, ring extensions while shorter than 8k,
// and the mesh endgame once an oversized leaf is stuck at a geodesic ring of
// length exactly 8k. Every leaf is refined until no step applies, so leaf
// chains are as deep as the graph allows.
DecompOutcome refine(const PlaneGraph& g, int k);

// Nested pairwise vertex-disjoint cycles around the radially deepest face,
// outermost first: level sets of the face-vertex distance from the outer
// face, one separating cycle per level.
std::vector<CycleInG> nested_cycles_radial(const PlaneGraph& g);

// Mesh endgame on a disk graph h with boundary ring c of length 8k: p and q
// are families of 2k vertex-disjoint paths joining opposite boundary arcs.
// Tries the direct mesh walk, then the radial peel, then an exhaustive
// search when h is small enough; Errc::mesh_degenerate when everything fails.
Nest zero_nest_from_mesh(const PlaneGraph& h, const CycleInG& c,
                         const std::vector<std::vector<int>>& p_paths,
                         const std::vector<std::vector<int>>& q_paths, int k);

// Builds the two arc families inside the leaf disk and runs the endgame.
Nest zero_nest_endgame(const PlaneGraph& h, const CycleInG& c, int k);

}  // namespace nestkit
