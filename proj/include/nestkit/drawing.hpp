#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestkit/nest.hpp"
#include "nestkit/plane_graph.hpp"

namespace nestkit {

// One crossing point of a drawing. e1 < e2 index the crossed base edges;
// pos1/pos2 say where this point sits among each edge's crossings, counted
// from the edge's lower-numbered endpoint.
struct Crossing {
  int e1 = -1;
  int e2 = -1;
  int pos1 = 0;
  int pos2 = 0;
};

// A drawing of a simple base graph in the sphere: its planarization plus a
// ledger tying the degree-4 crossing vertices back to base edges. Base
// vertices keep ids 0..base_n-1; crossing j is plan vertex base_n + j.
class Drawing {
 public:
  Drawing() = default;

  // A crossing-free drawing: the plan is the base graph itself.
  static Drawing from_plane_graph(const PlaneGraph& g);

  // Recovers the drawing whose planarization is plan with the given vertices
  // as crossing points. Each listed vertex must have degree 4 and be passed
  // by exactly two edge chains; chains continue straight, two rotation steps
  // past the entering dart. Rejects self-crossing edges and plans whose
  // recombined base graph would have loops or parallel edges.
  static Drawing from_planarization(const PlaneGraph& plan,
                                    const std::vector<int>& crossing_vertices);

  const PlaneGraph& plan() const { return plan_; }
  int base_n() const { return base_n_; }
  int base_edge_count() const { return static_cast<int>(base_edges_.size()); }
  // Base edge endpoints, lower vertex first; ids are lexicographic in these.
  std::pair<int, int> base_edge_ends(int e) const { return base_edges_[e]; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  // Crossing ids along base edge e, ordered from its lower-numbered endpoint.
  const std::vector<int>& crossings_on(int e) const { return edge_crossings_[e]; }
  int crossing_vertex(int crossing) const { return base_n_ + crossing; }
  // Base edge a plan edge is a segment of.
  int segment_origin(int plan_edge) const { return seg_origin_[plan_edge]; }

 private:
  int base_n_ = 0;
  PlaneGraph plan_;
  std::vector<std::pair<int, int>> base_edges_;
  std::vector<Crossing> crossings_;
  std::vector<std::vector<int>> edge_crossings_;
  std::vector<int> seg_origin_;
};

struct GenericReport {
  bool ok = true;
  int crossing = -1;  // first offending ledger record when !ok
  std::string message;
};

// Checks the position rules a good drawing obeys: a crossing involves two
// distinct, non-adjacent base edges. Structural rules (degree 4, two chains
// per crossing) are already forced by the Drawing factories.
GenericReport check_generic(const Drawing& d);

// A drawing flattened to a plane graph, remembering which vertices are
// crossing points (v4) and which were added to fill faces (apexes).
// edge_origin maps each plane edge to its base edge, -1 for apex edges.
struct Planarization {
  PlaneGraph plane_graph;
  std::vector<int> v4;
  std::vector<int> apexes;
  std::vector<int> edge_origin;
};

// Packages d.plan(); rejects drawings failing check_generic.
Planarization planarize(const Drawing& d);

// Exact integer bookkeeping for the degree and face-size surplus of a
// planarization. With l = |v4|, every term is determined by the graph alone;
// r only moves the hypothesis and the bound.
struct EulerReport {
  std::vector<int> deficit;       // per vertex, 6 - degree
  long long vertex_term = 0;      // sum of deficits
  long long face_term = 0;        // sum of 2 * (3 - |f|)
  long long excess = 0;           // sum of (|f| - 3)
  int nontriangular_faces = 0;
  long long bound = 0;            // l + r - 6
  bool hypothesis_ok = false;     // deficits off v4 sum to at most r
  bool bound_ok = false;          // excess <= bound
};

// Throws identity_violated unless vertex_term + face_term == 12.
EulerReport euler_accounting(const Planarization& p, long long r);

// Triangulates every face by an apex joined to each boundary occurrence, so
// a walk that repeats a vertex yields parallel apex edges. Existing vertex
// and edge ids survive unchanged; apexes take the next free ids.
Planarization fill_faces(const Planarization& p);

// Nest found inside a drawing after planarizing and filling. Cycles live in
// d.plan(), avoid crossing vertices, and use only uncrossed base edges.
struct DrawingNest {
  std::optional<Nest> nest;
  bool guaranteed = false;  // at least k cycles survived the dummy filter
  int target = 0;           // size requested from the filled graph
  int dropped = 0;          // cycles lost to crossing or apex vertices
};

// Finds a nest of size max(k, k + 2l + r - 6) in the filled planarization,
// where l counts crossings, then discards every cycle through a dummy vertex
// and keeps the outermost k survivors.
DrawingNest nest_in_drawing(const Drawing& d, int k, long long r);

// Crossings drawn strictly between nest cycles i and i+1 (0-based, cycles
// outermost first, both in d.plan()). Cycles must be crossing-free.
std::vector<int> crossings_in_annulus(const Drawing& d, const Nest& nest, int i);

// Cuts a nest with at most k crossings down to the first window of t cycles
// whose t-1 gaps are crossing-free, so every crossing lands strictly inside
// the innermost disk or outside the outermost. A nest of size
// (k+1)(t-1)+1 always has such a window; smaller inputs may throw
// nest_too_small.
Nest clean_subnest(const Drawing& d, const Nest& nest, int k, int t);

// Bridge of H = outer cycle + inner cycle: a chord of H or a component of
// G - V(H) together with its attachment edges.
struct HBridge {
  std::vector<int> vertices;     // off-H vertices, empty for a chord
  std::vector<int> edges;        // edge ids in g, attachment edges included
  std::vector<int> attachments;  // sorted vertices on H
  bool interior = false;         // drawn inside the closure of omega
  bool singular = false;         // attaches exactly to the shared vertex set
};

// Bridges of two nested cycles, classified against omega, the face of H
// bordered by edges of both cycles. p2/p4 are omega's boundary pieces on the
// outer and inner cycle; d1/d2 count edge-disjoint p2-p4 paths avoiding the
// shared vertices through interior/exterior bridges, with f1_cut a matching
// interior cut. d and f_cut do the same for paths joining the two shared
// vertices inside the first exterior singular bridge, when there is one.
struct BridgeReport {
  std::vector<HBridge> bridges;
  int omega_face = -1;        // any g-face inside omega, the smallest id
  bool omega_defaulted = false;
  std::vector<int> p2, p4;    // vertex walks, closed when the cycle has no split
  int d1 = 0;
  int d2 = 0;
  std::vector<std::pair<int, int>> f1_cut;
  int d = 0;
  std::vector<std::pair<int, int>> f_cut;
};

// x_set must equal the sorted vertex intersection of the two cycles and have
// at most two vertices. With two shared vertices H has two candidate faces
// for omega; omega_face picks one by any g-face id inside it, otherwise the
// candidate holding more interior bridges wins and omega_defaulted is set.
BridgeReport bridge_report(const PlaneGraph& g, const CycleInG& outer, const CycleInG& inner,
                           const std::vector<int>& x_set,
                           std::optional<int> omega_face = std::nullopt);

// A cycle that could replace nest cycle `index` while keeping its neighbors
// a valid nest: outward witnesses cover at least the disk of the replaced
// cycle, inward witnesses at most.
struct MinimalityWitness {
  int index = -1;
  std::vector<int> cycle;  // canonical vertex list
  bool outward = false;
};

// Exhaustively checks the replacement conditions a clean nest must satisfy:
// no outward witness in the outer half, no inward witness in the inner half
// (ends and middle exempt). Throws too_large past the oracle vertex cap.
std::optional<MinimalityWitness> nest_minimality_check(const PlaneGraph& g, const Nest& nest);

// Builds a drawing from a plane graph by pinning a pendant edge across each
// listed base edge, one extra crossing per entry; repeated entries stack
// along the edge. Each target edge must separate two distinct faces.
Drawing stub_crossings(const PlaneGraph& g, const std::vector<std::pair<int, int>>& edges);

}  // namespace nestkit
