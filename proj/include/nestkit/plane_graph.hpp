#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nestkit/core.hpp"

namespace nestkit {

// Combinatorial embedding of a connected graph in the sphere, with one face
// designated as outer. Darts are numbered 0..2m-1; twin(d) == d^1, so the two
// darts of edge e are 2e and 2e+1.
class PlaneGraph {
 public:
  // Empty shell; only meaningful once assigned from a factory.
  PlaneGraph() = default;

  // Builds the embedding from the full list of face boundary walks, each a
  // counterclockwise vertex sequence. Every directed edge must appear in
  // exactly one walk. outer_index picks the outer face. If face_darts_out is
  // given, it receives the dart lists of the input walks in input order.
  static PlaneGraph from_faces(int n, const std::vector<std::vector<int>>& walks,
                               int outer_index,
                               std::vector<std::vector<int>>* face_darts_out = nullptr);

  // Builds the embedding from counterclockwise neighbor lists. Parallel edges
  // pair up by occurrence index: the i-th copy of v in u's list matches the
  // i-th copy of u in v's list. outer_cycle must trace an actual face, in
  // either orientation.
  static PlaneGraph from_rotation(int n, const std::vector<std::vector<int>>& neighbors,
                                  const std::vector<int>& outer_cycle,
                                  std::vector<std::vector<int>>* edge_ids_out = nullptr);

  // Lowest-level builder: origin[d] names the tail of dart d, twin(d) = d^1,
  // rot_next[d] the counterclockwise successor at that tail. outer_dart picks
  // the outer face. The only factory that accepts parallel edges unambiguously.
  static PlaneGraph from_darts(int n, std::vector<int> origin, std::vector<int> rot_next,
                               int outer_dart);

  int n() const { return n_; }
  int dart_count() const { return static_cast<int>(origin_.size()); }
  int edge_count() const { return dart_count() / 2; }
  int face_count() const { return static_cast<int>(faces_.size()); }

  int origin(int d) const { return origin_[d]; }
  int head(int d) const { return origin_[d ^ 1]; }
  static int twin(int d) { return d ^ 1; }
  int rot_next(int d) const { return rot_next_[d]; }
  int rot_prev(int d) const { return rot_prev_[d]; }
  // Next dart along the face containing d, walking with the face on the left.
  int face_next(int d) const { return rot_next_[d ^ 1]; }

  int face_of(int d) const { return face_of_[d]; }
  const std::vector<int>& face_darts(int f) const { return faces_[f]; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int outer_face() const { return outer_; }
  int face_len(int f) const { return static_cast<int>(faces_[f].size()); }

  // All loops and parallel edges absent.
  bool is_simple() const { return simple_; }

  // Darts leaving v in rotation order.
  const std::vector<int>& out_darts(int v) const { return out_darts_[v]; }
  int degree(int v) const { return static_cast<int>(out_darts_[v].size()); }
  std::vector<int> neighbors(int v) const;

  static int edge_of(int d) { return d >> 1; }
  std::pair<int, int> edge_ends(int e) const { return {origin_[2 * e], origin_[2 * e + 1]}; }

  // Some dart u->v, or nullopt.
  std::optional<int> dart_between(int u, int v) const;

  // Copy with a different outer face.
  PlaneGraph with_outer_face(int f) const;

  // Face whose boundary visits exactly the given vertex set, if any.
  std::optional<int> find_face_with_vertices(const std::vector<int>& verts) const;

 private:
  void finalize();  // derives faces from rotation, validates

  int n_ = 0;
  std::vector<int> origin_;
  std::vector<int> rot_next_;
  std::vector<int> rot_prev_;
  std::vector<std::vector<int>> out_darts_;
  std::vector<int> face_of_;
  std::vector<std::vector<int>> faces_;
  int outer_ = -1;
  bool simple_ = false;
};

// A simple cycle in a PlaneGraph, stored as a dart walk. Vertex i of the
// cycle is origin(darts[i]).
class CycleInG {
 public:
  CycleInG(const PlaneGraph& g, std::vector<int> darts);

  static CycleInG from_vertices(const PlaneGraph& g, const std::vector<int>& verts);

  const std::vector<int>& darts() const { return darts_; }
  const std::vector<int>& vertices() const { return verts_; }
  int length() const { return static_cast<int>(darts_.size()); }
  bool contains_vertex(int v) const;
  bool contains_edge(int e) const;
  std::vector<int> edges() const;
  const std::vector<int>& sorted_vertices() const { return sorted_verts_; }

  // Position of v along the cycle, or -1.
  int index_of(int v) const;

  // Lexicographically smallest rotation of the smaller of the two
  // orientations. Equal canonical forms identify equal cycles.
  std::vector<int> canonical() const;

 private:
  std::vector<int> darts_;
  std::vector<int> verts_;
  std::vector<int> sorted_verts_;
};

bool is_triangulation(const PlaneGraph& g);

enum class Side { Inside, OnCycle, Outside };

// Face/vertex classification relative to the closed disk bounded by c that
// does not contain the outer face.
struct DiskInfo {
  std::vector<char> face_inside;   // size face_count
  std::vector<Side> vertex_side;   // size n
  int inside_face_count = 0;
};

DiskInfo disk_info(const PlaneGraph& g, const CycleInG& c);

// Vertices of the closed disk, sorted.
std::vector<int> disk_vertices(const PlaneGraph& g, const CycleInG& c);

// True when the closed disk of inner lies within the closed disk of outer.
bool is_nested(const PlaneGraph& g, const CycleInG& outer, const CycleInG& inner);

struct CycleMetric {
  int arc_dist;    // hops along the cycle between u and v, shorter way
  int graph_dist;  // BFS distance in the whole graph
};

CycleMetric cycle_metric(const PlaneGraph& g, const CycleInG& c, int u, int v);

// True when every pair of cycle vertices is joined at least as fast along the
// cycle as through the ambient graph.
bool is_geodesic_cycle(const PlaneGraph& g, const CycleInG& c);

// The closed disk of c cut out as its own plane graph. Vertex/dart maps tie
// the copy back to the parent; boundary is c viewed inside the copy.
struct DiskSubgraph {
  PlaneGraph graph;
  std::vector<int> to_parent;          // disk vertex -> parent vertex
  std::vector<int> from_parent;        // parent vertex -> disk vertex or -1
  std::vector<int> dart_to_parent;     // disk dart -> parent dart
  std::vector<int> dart_from_parent;   // parent dart -> disk dart or -1
  std::vector<int> boundary_darts;     // image of c's darts
};

DiskSubgraph disk_subgraph(const PlaneGraph& g, const CycleInG& c);

}  // namespace nestkit
