#pragma once

#include "nestkit/plane_graph.hpp"

namespace nestkit::oracle {

// Exhaustive checkers for small inputs. Everything here recomputes from
// scratch by a different route than the library proper, so agreement means
// something.

// Largest vertex count the enumerative routines accept; the
// NESTKIT_MAX_ORACLE environment variable overrides the default of 14.
int vertex_cap();

// Every simple cycle, as canonical vertex lists, sorted.
std::vector<std::vector<int>> enumerate_cycles(const PlaneGraph& g);

// Side of face f relative to c, decided by crossing parity along a dual
// spanning tree path from the outer face.
bool face_inside_by_parity(const PlaneGraph& g, const CycleInG& c, int f);

// Inside indicator for all faces at once, same parity route.
std::vector<char> inside_faces_by_parity(const PlaneGraph& g, const CycleInG& c);

struct NestWitness {
  std::vector<std::vector<int>> cycles;  // canonical, outermost first
  std::vector<int> x_set;
};

// Largest family of cycles with consecutive disk containment, all pairwise
// vertex intersections equal to one set of size s, pairwise edge-disjoint.
NestWitness max_nest(const PlaneGraph& g, int s);

// Maximum number of pairwise internally-disjoint a-b paths, by exhausting
// path subsets. vertex_mode shares no internal vertices, otherwise no edges.
int max_disjoint_paths(const PlaneGraph& g, int a, int b, bool vertex_mode);

}  // namespace nestkit::oracle
