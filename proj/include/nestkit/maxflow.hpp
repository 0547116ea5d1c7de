#pragma once

#include <utility>
#include <vector>

#include "nestkit/plane_graph.hpp"

namespace nestkit {

enum class PathMode {
  VertexDisjoint,      // no shared vertices at all, each terminal serves one path
  InternallyDisjoint,  // terminals shared freely, no other shared vertex; requires
                       // that no edge joins a source directly to a sink
  EdgeDisjoint,        // no shared edges
};

// Maximum family of pairwise disjoint paths between two vertex sets, plus a
// minimum cut of the same size as proof of maximality.
struct PathFamily {
  std::vector<std::vector<int>> paths;  // vertex walks, source to sink
  int count = 0;
  std::vector<int> cut_vertices;  // vertex modes: removing them separates A from B
  std::vector<int> cut_edges;     // EdgeDisjoint: edge-list indices doing the same
};

PathFamily disjoint_paths(int n, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<int>& sources, const std::vector<int>& sinks,
                          PathMode mode);

PathFamily disjoint_paths(const PlaneGraph& g, const std::vector<int>& sources,
                          const std::vector<int>& sinks, PathMode mode);

}  // namespace nestkit
