#pragma once

#include <string>
#include <vector>

#include "nestkit/drawing.hpp"
#include "nestkit/nest.hpp"
#include "nestkit/plane_graph.hpp"

namespace nestkit {

// Graph files: {"n": int, "rotation": [[neighbors in cyclic order] per
// vertex], "outer_face": [vertex walk]}. Graphs with parallel edges carry an
// extra "edge_ids" array of the same shape as "rotation" so the pairing of
// repeated neighbor entries stays exact.
std::string emit_graph(const PlaneGraph& g);
PlaneGraph parse_graph(const std::string& text);

// Drawing files: {"graph": {"n", "edges"}, "rotation", "outer_face",
// "crossings": [{"e1": [u,v], "e2": [x,y], "pos1", "pos2"} ...]}. The
// rotation describes the planarization; crossing j is plan vertex
// graph.n + j. parse re-derives the ledger from the plan and refuses files
// whose stored edges or crossings disagree with it.
std::string emit_drawing(const Drawing& d);
Drawing parse_drawing(const std::string& text);

// Nest files: {"s": int, "X": [...], "cycles": [[vertex ...] ...],
// "guaranteed": bool}. Cycles are plain vertex walks until bound to a graph.
struct NestFile {
  int s = 0;
  std::vector<int> x_set;
  std::vector<std::vector<int>> cycles;
  bool guaranteed = false;
};

std::string emit_nest(const Nest& nest, bool guaranteed);
std::string emit_nest(const NestFile& file);
NestFile parse_nest(const std::string& text);

// Binds stored vertex walks to g. Throws if a walk is not a cycle of g.
std::vector<CycleInG> bind_cycles(const PlaneGraph& g,
                                  const std::vector<std::vector<int>>& walks);

// bind_cycles + make_nest, then checks the stored s and X against the
// verified values.
Nest realize_nest(const PlaneGraph& g, const NestFile& file);

}  // namespace nestkit
