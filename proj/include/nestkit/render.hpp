#pragma once

#include <string>
#include <vector>

#include "nestkit/nest.hpp"
#include "nestkit/plane_graph.hpp"

namespace nestkit {

// Straight-line SVG of a plane graph: barycentric layout with the outer face
// pinned to a convex polygon, highlighted cycles stroked in distinct colors.
// Bytes are deterministic for a fixed input. A layout that collapses two
// vertices falls back to placing everything on one circle.
std::string render_svg(const PlaneGraph& g,
                       const std::vector<std::vector<int>>& highlight = {});

std::string render_svg(const PlaneGraph& g, const Nest& nest);
std::string render_svg(const PlaneGraph& g, const std::vector<CycleInG>& rings);

}  // namespace nestkit
