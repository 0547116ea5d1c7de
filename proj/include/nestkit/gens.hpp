#pragma once

#include <cstdint>

#include "nestkit/plane_graph.hpp"

namespace nestkit::gens {

// Triangulated triangle rings around an apex; carries a planted family of
// `rings` vertex-disjoint nested triangles.
PlaneGraph concentric(int rings);
std::vector<CycleInG> concentric_rings(const PlaneGraph& g, int rings);

// Triangulated layers all sharing one hub vertex; carries `layers` nested
// triangles meeting exactly in the hub.
PlaneGraph one_nest(int layers);
std::vector<CycleInG> one_nest_cycles(const PlaneGraph& g, int layers);

// Two poles joined to an equator cycle; carries floor(equator/2) nested
// meridian 4-cycles meeting exactly in the poles.
PlaneGraph bipyramid(int equator);
std::vector<CycleInG> bipyramid_meridians(const PlaneGraph& g, int equator);

// (w+1) x (h+1) lattice with diagonals, outer region closed off by an apex.
PlaneGraph grid_triangulation(int w, int h);

// Stacked subdivisions of K4; every round splits a random subset of the
// bounded faces, at least one.
PlaneGraph apollonian(int rounds, std::uint64_t seed);

// Vertex insertions into K4 followed by random diagonal flips.
PlaneGraph random_triangulation(int n, std::uint64_t seed);

}  // namespace nestkit::gens
