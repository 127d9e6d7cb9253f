#pragma once

#include "sanya/search.hpp"

namespace sanya {

// Brute force reference routes.  The spherical one builds a visibility
// graph over corner points plus points sampled along parallels that
// can be hugged, so its length converges to the optimum from above as
// samples_per_cell grows.  The planar one is an exact corner graph.
struct OracleConfig {
    int samples_per_cell = 8;
    SphereConfig sphere;
};

RouteRecord oracle_spherical(const GridMap& g, const GridPoint& s, const GridPoint& t, const OracleConfig& cfg = {});
RouteRecord oracle_planar(const GridMap& g, const GridPoint& s, const GridPoint& t);

} // namespace sanya
