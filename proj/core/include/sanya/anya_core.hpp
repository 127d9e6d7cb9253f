#pragma once

#include "sanya/search.hpp"

namespace sanya {

// Optimal any-angle route on the flat grid; length in grid units.
RouteRecord euclid_search(const GridMap& g, const GridPoint& s, const GridPoint& t, const SearchConfig& cfg = {});

// Join the turning points of a flat route by great circles.
RouteRecord recipe1(const RouteRecord& route, const GridMap& g, const SphereConfig& cfg = {});

// As recipe1, but pairs whose great circle is illegal are replaced by
// points every step_arcsec along their straight grid line.
RouteRecord recipe2(const RouteRecord& route, const GridMap& g, double step_arcsec = 1, const SphereConfig& cfg = {});

} // namespace sanya
