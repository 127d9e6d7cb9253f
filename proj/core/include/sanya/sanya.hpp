#pragma once

#include "sanya/search.hpp"

namespace sanya {

// Optimal spherical route between two traversable row points.  Fills in
// legality and tiles crossed on top of what the search reports.
RouteRecord search(const GridMap& g, const GridPoint& s, const GridPoint& t, const SearchConfig& cfg = {});

} // namespace sanya
