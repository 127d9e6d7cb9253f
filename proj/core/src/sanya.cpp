#include "sanya/sanya.hpp"

namespace sanya {

RouteRecord search(const GridMap& g, const GridPoint& s, const GridPoint& t, const SearchConfig& cfg)
{
    SphericalSearch S(g, cfg);
    RouteRecord r = S.run(s, t);
    r.legal = legality_check(r, g).empty();
    r.tiles_crossed = count_tiles_crossed(r, g);
    return r;
}

} // namespace sanya
