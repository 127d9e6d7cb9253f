#include "sanya/anya_core.hpp"

#include <cmath>

namespace sanya {

RouteRecord euclid_search(const GridMap& g, const GridPoint& s, const GridPoint& t, const SearchConfig& cfg)
{
    PlanarSearch S(g, cfg);
    RouteRecord r = S.run(s, t);
    r.legal = true;
    for (size_t i = 0; i + 1 < r.points.size(); ++i)
        if (walk_arc(g, r.points[i], r.points[i + 1], ArcKind::Straight, 1e-9, true).illegal) r.legal = false;
    return r;
}

namespace {

void finish_spherical(RouteRecord& r, const GridMap& g, const SphereConfig& cfg)
{
    r.planar = false;
    r.segment_kinds.assign(r.points.empty() ? 0 : r.points.size() - 1, SegmentKind::GreatCircle);
    r.turning_points.clear();
    for (auto& p : r.points) r.turning_points.push_back(vertex_to_sphere(g, p));
    r.length = 0;
    for (size_t i = 0; i + 1 < r.turning_points.size(); ++i)
        r.length += gc_distance(r.turning_points[i], r.turning_points[i + 1], cfg);
    r.legal = legality_check(r, g).empty();
    r.tiles_crossed = count_tiles_crossed(r, g);
}

} // namespace

RouteRecord recipe1(const RouteRecord& route, const GridMap& g, const SphereConfig& cfg)
{
    RouteRecord r = route;
    finish_spherical(r, g, cfg);
    return r;
}

RouteRecord recipe2(const RouteRecord& route, const GridMap& g, double step_arcsec, const SphereConfig& cfg)
{
    RouteRecord r = route;
    if (route.points.size() < 2) {
        finish_spherical(r, g, cfg);
        return r;
    }
    const double dlat = g.dlat() * 180 / kPi, dlon = g.dlon() * 180 / kPi;
    r.points = {route.points.front()};
    for (size_t i = 0; i + 1 < route.points.size(); ++i) {
        const GridPoint &a = route.points[i], &b = route.points[i + 1];
        if (walk_arc(g, a, b, ArcKind::GreatCircle, 1e-9, true).illegal) {
            double deg = std::hypot((b.x - a.x) * dlat, (b.y - a.y) * dlon);
            long m = std::max(1L, static_cast<long>(std::ceil(deg * 3600 / step_arcsec)));
            for (long j = 1; j < m; ++j) {
                double f = static_cast<double>(j) / m;
                r.points.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)});
            }
        }
        r.points.push_back(b);
    }
    finish_spherical(r, g, cfg);
    return r;
}

} // namespace sanya
