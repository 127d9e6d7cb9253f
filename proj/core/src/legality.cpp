#include <set>
#include <utility>

#include "sanya/search.hpp"

namespace sanya {

std::vector<Violation> legality_check(const RouteRecord& r, const GridMap& g)
{
    std::vector<Violation> out;
    for (size_t i = 0; i + 1 < r.points.size(); ++i) {
        ArcKind k = i < r.segment_kinds.size() && r.segment_kinds[i] == SegmentKind::ParallelArc ? ArcKind::ParallelArc
                                                                                               : ArcKind::GreatCircle;
        ArcWalk w = walk_arc(g, r.points[i], r.points[i + 1], k);
        if (w.illegal && w.blocked.empty()) out.push_back({static_cast<int>(i), {-1, -1}});
        for (auto& c : w.blocked) out.push_back({static_cast<int>(i), c});
    }
    return out;
}

long count_tiles_crossed(const RouteRecord& r, const GridMap& g)
{
    std::set<std::pair<int, int>> cells;
    for (size_t i = 0; i + 1 < r.points.size(); ++i) {
        ArcKind k = i < r.segment_kinds.size() && r.segment_kinds[i] == SegmentKind::ParallelArc ? ArcKind::ParallelArc
                                                                                               : ArcKind::GreatCircle;
        for (auto& c : walk_arc(g, r.points[i], r.points[i + 1], k).crossed) cells.insert({c.i, c.j});
    }
    return static_cast<long>(cells.size());
}

} // namespace sanya
