#pragma once

#include <initializer_list>
#include <utility>

#include "sanya/grid.hpp"

// Small hand built maps shared by the unit and acceptance tests.  Each
// sits in a southern box so the parallels through obstacle edges are
// poleward-blocked, as in the worked examples.
namespace fixtures {

using sanya::GridMap;
using sanya::GridPoint;

inline GridMap with_cells(GridMap g, std::initializer_list<std::pair<int, int>> cells)
{
    for (auto [i, j] : cells) g.set_blocked(i, j, true);
    return g;
}

// flat node (r, a] on row 2 with r = (0, 2)
inline GridMap flat_example()
{
    return with_cells(GridMap(8, 3, {-60, -20, 0, 15}), {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {4, 0}, {4, 1}, {6, 2}, {7, 1}});
}

// cone node [1.5, 3] on row 2 rooted at (1, 0)
inline GridMap cone_example()
{
    return with_cells(GridMap(5, 3, {-50, -25, 0, 15}), {{0, 0}, {0, 1}, {0, 2}, {3, 0}, {3, 1}});
}

// cone [2, 4] on row 2 rooted at (2, 0); the edge x = 2 is hugged for three rows
inline GridMap adjoint_chain()
{
    return with_cells(GridMap(5, 6, {-50, -25, 0, 30}),
                      {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {1, 4}, {4, 0}, {4, 1}, {4, 2}});
}

// obstacle whose edge x = 2 lies on the parallel through both endpoints
inline GridMap edge_on_parallel(bool north)
{
    GridMap g(4, 3, north ? sanya::MapBox{20, 60, 0, 30} : sanya::MapBox{-60, -20, 0, 30});
    // the obstacle is on the poleward side of the edge in the south, equatorward in the north
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 2; ++i) g.set_blocked(i, j, true);
    return g;
}
inline constexpr GridPoint kEdgeA{2, 0}, kEdgeB{2, 3};

// a long wall below the parallel x = 2; the best route from (2, 0) to
// (3, 6) runs along the parallel and then leaves it on a tangent
inline GridMap tangent_departure()
{
    GridMap g(4, 6, {-70, -30, 0, 60});
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 2; ++i) g.set_blocked(i, j, true);
    return g;
}
inline constexpr GridPoint kTanRoot{2, 0}, kTanTarget{3, 6};

} // namespace fixtures
