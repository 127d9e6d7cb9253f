#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sanya/geom.hpp"

namespace sanya {

// Grid coordinates: x along latitude (0..W), y along longitude (0..H).
// Rows are the lines y = const; a route point always sits on a row.
struct GridPoint {
    double x = 0;
    double y = 0;
    bool operator==(const GridPoint&) const = default;
};

struct Interval {
    int row = 0;
    double lo = 0, hi = 0;
    bool lo_closed = true, hi_closed = true;

    bool contains(double x, double eps = 1e-9) const
    {
        if (x < lo - eps || x > hi + eps) return false;
        if (!lo_closed && x <= lo + eps && hi > lo + eps) return false;
        if (!hi_closed && x >= hi - eps && hi > lo + eps) return false;
        return true;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line_(line), col_(col) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return col_; }
private:
    int line_, col_;
};

class DimensionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Degrees.  Default is the full globe.
struct MapBox {
    double lat_min = -90, lat_max = 90;
    double lon_min = -180, lon_max = 180;
};

enum class VertexKind { NotCorner, ConvexCorner, DoubleCorner };

class GridMap {
public:
    GridMap() = default;
    GridMap(int width, int height, MapBox box = {});

    int width() const { return w_; }
    int height() const { return h_; }
    const MapBox& box() const { return box_; }

    // cells outside the map are blocked
    bool blocked(int i, int j) const
    {
        if (i < 0 || j < 0 || i >= w_ || j >= h_) return true;
        return cells_[static_cast<size_t>(j) * w_ + i] != 0;
    }
    void set_blocked(int i, int j, bool b);
    double lat_of_x(double x) const;   // radians
    double lon_of_y(double y) const;   // radians
    double x_of_lat(double lat) const;
    double y_of_lon(double lon) const;
    double dlat() const { return dlat_; }   // radians per cell
    double dlon() const { return dlon_; }

    int blocked_count() const;

private:
    int w_ = 0, h_ = 0;
    MapBox box_;
    double lat0_ = 0, lon0_ = 0, dlat_ = 0, dlon_ = 0;
    std::vector<std::uint8_t> cells_;
};

GridMap load_movingai(std::string_view text);

enum class RasterFormat { EsriAscii, RawI16 };
struct RasterOptions {
    RasterFormat format = RasterFormat::EsriAscii;
    int ncols = 0, nrows = 0;   // raw only
    MapBox box;                 // raw only; ESRI takes it from the header
    std::function<bool(double)> traversable_if;   // default: sample < 0
};
GridMap load_raster(std::string_view bytes, const RasterOptions& opt = {});

// (lat, lon) in degrees of the plain linear mapping, before the pole margin
std::array<double, 2> eq5_degrees(double x, double row, int m, int n);

SpherePoint vertex_to_sphere(const GridMap& g, const GridPoint& v);
GridPoint sphere_to_grid(const GridMap& g, const SpherePoint& p);

VertexKind classify_vertex(const GridMap& g, int k, int row);

// can a route point sit here (on a row)?
bool point_traversable(const GridMap& g, const GridPoint& p);

// unit segment of row `row` between x=i and x=i+1
inline bool row_segment_passable(const GridMap& g, int i, int row)
{
    return !(g.blocked(i, row - 1) && g.blocked(i, row));
}
// unit segment of parallel x=k between rows j and j+1
inline bool parallel_segment_passable(const GridMap& g, int k, int j)
{
    return !(g.blocked(k - 1, j) && g.blocked(k, j));
}

enum class ScanMode { ToNextCorner, ToObstacle };
double scan_row(const GridMap& g, int row, double from_x, int dir, ScanMode mode);

bool gc_visible(const GridMap& g, const GridPoint& p, const GridPoint& q);
bool line_visible(const GridMap& g, const GridPoint& p, const GridPoint& q);

// Cell walk of one arc.  Reports every blocked cell touched in its interior
// (and the cells of a double corner it passes through).  `crossed` collects
// all cells whose interior the arc passes.
struct CellRef {
    int i, j;
    bool operator==(const CellRef&) const = default;
};
enum class ArcKind { GreatCircle, ParallelArc, Straight };   // Straight: segment in grid coordinates
struct ArcWalk {
    bool illegal = false;
    std::vector<CellRef> blocked;
    std::vector<CellRef> crossed;
};
ArcWalk walk_arc(const GridMap& g, const GridPoint& p, const GridPoint& q, ArcKind kind,
                 double eps = 1e-9, bool stop_early = false);

} // namespace sanya
