#include "sanya/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace sanya {

GridMap::GridMap(int width, int height, MapBox box)
    : w_(width), h_(height), box_(box)
{
    if (width <= 0 || height <= 0) throw DimensionMismatch("grid dimensions must be positive");
    if (!(box.lat_max > box.lat_min) || !(box.lon_max > box.lon_min) || box.lat_min < -90 ||
        box.lat_max > 90 || box.lon_max - box.lon_min > 360)
        throw DimensionMismatch("bad map box");
    cells_.assign(static_cast<size_t>(w_) * h_, 0);
    // pole margin: a box that reaches a pole is pulled in by half a cell
    // there, keeping the map affine and no vertex on the pole
    double half = 0.5 * (box.lat_max - box.lat_min) / w_;
    double lo = box.lat_min <= -90 + 1e-12 ? -90 + half : box.lat_min;
    double hi = box.lat_max >= 90 - 1e-12 ? 90 - half : box.lat_max;
    lat0_ = deg2rad(lo);
    lon0_ = deg2rad(box.lon_min);
    dlat_ = deg2rad(hi - lo) / w_;
    dlon_ = deg2rad(box.lon_max - box.lon_min) / h_;
}

void GridMap::set_blocked(int i, int j, bool b)
{
    if (i < 0 || j < 0 || i >= w_ || j >= h_) return;
    cells_[static_cast<size_t>(j) * w_ + i] = b ? 1 : 0;
}

int GridMap::blocked_count() const
{
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), 1));
}

double GridMap::lat_of_x(double x) const { return lat0_ + x * dlat_; }
double GridMap::lon_of_y(double y) const { return lon0_ + y * dlon_; }
double GridMap::x_of_lat(double lat) const { return (lat - lat0_) / dlat_; }
double GridMap::y_of_lon(double lon) const { return (lon - lon0_) / dlon_; }

std::array<double, 2> eq5_degrees(double x, double row, int m, int n)
{
    return {90 * (2 * x / m - 1), 180 * (2 * row / n - 1)};
}

SpherePoint vertex_to_sphere(const GridMap& g, const GridPoint& v)
{
    return {g.lon_of_y(v.y), g.lat_of_x(v.x)};
}

GridPoint sphere_to_grid(const GridMap& g, const SpherePoint& p)
{
    return {g.x_of_lat(p.lat), g.y_of_lon(p.lon)};
}

VertexKind classify_vertex(const GridMap& g, int k, int row)
{
    bool a = g.blocked(k - 1, row - 1), b = g.blocked(k, row - 1);
    bool c = g.blocked(k - 1, row), d = g.blocked(k, row);
    int n = a + b + c + d;
    if (n == 1) return VertexKind::ConvexCorner;
    if (n == 2 && a == d) return VertexKind::DoubleCorner;
    return VertexKind::NotCorner;
}

bool point_traversable(const GridMap& g, const GridPoint& p)
{
    if (p.x < 0 || p.x > g.width() || p.y < 0 || p.y > g.height()) return false;
    double ry = std::round(p.y), rx = std::round(p.x);
    bool on_row = std::fabs(p.y - ry) < 1e-9, on_col = std::fabs(p.x - rx) < 1e-9;
    int i = static_cast<int>(std::floor(p.x)), j = static_cast<int>(std::floor(p.y));
    if (on_row && on_col) {
        int k = static_cast<int>(rx), r = static_cast<int>(ry);
        if (classify_vertex(g, k, r) == VertexKind::DoubleCorner) return false;
        return !(g.blocked(k - 1, r - 1) && g.blocked(k, r - 1) && g.blocked(k - 1, r) && g.blocked(k, r));
    }
    if (on_row) return row_segment_passable(g, i, static_cast<int>(ry));
    if (on_col) return parallel_segment_passable(g, static_cast<int>(rx), j);
    return !g.blocked(i, j);
}

double scan_row(const GridMap& g, int row, double from_x, int dir, ScanMode mode)
{
    double x = from_x;
    for (;;) {
        double next = dir > 0 ? std::floor(x + 1e-9) + 1 : std::ceil(x - 1e-9) - 1;
        int seg = static_cast<int>(dir > 0 ? next - 1 : next);
        if (!row_segment_passable(g, seg, row)) return x;
        x = next;
        int k = static_cast<int>(next);
        VertexKind vk = classify_vertex(g, k, row);
        if (vk == VertexKind::DoubleCorner) return x;
        if (mode == ScanMode::ToNextCorner && vk == VertexKind::ConvexCorner) return x;
    }
}

// ---- loaders ----

namespace {

struct Cursor {
    std::string_view s;
    size_t pos = 0;
    int line = 1, col = 1;

    bool eof() const { return pos >= s.size(); }
    void bump()
    {
        if (s[pos] == '\n') { ++line; col = 1; } else { ++col; }
        ++pos;
    }
    void skip_ws()
    {
        while (!eof() && std::isspace(static_cast<unsigned char>(s[pos]))) bump();
    }
    std::string_view token()
    {
        skip_ws();
        size_t b = pos;
        while (!eof() && !std::isspace(static_cast<unsigned char>(s[pos]))) bump();
        return s.substr(b, pos - b);
    }
    std::string_view rest_of_line()
    {
        size_t b = pos;
        while (!eof() && s[pos] != '\n') bump();
        auto r = s.substr(b, pos - b);
        if (!eof()) bump();
        while (!r.empty() && (r.back() == '\r' || r.back() == ' ' || r.back() == '\t')) r.remove_suffix(1);
        return r;
    }
};

double parse_num(std::string_view tok, int line, int col)
{
    std::string t(tok);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) throw ParseError("expected a number, got '" + t + "'", line, col);
    return v;
}

std::string lower(std::string_view s)
{
    std::string r(s);
    for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return r;
}

} // namespace

GridMap load_movingai(std::string_view text)
{
    Cursor c{text};
    int height = -1, width = -1;
    for (;;) {
        c.skip_ws();
        if (c.eof()) throw ParseError("missing 'map' line", c.line, c.col);
        int l = c.line, col = c.col;
        std::string key = lower(c.token());
        if (key == "map") {
            c.rest_of_line();
            break;
        }
        std::string_view val = c.token();
        if (key == "type") continue;
        if (key == "height") height = static_cast<int>(parse_num(val, l, col));
        else if (key == "width") width = static_cast<int>(parse_num(val, l, col));
        else throw ParseError("unknown header key '" + key + "'", l, col);
    }
    if (height <= 0 || width <= 0) throw ParseError("missing or bad height/width", c.line, c.col);
    GridMap g(height, width);
    int r = 0;
    while (!c.eof()) {
        int l = c.line;
        auto line = c.rest_of_line();
        if (line.empty()) continue;
        if (r >= height) throw ParseError("more map rows than height", l, 1);
        if (static_cast<int>(line.size()) != width)
            throw ParseError("row length " + std::to_string(line.size()) + " != width", l, static_cast<int>(line.size()) + 1);
        for (int j = 0; j < width; ++j) {
            char ch = line[j];
            bool blk;
            if (ch == '.' || ch == 'G' || ch == 'S') blk = false;
            else if (ch == '@' || ch == 'O' || ch == 'T' || ch == 'W') blk = true;
            else throw ParseError(std::string("unknown glyph '") + ch + "'", l, j + 1);
            g.set_blocked(height - 1 - r, j, blk);
        }
        ++r;
    }
    if (r != height) throw ParseError("map has " + std::to_string(r) + " rows, header says " + std::to_string(height), c.line, 1);
    return g;
}

GridMap load_raster(std::string_view bytes, const RasterOptions& opt)
{
    auto pass = opt.traversable_if ? opt.traversable_if : [](double v) { return v < 0; };
    if (opt.format == RasterFormat::RawI16) {
        if (opt.ncols <= 0 || opt.nrows <= 0) throw DimensionMismatch("raw raster needs ncols/nrows");
        size_t need = static_cast<size_t>(opt.ncols) * opt.nrows * 2;
        if (bytes.size() != need)
            throw DimensionMismatch("raw raster has " + std::to_string(bytes.size()) + " bytes, expected " + std::to_string(need));
        GridMap g(opt.nrows, opt.ncols, opt.box);
        for (int r = 0; r < opt.nrows; ++r)
            for (int j = 0; j < opt.ncols; ++j) {
                size_t o = (static_cast<size_t>(r) * opt.ncols + j) * 2;
                auto lo = static_cast<unsigned char>(bytes[o]), hi = static_cast<unsigned char>(bytes[o + 1]);
                auto v = static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
                g.set_blocked(opt.nrows - 1 - r, j, !pass(v));
            }
        return g;
    }

    Cursor c{bytes};
    int ncols = -1, nrows = -1;
    double xll = 0, yll = 0, cs = -1, nodata = std::nan("");
    bool xcenter = false, ycenter = false;
    for (;;) {
        c.skip_ws();
        size_t save = c.pos;
        int sl = c.line, scol = c.col;
        std::string key = lower(c.token());
        if (key.empty()) throw ParseError("unexpected end of header", c.line, c.col);
        if (!std::isalpha(static_cast<unsigned char>(key[0]))) {
            c.pos = save; c.line = sl; c.col = scol;
            break;
        }
        int l = c.line, col = c.col;
        double v = parse_num(c.token(), l, col);
        if (key == "ncols") ncols = static_cast<int>(v);
        else if (key == "nrows") nrows = static_cast<int>(v);
        else if (key == "xllcorner") xll = v;
        else if (key == "xllcenter") { xll = v; xcenter = true; }
        else if (key == "yllcorner") yll = v;
        else if (key == "yllcenter") { yll = v; ycenter = true; }
        else if (key == "cellsize") cs = v;
        else if (key == "nodata_value") nodata = v;
        else throw ParseError("unknown header key '" + key + "'", sl, scol);
    }
    if (ncols <= 0 || nrows <= 0 || cs <= 0) throw ParseError("incomplete ESRI header", c.line, c.col);
    if (xcenter) xll -= cs / 2;
    if (ycenter) yll -= cs / 2;
    MapBox box{std::max(-90.0, yll), std::min(90.0, yll + nrows * cs), xll, xll + ncols * cs};
    GridMap g(nrows, ncols, box);
    for (int r = 0; r < nrows; ++r)
        for (int j = 0; j < ncols; ++j) {
            c.skip_ws();
            if (c.eof())
                throw DimensionMismatch("raster ends after " + std::to_string(r * ncols + j) + " samples, expected " +
                                        std::to_string(static_cast<long>(nrows) * ncols));
            int l = c.line, col = c.col;
            double v = parse_num(c.token(), l, col);
            bool nd = !std::isnan(nodata) && v == nodata;
            g.set_blocked(nrows - 1 - r, j, nd || !pass(v));
        }
    c.skip_ws();
    if (!c.eof()) throw DimensionMismatch("raster has more samples than nrows*ncols");
    return g;
}

} // namespace sanya
