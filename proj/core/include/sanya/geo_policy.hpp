#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "sanya/geom.hpp"
#include "sanya/grid.hpp"

namespace sanya {

// Straight lines in (x, y) grid units.
struct PlanarGeo {
    static constexpr bool kHug = false;
    const GridMap* g;
    SphereConfig sc;

    double dist(const GridPoint& a, const GridPoint& b) const { return std::hypot(a.x - b.x, a.y - b.y); }
    double x_at(const GridPoint& r, const GridPoint& p, double y) const
    {
        if (y == p.y) return p.x;
        if (y == r.y) return r.x;
        return r.x + (p.x - r.x) * (y - r.y) / (p.y - r.y);
    }
    std::pair<double, double> xrange(const GridPoint& r, const GridPoint& p, double ya, double yb) const
    {
        double a = x_at(r, p, ya), b = x_at(r, p, yb);
        return {std::min(a, b), std::max(a, b)};
    }
    bool reachable_row(const GridPoint&, double) const { return true; }
    int pole_side(int) const { return 0; }
    // no parallels to hug in the plane
    double lon(double y) const { return y; }
    bool is_hug(int, int) const { return false; }
    double tangent_x(int k, double, double) const { return k; }
    double dep_for(int, int, const GridPoint& q) const { return q.y; }
    double tangent_lon(int, int, const GridPoint&) const { return std::numeric_limits<double>::quiet_NaN(); }
    double hug_len(int, double, double) const { return 0; }
};

// Great circles and parallels on the sphere.
struct SphereGeo {
    static constexpr bool kHug = true;
    const GridMap* g;
    SphereConfig sc;

    double lat(double x) const { return g->lat_of_x(x); }
    double lon(double y) const { return g->lon_of_y(y); }
    Vec3 unit(const GridPoint& p) const { return to_unit(vertex_to_sphere(*g, p)); }

    double dist(const GridPoint& a, const GridPoint& b) const
    {
        return sc.radius_km * central_angle(vertex_to_sphere(*g, a), vertex_to_sphere(*g, b));
    }
    Vec3 normal(const GridPoint& r, const GridPoint& p) const
    {
        Vec3 n = cross(unit(r), unit(p));
        double l = norm(n);
        return {n[0] / l, n[1] / l, n[2] / l};
    }
    double x_at(const GridPoint& r, const GridPoint& p, double y) const
    {
        if (y == p.y) return p.x;
        if (y == r.y) return r.x;
        Vec3 n = normal(r, p);
        double lam = lon(y);
        return g->x_of_lat(std::atan(-(n[0] * std::cos(lam) + n[1] * std::sin(lam)) / n[2]));
    }
    // x extent of the minor arc r->p between rows ya and yb
    std::pair<double, double> xrange(const GridPoint& r, const GridPoint& p, double ya, double yb) const
    {
        double a = x_at(r, p, ya), b = x_at(r, p, yb);
        double lo = std::min(a, b), hi = std::max(a, b);
        Vec3 n = normal(r, p);
        if (std::hypot(n[0], n[1]) < 1e-15) return {lo, hi};
        double apex = std::acos(std::min(1.0, std::fabs(n[2])));
        double lam_n = std::atan2(-n[2] * n[1], -n[2] * n[0]);
        double la = std::min(lon(ya), lon(yb)), lb = std::max(lon(ya), lon(yb));
        for (int sgn : {1, -1}) {
            double l = sgn > 0 ? lam_n : lam_n + kPi;
            while (l > la + kPi) l -= 2 * kPi;
            while (l <= la - kPi) l += 2 * kPi;
            if (l > la && l < lb) {
                double x = g->x_of_lat(sgn * apex);
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
        }
        return {lo, hi};
    }
    bool reachable_row(const GridPoint& r, double y) const { return std::fabs(lon(y) - lon(r.y)) < kPi - 1e-9; }

    // +1 north of the equator, -1 south, 0 on it
    int pole_side(int k) const
    {
        double l = lat(k);
        return l > 1e-12 ? 1 : (l < -1e-12 ? -1 : 0);
    }
    // parallel x = k clips strip s on its poleward side
    bool is_hug(int k, int s) const
    {
        int ps = pole_side(k);
        if (ps > 0) return g->blocked(k, s) && !g->blocked(k - 1, s);
        if (ps < 0) return g->blocked(k - 1, s) && !g->blocked(k, s);
        return false;
    }
    // x of the great circle tangent to parallel k at longitude dep, at longitude lam
    double tangent_x(int k, double dep, double lam) const
    {
        return g->x_of_lat(std::atan(std::tan(lat(k)) * std::cos(lam - dep)));
    }
    // longitude where a tangent circle leaving parallel k heading dir reaches q
    double dep_for(int k, int dir, const GridPoint& q) const
    {
        double c = std::clamp(std::tan(lat(q.x)) / std::tan(lat(k)), -1.0, 1.0);
        return lon(q.y) - dir * std::acos(c);
    }
    // tangent point on parallel k of the circle from r heading dir; NaN if r is poleward
    double tangent_lon(int k, int dir, const GridPoint& r) const
    {
        double tk = std::tan(lat(k));
        if (tk == 0) return std::numeric_limits<double>::quiet_NaN();
        double c = std::tan(lat(r.x)) / tk;
        if (c > 1 + 1e-12) return std::numeric_limits<double>::quiet_NaN();
        return lon(r.y) + dir * std::acos(std::clamp(c, -1.0, 1.0));
    }
    double hug_len(int k, double lon0, double lon1) const
    {
        return sc.radius_km * std::cos(lat(k)) * std::fabs(lon1 - lon0);
    }
};

} // namespace sanya
