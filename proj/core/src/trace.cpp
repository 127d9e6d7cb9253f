#include <algorithm>
#include <cmath>

#include "sanya/grid.hpp"

namespace sanya {

namespace {

struct Walker {
    const GridMap& g;
    double eps;
    bool stop_early;
    ArcWalk out;
    bool hit = false;

    void cell(int i, int j)
    {
        if (g.blocked(i, j)) {
            hit = true;
            if (i >= 0 && j >= 0 && i < g.width() && j < g.height()) push(out.blocked, {i, j});
            else push(out.blocked, {std::clamp(i, 0, g.width() - 1), std::clamp(j, 0, g.height() - 1)});
        } else {
            push(out.crossed, {i, j});
        }
    }
    // running along a grid line between two cells
    void line(CellRef a, CellRef b)
    {
        if (g.blocked(a.i, a.j) && g.blocked(b.i, b.j)) {
            hit = true;
            if (a.i >= 0 && a.j >= 0 && a.i < g.width() && a.j < g.height()) push(out.blocked, a);
            if (b.i >= 0 && b.j >= 0 && b.i < g.width() && b.j < g.height()) push(out.blocked, b);
        }
    }
    void vertex(int k, int r)
    {
        bool a = g.blocked(k - 1, r - 1), b = g.blocked(k, r - 1), c = g.blocked(k - 1, r), d = g.blocked(k, r);
        if ((a && d && !b && !c) || (b && c && !a && !d)) {
            hit = true;
            if (a) { push(out.blocked, {k - 1, r - 1}); push(out.blocked, {k, r}); }
            else { push(out.blocked, {k, r - 1}); push(out.blocked, {k - 1, r}); }
        } else if (a && b && c && d) {
            hit = true;
            push(out.blocked, {std::clamp(k, 0, g.width() - 1), std::clamp(r, 0, g.height() - 1)});
        }
    }
    static void push(std::vector<CellRef>& v, CellRef c)
    {
        if (v.empty() || !(v.back() == c)) v.push_back(c);
    }

    // classify a point that lies strictly inside a sub-arc
    void interior_point(double x, double y)
    {
        double rx = std::round(x), ry = std::round(y);
        bool nx = std::fabs(x - rx) < eps, ny = std::fabs(y - ry) < eps;
        int i = static_cast<int>(std::floor(x)), j = static_cast<int>(std::floor(y));
        if (nx && ny) vertex(static_cast<int>(rx), static_cast<int>(ry));
        else if (ny) line({i, static_cast<int>(ry) - 1}, {i, static_cast<int>(ry)});
        else if (nx) line({static_cast<int>(rx) - 1, j}, {static_cast<int>(rx), j});
        else cell(i, j);
    }
    void crossing_point(double x, double y)
    {
        double rx = std::round(x), ry = std::round(y);
        if (std::fabs(x - rx) < eps && std::fabs(y - ry) < eps) vertex(static_cast<int>(rx), static_cast<int>(ry));
    }

    // straight line in grid space along x (meridian arc) or along y (parallel arc)
    void axis_walk(double a, double b, double fixed, bool along_x)
    {
        if (a > b) std::swap(a, b);
        double rf = std::round(fixed);
        bool on_line = std::fabs(fixed - rf) < eps;
        int f = static_cast<int>(on_line ? rf : std::floor(fixed));
        double x = a;
        while (x < b - eps) {
            double nxt = std::min(b, std::floor(x + eps) + 1);
            int seg = static_cast<int>(std::floor(0.5 * (x + nxt)));
            if (along_x) {
                if (on_line) line({seg, f - 1}, {seg, f});
                else cell(seg, f);
            } else {
                if (on_line) line({f - 1, seg}, {f, seg});
                else cell(f, seg);
            }
            if (stop_early && hit) return;
            if (nxt < b - eps && on_line) {
                int k = static_cast<int>(std::round(nxt));
                if (along_x) vertex(k, f); else vertex(f, k);
            }
            x = nxt;
        }
    }

    // straight segment in grid coordinates
    void line_walk(const GridPoint& p, const GridPoint& q)
    {
        std::vector<double> ts;
        double dx = q.x - p.x, dy = q.y - p.y;
        auto add = [&](double a, double d) {
            if (std::fabs(d) < 1e-15) return;
            int lo = static_cast<int>(std::floor(std::min(a, a + d))), hi = static_cast<int>(std::ceil(std::max(a, a + d)));
            for (int k = lo; k <= hi; ++k) {
                double t = (k - a) / d;
                if (t > 1e-13 && t < 1 - 1e-13) ts.push_back(t);
            }
        };
        add(p.x, dx);
        add(p.y, dy);
        std::sort(ts.begin(), ts.end());
        ts.push_back(1);
        double prev = 0;
        for (size_t n = 0; n < ts.size(); ++n) {
            double t = ts[n];
            if (t - prev > 1e-15) {
                double m = 0.5 * (prev + t);
                interior_point(p.x + m * dx, p.y + m * dy);
                if (stop_early && hit) return;
            }
            if (n + 1 < ts.size()) {
                crossing_point(p.x + t * dx, p.y + t * dy);
                if (stop_early && hit) return;
            }
            prev = t;
        }
    }

    void gc_walk(const GridPoint& p, const GridPoint& q)
    {
        SpherePoint sp = vertex_to_sphere(g, p), sq = vertex_to_sphere(g, q);
        if (std::fabs(sp.lon - sq.lon) >= kPi - 1e-12) {
            // minor arc would leave through the map edge
            hit = true;
            return;
        }
        Vec3 u = to_unit(sp), v = to_unit(sq);
        double w = std::atan2(norm(cross(u, v)), dot(u, v));
        if (w < 1e-15) return;
        double c = dot(u, v);
        Vec3 e = {v[0] - c * u[0], v[1] - c * u[1], v[2] - c * u[2]};
        double en = norm(e);
        for (double& z : e) z /= en;

        std::vector<double> ts;
        const double tt = 1e-13;
        auto keep = [&](double t) {
            if (t > tt && t < w - tt) ts.push_back(t);
        };
        int y0 = static_cast<int>(std::floor(std::min(p.y, q.y))) + 1;
        int y1 = static_cast<int>(std::ceil(std::max(p.y, q.y))) - 1;
        for (int r = y0; r <= y1; ++r) {
            double lam = g.lon_of_y(r);
            Vec3 m = {-std::sin(lam), std::cos(lam), 0};
            double t = std::atan2(-dot(u, m), dot(e, m));
            if (t < 0) t += kPi;
            if (t >= kPi) t -= kPi;
            keep(t);
        }
        double A = std::hypot(u[2], e[2]);
        if (A > 1e-15) {
            double t0 = std::atan2(e[2], u[2]);
            // latitude range of the arc
            double zmin = std::min(u[2], v[2]), zmax = std::max(u[2], v[2]);
            double tm = t0;
            while (tm < 0) tm += 2 * kPi;
            if (tm > 0 && tm < w) zmax = A;
            double tn = t0 + kPi;
            while (tn >= 2 * kPi) tn -= 2 * kPi;
            while (tn < 0) tn += 2 * kPi;
            if (tn > 0 && tn < w) zmin = -A;
            double xlo = g.x_of_lat(std::asin(std::clamp(zmin, -1.0, 1.0)));
            double xhi = g.x_of_lat(std::asin(std::clamp(zmax, -1.0, 1.0)));
            int k0 = std::max(0, static_cast<int>(std::floor(xlo)) - 1);
            int k1 = std::min(g.width(), static_cast<int>(std::ceil(xhi)) + 1);
            for (int k = k0; k <= k1; ++k) {
                double s = std::sin(g.lat_of_x(k)) / A;
                if (s < -1 - 1e-15 || s > 1 + 1e-15) continue;
                double d = std::acos(std::clamp(s, -1.0, 1.0));
                for (double t : {t0 + d, t0 - d}) {
                    while (t < 0) t += 2 * kPi;
                    while (t >= 2 * kPi) t -= 2 * kPi;
                    keep(t);
                }
            }
        }
        std::sort(ts.begin(), ts.end());
        auto at = [&](double t) {
            double ct = std::cos(t), st = std::sin(t);
            Vec3 z = {u[0] * ct + e[0] * st, u[1] * ct + e[1] * st, u[2] * ct + e[2] * st};
            return sphere_to_grid(g, from_unit(z));
        };
        double prev = 0;
        ts.push_back(w);
        for (size_t n = 0; n < ts.size(); ++n) {
            double t = ts[n];
            if (t - prev > 1e-15) {
                GridPoint m = at(0.5 * (prev + t));
                interior_point(m.x, m.y);
                if (stop_early && hit) return;
            }
            if (n + 1 < ts.size()) {
                GridPoint c = at(t);
                crossing_point(c.x, c.y);
                if (stop_early && hit) return;
            }
            prev = t;
        }
    }
};

} // namespace

ArcWalk walk_arc(const GridMap& g, const GridPoint& p, const GridPoint& q, ArcKind kind, double eps, bool stop_early)
{
    Walker wk{g, eps, stop_early, {}};
    if (kind == ArcKind::Straight) {
        wk.line_walk(p, q);
    } else if (kind == ArcKind::ParallelArc) {
        wk.axis_walk(p.y, q.y, 0.5 * (p.x + q.x), false);
    } else if (std::fabs(p.y - q.y) < 1e-12) {
        wk.axis_walk(p.x, q.x, 0.5 * (p.y + q.y), true);
    } else {
        wk.gc_walk(p, q);
    }
    wk.out.illegal = wk.hit;
    return std::move(wk.out);
}

bool gc_visible(const GridMap& g, const GridPoint& p, const GridPoint& q)
{
    Walker wk{g, 1e-9, true, {}};
    if (std::fabs(p.y - q.y) < 1e-12) wk.axis_walk(p.x, q.x, 0.5 * (p.y + q.y), true);
    else wk.gc_walk(p, q);
    return !wk.hit;
}

bool line_visible(const GridMap& g, const GridPoint& p, const GridPoint& q)
{
    Walker wk{g, 1e-9, true, {}};
    wk.line_walk(p, q);
    return !wk.hit;
}

} // namespace sanya
