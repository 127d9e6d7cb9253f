#include "sanya/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "sanya/geo_policy.hpp"

namespace sanya {

namespace {

void check_endpoints(const GridMap& g, const GridPoint& s, const GridPoint& t)
{
    for (const GridPoint* p : {&s, &t})
        if (std::fabs(p->y - std::round(p->y)) > 1e-12 || !point_traversable(g, *p))
            throw InvalidEndpoint("endpoint is not a traversable point on a row");
}

std::vector<GridPoint> corners(const GridMap& g)
{
    std::vector<GridPoint> v;
    for (int row = 0; row <= g.height(); ++row)
        for (int k = 0; k <= g.width(); ++k)
            if (classify_vertex(g, k, row) == VertexKind::ConvexCorner)
                v.push_back({static_cast<double>(k), static_cast<double>(row)});
    return v;
}

// consecutive strips clipped on their poleward side by the same parallel
struct Run {
    int k, y0, y1;
    int first;   // index of its first sample
    double tan_k;
};

struct Graph {
    const GridMap& g;
    SphereGeo geo;
    int n;
    std::vector<GridPoint> fixed;   // s, t, corners
    std::vector<Run> runs;
    std::vector<int> run_of;        // per sample
    std::vector<GridPoint> pts;     // fixed then samples
    std::vector<Vec3> unit;
    std::vector<char> dead;

    size_t size() const { return pts.size(); }
    double dist(int a, int b) const
    {
        const Vec3 &u = unit[a], &v = unit[b];
        return geo.sc.radius_km * std::atan2(norm(cross(u, v)), dot(u, v));
    }
};

} // namespace

RouteRecord oracle_spherical(const GridMap& g, const GridPoint& s, const GridPoint& t, const OracleConfig& cfg)
{
    check_endpoints(g, s, t);
    Graph gr{g, SphereGeo{&g, cfg.sphere}, std::max(1, cfg.samples_per_cell)};
    const int n = gr.n;
    gr.fixed = {s, t};
    for (auto& c : corners(g)) gr.fixed.push_back(c);
    gr.pts = gr.fixed;
    int nf = static_cast<int>(gr.fixed.size());
    for (int k = 0; k <= g.width(); ++k) {
        int st = 0;
        while (st < g.height()) {
            if (!gr.geo.is_hug(k, st)) { ++st; continue; }
            int e = st;
            while (e < g.height() && gr.geo.is_hug(k, e)) ++e;
            Run r{k, st, e, static_cast<int>(gr.pts.size()), std::tan(gr.geo.lat(k))};
            for (int m = 0; m <= (e - st) * n; ++m) {
                gr.pts.push_back({static_cast<double>(k), st + static_cast<double>(m) / n});
                gr.run_of.push_back(static_cast<int>(gr.runs.size()));
            }
            gr.runs.push_back(r);
            st = e;
        }
    }
    size_t N = gr.pts.size();
    gr.unit.resize(N);
    gr.dead.assign(N, 0);
    for (size_t i = 0; i < N; ++i) {
        gr.unit[i] = to_unit(vertex_to_sphere(g, gr.pts[i]));
        // a path may not squeeze through a double corner
        const GridPoint& p = gr.pts[i];
        if (i >= static_cast<size_t>(nf) && std::fabs(p.y - std::round(p.y)) < 1e-12 &&
            classify_vertex(g, static_cast<int>(p.x), static_cast<int>(std::lround(p.y))) == VertexKind::DoubleCorner)
            gr.dead[i] = 1;
    }
    std::vector<int> levels;
    for (int l = n; l >= 1; l /= 2) {
        levels.push_back(n / l);   // stride in fine samples
        if (l % 2) break;
    }

    std::vector<double> d(N, std::numeric_limits<double>::infinity());
    std::vector<int> par(N, -1);
    std::vector<char> arc(N, 0), done(N, 0);
    auto h = [&](int v) { return gr.dist(v, 1); };
    using Q = std::pair<double, int>;
    std::priority_queue<Q, std::vector<Q>, std::greater<>> pq;
    d[0] = 0;
    pq.push({h(0), 0});
    auto relax = [&](int u, int w, double c, bool parallel) {
        if (gr.dead[w] || done[w] || c >= d[w] || c + h(w) >= d[1]) return;
        if (!parallel && !gc_visible(g, gr.pts[u], gr.pts[w])) return;
        d[w] = c;
        par[w] = u;
        arc[w] = parallel;
        pq.push({c + h(w), w});
    };
    while (!pq.empty()) {
        auto [fu, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (u == 1) break;
        double du = d[u];
        for (int w = 0; w < nf; ++w) relax(u, w, du + gr.dist(u, w), false);
        const GridPoint& pu = gr.pts[u];
        double tu = std::tan(gr.geo.lat(pu.x)), lu = gr.geo.lon(pu.y);
        for (size_t ri = 0; ri < gr.runs.size(); ++ri) {
            const Run& r = gr.runs[ri];
            double c = tu / r.tan_k;
            if (c > 1 + 1e-12 || c < -1) continue;
            double off = std::acos(std::clamp(c, -1.0, 1.0));
            for (int dir = -1; dir <= 1; dir += 2) {
                double yt = g.y_of_lon(lu + dir * off);
                if (yt < r.y0 - 1e-12 || yt > r.y1 + 1e-12) continue;
                double m = (yt - r.y0) * n;
                for (int stride : levels) {
                    int lo = static_cast<int>(std::floor(m / stride)) * stride;
                    for (int mm : {lo, lo + stride}) {
                        if (mm < 0 || mm > (r.y1 - r.y0) * n) continue;
                        int w = r.first + mm;
                        if (w != u) relax(u, w, du + gr.dist(u, w), false);
                    }
                }
            }
        }
        if (u >= nf) {
            const Run& r = gr.runs[gr.run_of[u - nf]];
            for (int step = -1; step <= 1; step += 2) {
                int w = u + step;
                if (w < r.first || w > r.first + (r.y1 - r.y0) * n) continue;
                relax(u, w, du + gr.geo.hug_len(r.k, gr.geo.lon(gr.pts[u].y), gr.geo.lon(gr.pts[w].y)), true);
            }
        }
    }
    if (!done[1]) throw NoPath();
    RouteRecord rr;
    rr.length = d[1];
    std::vector<int> chain;
    for (int u = 1; u >= 0; u = par[u]) chain.push_back(u);
    std::reverse(chain.begin(), chain.end());
    for (size_t i = 0; i < chain.size(); ++i) {
        rr.points.push_back(gr.pts[chain[i]]);
        rr.turning_points.push_back(vertex_to_sphere(g, gr.pts[chain[i]]));
        if (i > 0) rr.segment_kinds.push_back(arc[chain[i]] ? SegmentKind::ParallelArc : SegmentKind::GreatCircle);
    }
    return rr;
}

RouteRecord oracle_planar(const GridMap& g, const GridPoint& s, const GridPoint& t)
{
    check_endpoints(g, s, t);
    std::vector<GridPoint> v{s, t};
    for (auto& c : corners(g)) v.push_back(c);
    size_t N = v.size();
    auto dist = [&](int a, int b) { return std::hypot(v[a].x - v[b].x, v[a].y - v[b].y); };
    std::vector<double> d(N, std::numeric_limits<double>::infinity());
    std::vector<int> par(N, -1);
    std::vector<char> done(N, 0);
    using Q = std::pair<double, int>;
    std::priority_queue<Q, std::vector<Q>, std::greater<>> pq;
    d[0] = 0;
    pq.push({0, 0});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (u == 1) break;
        for (size_t w = 0; w < N; ++w) {
            double c = du + dist(u, static_cast<int>(w));
            if (done[w] || c >= d[w] || !line_visible(g, v[u], v[w])) continue;
            d[w] = c;
            par[w] = u;
            pq.push({c, static_cast<int>(w)});
        }
    }
    if (!done[1]) throw NoPath();
    RouteRecord rr;
    rr.planar = true;
    rr.length = d[1];
    std::vector<int> chain;
    for (int u = 1; u >= 0; u = par[u]) chain.push_back(u);
    std::reverse(chain.begin(), chain.end());
    for (size_t i = 0; i < chain.size(); ++i) {
        rr.points.push_back(v[chain[i]]);
        rr.turning_points.push_back(vertex_to_sphere(g, v[chain[i]]));
        if (i > 0) rr.segment_kinds.push_back(SegmentKind::GreatCircle);
    }
    return rr;
}

} // namespace sanya
