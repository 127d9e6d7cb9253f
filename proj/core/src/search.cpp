#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "sanya/geo_policy.hpp"
#include "sanya/search.hpp"

namespace sanya {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline double snap(double x, double tol)
{
    double r = std::round(x);
    return std::fabs(x - r) < tol ? r : x;
}
inline bool is_int(double x, double tol) { return std::fabs(x - std::round(x)) < tol; }

inline std::int64_t vkey(long k, long row) { return k * 4000037L + row; }

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v)
{
    v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    v ^= v >> 30; v *= 0xbf58476d1ce4e5b9ULL;
    v ^= v >> 27; v *= 0x94d049bb133111ebULL;
    v ^= v >> 31;
    return h ^ v;
}
inline std::uint64_t q8(double x) { return static_cast<std::uint64_t>(std::llround(x * 1e8)); }

// smallest p in [a,b] with ok(p), assuming ok is false then true
template <class F>
double bisect_up(double a, double b, F ok)
{
    for (int it = 0; it < 64 && b - a > 1e-13; ++it) {
        double m = 0.5 * (a + b);
        if (ok(m)) b = m; else a = m;
    }
    return b;
}
// largest p in [a,b] with ok(p), assuming ok is true then false
template <class F>
double bisect_down(double a, double b, F ok)
{
    for (int it = 0; it < 64 && b - a > 1e-13; ++it) {
        double m = 0.5 * (a + b);
        if (ok(m)) a = m; else b = m;
    }
    return a;
}

} // namespace

template <class Geo>
struct IntervalSearch<Geo>::Impl {
    using S = IntervalSearch<Geo>;

    static int W(const S& s) { return s.g_.width(); }
    static int H(const S& s) { return s.g_.height(); }

    // free runs [L, U] of strip st
    template <class F>
    static void for_runs(const S& s, int st, double c_lo, double c_hi, F f)
    {
        const GridMap& g = s.g_;
        if (st < 0 || st >= g.height()) return;
        int i = std::max(0, static_cast<int>(std::floor(c_lo)) - 1);
        while (i > 0 && !g.blocked(i - 1, st)) --i;
        int w = g.width();
        while (i < w) {
            if (g.blocked(i, st)) { ++i; continue; }
            int j = i;
            while (j < w && !g.blocked(j, st)) ++j;
            if (i > c_hi + s.cfg_.tol) return;
            if (j >= c_lo - s.cfg_.tol) f(static_cast<double>(i), static_cast<double>(j));
            i = j;
        }
    }

    // sub-range of [a,b] whose rays keep xmin >= L and xmax <= U
    template <class R>
    static bool solve(const S& s, double a, double b, double L, double U, R range, double& pa, double& pb)
    {
        double tol = s.cfg_.tol;
        auto lo_ok = [&](double p) { return range(p).first >= L - tol; };
        auto hi_ok = [&](double p) { return range(p).second <= U + tol; };
        if (lo_ok(a)) pa = a;
        else if (!lo_ok(b)) return false;
        else pa = bisect_up(a, b, lo_ok);
        if (hi_ok(b)) pb = b;
        else if (!hi_ok(a)) return false;
        else pb = bisect_down(a, b, hi_ok);
        return pa <= pb + tol;
    }

    static double heuristic(const S& s, const SearchNode& n)
    {
        const Geo& geo = *s.geo_;
        if (n.hug) return geo.dist(n.entry, s.t_);
        const GridPoint& r = s.roots_[n.root].p;
        if (Geo::kHug && !s.cfg_.interval_heuristic) return geo.dist(r, s.t_);
        // interval constrained: the cheapest way through the interval, with
        // the target mirrored when it lies on the root's side of the row
        double y = n.iv.row;
        GridPoint t = s.t_;
        if (r.y != y && t.y != y && ((t.y - y) > 0) == ((r.y - y) > 0)) t.y = 2 * y - t.y;
        auto f = [&](double x) { return geo.dist(r, {x, y}) + geo.dist({x, y}, t); };
        double lo = n.iv.lo, hi = n.iv.hi;
        if (hi - lo < 1e-12) return f(lo);
        if constexpr (!Geo::kHug) {
            if (r.y != y && t.y != y) {
                double xc = r.x + (t.x - r.x) * (y - r.y) / (t.y - r.y);
                if (xc >= lo && xc <= hi) return geo.dist(r, t);
                return std::min(f(lo), f(hi));
            }
        }
        double a = lo, b = hi;
        for (int it = 0; it < 80; ++it) {
            double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
            if (f(m1) <= f(m2)) b = m2; else a = m1;
        }
        return std::min({f(lo), f(hi), f(0.5 * (a + b))});
    }

    static void finish(S& s, SearchNode n)
    {
        n.f = n.g + heuristic(s, n);
        if (n.iv.row == s.t_.y && n.iv.contains(s.t_.x, s.cfg_.tol)) {
            SearchNode t = n;
            t.kind = NodeKind::Target;
            t.f = s.cost_to(n, s.t_);
            s.out_->push_back(t);
        }
        s.out_->push_back(n);
    }

    // split at corner points and push
    static void emit(S& s, const SearchNode& proto, double lo, double hi, bool lo_closed, bool hi_closed)
    {
        double tol = s.cfg_.tol;
        lo = snap(lo, tol);
        hi = snap(hi, tol);
        if (hi < lo) {
            if (lo - hi > 1e-9) return;
            hi = lo;
        }
        int row = proto.iv.row;
        const GridMap& g = s.g_;
        auto dbl = [&](double x) {
            return is_int(x, tol) &&
                   classify_vertex(g, static_cast<int>(std::lround(x)), row) == VertexKind::DoubleCorner;
        };
        if (dbl(lo)) lo_closed = false;
        if (dbl(hi)) hi_closed = false;
        std::vector<double> cuts{lo};
        for (int k = static_cast<int>(std::floor(lo)) + 1; k < hi - tol; ++k) {
            if (k <= lo + tol) continue;
            if (classify_vertex(g, k, row) != VertexKind::NotCorner) cuts.push_back(k);
        }
        cuts.push_back(hi);
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i], b = cuts[i + 1];
            bool ca = i == 0 ? lo_closed : !dbl(a);
            bool cb = i + 2 == cuts.size() ? hi_closed : !dbl(b);
            if (b - a < 1e-12 && !(ca && cb)) continue;
            SearchNode n = proto;
            n.iv = {row, a, b, ca, cb};
            finish(s, n);
        }
    }

    static int spawn(S& s, int parent_root, const SearchNode* via, const GridPoint& c, double g)
    {
        std::int64_t key = vkey(std::lround(c.x), std::lround(c.y));
        auto it = s.best_root_g_.find(key);
        double eps = 1e-12 * std::max(1.0, g);
        if (!is_int(c.x, 1e-12)) {
            // only the start can sit off a vertex
        } else if (it != s.best_root_g_.end()) {
            if (g > it->second + eps) return -1;
            if (g < it->second) it->second = g;
        } else {
            s.best_root_g_.emplace(key, g);
        }
        RootRecord r;
        r.p = c;
        r.g = g;
        r.parent = parent_root;
        if (via && via->hug) {
            r.hug = true;
            r.edge = via->edge;
            r.dir = via->dir;
            r.entry = via->entry;
        }
        s.roots_.push_back(r);
        return static_cast<int>(s.roots_.size()) - 1;
    }

    static SearchNode proto(const S& s, NodeKind k, int root, int row)
    {
        SearchNode n;
        n.kind = k;
        n.root = root;
        n.iv.row = row;
        n.g = s.roots_[root].g;
        return n;
    }

    // Project the pencil of great circles through a point root from row y
    // onto row y + D.  [c_lo, c_hi] are the admissible landing points,
    // [ilo, ihi] where the rays cross row y.
    static void project_point(S& s, int ri, int y, int D, double c_lo, double c_hi, double ilo, double ihi,
                              bool lo_open, bool hi_open)
    {
        const Geo& geo = *s.geo_;
        GridPoint rp = s.roots_[ri].p;
        int yp = y + D;
        if (yp < 0 || yp > H(s)) return;
        if (!geo.reachable_row(rp, yp)) return;
        int st = D > 0 ? y : y - 1;
        double tol = s.cfg_.tol;
        if (c_lo > c_hi) std::swap(c_lo, c_hi);
        double req_lo = c_lo, req_hi = c_hi;
        c_lo = std::max(c_lo, 0.0);
        c_hi = std::min(c_hi, static_cast<double>(W(s)));
        auto range = [&](double p) { return geo.xrange(rp, {p, static_cast<double>(yp)}, y, yp); };
        for_runs(s, st, c_lo, c_hi, [&](double L, double U) {
            double a = std::max(c_lo, L), b = std::min(c_hi, U);
            if (a > b) {
                if (a - b > tol) return;
                b = a;
            }
            double pa, pb;
            if (solve(s, a, b, L, U, range, pa, pb)) {
                SearchNode n = proto(s, NodeKind::Cone, ri, yp);
                emit(s, n, pa, pb, !(lo_open && std::fabs(pa - req_lo) < tol), !(hi_open && std::fabs(pb - req_hi) < tol));
            }
            if constexpr (Geo::kHug) tangent_entry(s, ri, y, D, st, L, U, ilo, ihi);
        });
    }

    // rays from the root that would bulge over the clipping parallel of
    // the run: hug it from the tangent point instead
    static void tangent_entry(S& s, int ri, int y, int D, int st, double L, double U, double ilo, double ihi)
    {
        const Geo& geo = *s.geo_;
        const RootRecord& r = s.roots_[ri];
        GridPoint rp = r.p;
        int yp = y + D;
        double tol = s.cfg_.tol;
        for (int side = 0; side < 2; ++side) {
            int k = static_cast<int>(side == 0 ? U : L);
            int ps = geo.pole_side(k);
            if ((side == 0 && ps <= 0) || (side == 1 && ps >= 0)) continue;
            if (!geo.is_hug(k, st)) continue;
            if (side == 0 ? rp.x > k + tol : rp.x < k - tol) continue;
            double th = geo.tangent_lon(k, D, rp);
            if (std::isnan(th)) continue;
            double ty = s.g_.y_of_lon(th);
            if (D * (ty - y) < -1e-9 || D * (ty - yp) >= -1e-9) continue;
            if (std::fabs(ty - y) < 1e-9) ty = y;
            GridPoint T{static_cast<double>(k), ty};
            double xy = ty == y ? k : geo.x_at(rp, T, y);
            if (xy < ilo - 1e-9 || xy > ihi + 1e-9 || xy < L - tol || xy > U + tol) continue;
            SearchNode n = proto(s, NodeKind::Adjoint, ri, yp);
            n.hug = true;
            n.edge = k;
            n.dir = D;
            n.entry = T;
            n.g = r.g + geo.dist(rp, T);
            double far = geo.tangent_x(k, th, geo.lon(yp));
            if (side == 0) {
                bool clip = far < L + tol;
                emit(s, n, std::max(far, L), U, clip, true);
            } else {
                bool clip = far > U - tol;
                emit(s, n, L, std::min(far, U), true, clip);
            }
        }
    }

    static double dep_of(const S& s, const SearchNode& n, const GridPoint& q)
    {
        const Geo& geo = *s.geo_;
        double tq = geo.lon(q.y), te = geo.lon(n.entry.y);
        if (std::fabs(q.x - n.edge) < 1e-12) return tq;
        double d = geo.dep_for(n.edge, n.dir, q);
        if (n.dir * (d - te) < 0) d = te;
        if (n.dir * (d - tq) > 0) d = tq;
        return d;
    }

    static void project_adjoint(S& s, const SearchNode& n)
    {
        if constexpr (Geo::kHug) {
            const Geo& geo = *s.geo_;
            int k = n.edge, D = n.dir, y = n.iv.row, yp = y + D;
            if (yp < 0 || yp > H(s)) return;
            int st = D > 0 ? y : y - 1;
            double tol = s.cfg_.tol;
            int ps = geo.pole_side(k);
            double ty = geo.lon(y), typ = geo.lon(yp);
            double near = ps > 0 ? n.iv.hi : n.iv.lo, far = ps > 0 ? n.iv.lo : n.iv.hi;
            bool far_closed = ps > 0 ? n.iv.lo_closed : n.iv.hi_closed;
            double dfar = dep_of(s, n, {far, static_cast<double>(y)});
            double dnear = dep_of(s, n, {near, static_cast<double>(y)});
            bool ext = std::fabs(near - k) < tol && geo.is_hug(k, st);
            if (ext) dnear = typ;
            double xfar = geo.tangent_x(k, dfar, typ);
            double xnear = ext ? k : geo.tangent_x(k, dnear, typ);
            double c_lo = std::min(xfar, xnear), c_hi = std::max(xfar, xnear);
            auto range = [&](double p) -> std::pair<double, double> {
                double th = std::fabs(p - k) < 1e-12 ? typ : geo.dep_for(k, D, {p, static_cast<double>(yp)});
                if (D * (th - dfar) < 0) th = dfar;
                if (D * (th - dnear) > 0) th = dnear;
                if (D * (th - ty) <= 0) {
                    double xy = geo.tangent_x(k, th, ty);
                    return {std::min(xy, p), std::max(xy, p)};
                }
                return {std::min<double>(k, p), std::max<double>(k, p)};
            };
            for_runs(s, st, c_lo, c_hi, [&](double L, double U) {
                double a = std::max(c_lo, L), b = std::min(c_hi, U);
                if (a > b) {
                    if (a - b > tol) return;
                    b = a;
                }
                double pa, pb;
                if (!solve(s, a, b, L, U, range, pa, pb)) return;
                SearchNode m = n;
                m.iv.row = yp;
                bool lo_c = true, hi_c = true;
                if (ps > 0 && !far_closed && std::fabs(pa - xfar) < tol) lo_c = false;
                if (ps < 0 && !far_closed && std::fabs(pb - xfar) < tol) hi_c = false;
                emit(s, m, pa, pb, lo_c, hi_c);
            });
        }
    }

    // where the parent family's ray through e lands on row yp
    static double proj_parent(const S& s, const SearchNode& n, const GridPoint& e, int yp)
    {
        const Geo& geo = *s.geo_;
        if constexpr (Geo::kHug) {
            if (n.hug) return geo.tangent_x(n.edge, dep_of(s, n, e), geo.lon(yp));
        }
        return geo.x_at(s.roots_[n.root].p, e, yp);
    }

    static void endpoint_spawns(S& s, const SearchNode& n)
    {
        const GridMap& g = s.g_;
        int y = n.iv.row;
        int D = n.hug ? n.dir : (y > s.roots_[n.root].p.y ? 1 : -1);
        int yp = y + D;
        int s_in = D > 0 ? y - 1 : y, s_out = D > 0 ? y : y - 1;
        double tol = s.cfg_.tol;
        int ci = -2;   // a point interval looks both ways from one root
        for (int hi = 0; hi < 2; ++hi) {
            double x = hi ? n.iv.hi : n.iv.lo;
            bool closed = hi ? n.iv.hi_closed : n.iv.lo_closed;
            if (!closed || !is_int(x, tol)) continue;
            if (n.iv.hi != n.iv.lo) ci = -2;
            int k = static_cast<int>(std::lround(x));
            if (classify_vertex(g, k, y) != VertexKind::ConvexCorner) continue;
            int beyond = hi ? k : k - 1, inside = hi ? k - 1 : k;
            bool eturn = g.blocked(beyond, s_in) && !g.blocked(inside, s_in);
            // obstacle at the corner in the next strip: the parent's rays
            // leave a gap between the corner and where they land
            bool nturn = !eturn && g.blocked(beyond, s_out) != g.blocked(inside, s_out);
            bool hstart = false;
            if constexpr (Geo::kHug) {
                const Geo& geo = *s.geo_;
                if (!eturn && !nturn && geo.is_hug(k, s_out)) {
                    int obst = geo.pole_side(k) > 0 ? k : k - 1;
                    hstart = obst == inside;
                }
            }
            if (!eturn && !nturn && !hstart) continue;
            GridPoint e{static_cast<double>(k), static_cast<double>(y)};
            if (ci == -2) ci = spawn(s, n.root, &n, e, s.cost_to(n, e));
            if (ci < 0) continue;
            if (yp >= 0 && yp <= H(s)) {
                // the parent's own ray through the corner stays with the parent,
                // unless the parent runs out of hemisphere before the map ends
                const GridPoint& rp = s.roots_[n.root].p;
                bool own = n.hug || s.geo_->reachable_row(rp, D > 0 ? H(s) : 0);
                if (eturn) {
                    double pe = proj_parent(s, n, e, yp);
                    if (hi) project_point(s, ci, y, D, pe, W(s), k, k, own, false);
                    else project_point(s, ci, y, D, 0, pe, k, k, false, own);
                } else if (nturn) {
                    double pe = proj_parent(s, n, e, yp);
                    if (pe < k) project_point(s, ci, y, D, pe, k, k, k, own, false);
                    else project_point(s, ci, y, D, k, pe, k, k, false, own);
                } else {
                    project_point(s, ci, y, D, 0, W(s), k, k, false, false);
                }
            }
            if (eturn) flat_walk(s, ci, y, k, hi ? 1 : -1, false);
        }
    }

    // corner reached by a walk along row y heading d
    static void turning_at(S& s, int ri, int k, int y, int d)
    {
        const GridMap& g = s.g_;
        int kb = d > 0 ? k - 1 : k, ka = d > 0 ? k : k - 1;
        int ci = -2;
        for (int side = -1; side <= 1; side += 2) {
            int sd = side > 0 ? y : y - 1;
            int yp = y + side;
            if (yp < 0 || yp > H(s)) continue;
            bool eturn = g.blocked(kb, sd) && !g.blocked(ka, sd);
            bool hstart = false;
            if constexpr (Geo::kHug) {
                const Geo& geo = *s.geo_;
                if (!eturn && geo.is_hug(k, sd)) hstart = (geo.pole_side(k) > 0 ? k : k - 1) == ka;
            }
            if (!eturn && !hstart) continue;
            if (ci == -2) {
                GridPoint c{static_cast<double>(k), static_cast<double>(y)};
                const RootRecord& r = s.roots_[ri];
                ci = spawn(s, ri, nullptr, c, r.g + s.geo_->dist(r.p, c));
            }
            if (ci < 0) return;
            if (eturn) project_point(s, ci, y, side, d > 0 ? k : 0, d > 0 ? W(s) : k, k, k, false, false);
            else project_point(s, ci, y, side, 0, W(s), k, k, false, false);
        }
    }

    // walk along the row to the wall; emits flat nodes, spawns turning corners
    static void flat_walk(S& s, int ri, int y, double x0, int d, bool test_origin)
    {
        const GridMap& g = s.g_;
        double tol = s.cfg_.tol;
        if (test_origin && is_int(x0, tol) &&
            classify_vertex(g, static_cast<int>(std::lround(x0)), y) == VertexKind::ConvexCorner)
            turning_at(s, ri, static_cast<int>(std::lround(x0)), y, d);
        double x = x0, start = x0;
        bool adjacent = false;
        auto piece = [&](double a, double b, bool last, bool end_open) {
            if (std::fabs(b - a) < 1e-12) return;
            SearchNode n = proto(s, NodeKind::Flat, ri, y);
            n.terminal = true;
            if (d > 0) n.iv = {y, a, b, false, !end_open};
            else n.iv = {y, b, a, !end_open, false};
            n.f = n.g + heuristic(s, n);
            if (n.iv.row == s.t_.y && n.iv.contains(s.t_.x, tol)) {
                SearchNode t = n;
                t.kind = NodeKind::Target;
                t.f = s.cost_to(n, s.t_);
                s.out_->push_back(t);
            }
            if (!adjacent && !last) s.out_->push_back(n);
        };
        for (;;) {
            double next = d > 0 ? std::floor(x + tol) + 1 : std::ceil(x - tol) - 1;
            int seg = static_cast<int>(d > 0 ? next - 1 : next);
            if (!row_segment_passable(g, seg, y)) {
                piece(start, x, true, false);
                return;
            }
            if (g.blocked(seg, y - 1) || g.blocked(seg, y)) adjacent = true;
            x = next;
            int k = static_cast<int>(next);
            VertexKind vk = classify_vertex(g, k, y);
            if (vk == VertexKind::DoubleCorner) {
                piece(start, x, true, true);
                return;
            }
            if (vk == VertexKind::ConvexCorner) {
                piece(start, x, false, false);
                turning_at(s, ri, k, y, d);
                start = x;
                adjacent = false;
            }
        }
    }
};

template <class Geo>
IntervalSearch<Geo>::IntervalSearch(const GridMap& g, const SearchConfig& cfg)
    : g_(g), cfg_(cfg), geo_(new Geo{&g, cfg.sphere})
{
}

template <class Geo>
IntervalSearch<Geo>::~IntervalSearch()
{
    delete geo_;
}

template <class Geo>
void IntervalSearch<Geo>::reset(const GridPoint& t)
{
    t_ = t;
    roots_.clear();
    best_root_g_.clear();
}

template <class Geo>
int IntervalSearch<Geo>::add_root(const GridPoint& p, double g, int parent)
{
    return Impl::spawn(*this, parent, nullptr, p, g);
}

template <class Geo>
SearchNode IntervalSearch<Geo>::make_node(NodeKind kind, int root, int row, double lo, double hi, bool lo_closed,
                                          bool hi_closed) const
{
    SearchNode n = Impl::proto(*this, kind, root, row);
    n.iv = {row, lo, hi, lo_closed, hi_closed};
    n.f = n.g + Impl::heuristic(*this, n);
    return n;
}

template <class Geo>
double IntervalSearch<Geo>::cost_to(const SearchNode& n, const GridPoint& q) const
{
    if constexpr (Geo::kHug) {
        if (n.hug) {
            double th = Impl::dep_of(*this, n, q);
            GridPoint d{static_cast<double>(n.edge), g_.y_of_lon(th)};
            return n.g + geo_->hug_len(n.edge, geo_->lon(n.entry.y), th) + geo_->dist(d, q);
        }
    }
    const RootRecord& r = roots_[n.root];
    return r.g + geo_->dist(r.p, q);
}

template <class Geo>
std::vector<SearchNode> IntervalSearch<Geo>::start_successors(const GridPoint& s)
{
    std::vector<SearchNode> out;
    out_ = &out;
    int ri = roots_.empty() ? add_root(s, 0) : 0;
    int y = static_cast<int>(std::lround(s.y));
    Impl::flat_walk(*this, ri, y, s.x, 1, false);
    Impl::flat_walk(*this, ri, y, s.x, -1, false);
    for (int D = -1; D <= 1; D += 2) Impl::project_point(*this, ri, y, D, 0, g_.width(), s.x, s.x, false, false);
    out_ = nullptr;
    return out;
}

template <class Geo>
std::vector<SearchNode> IntervalSearch<Geo>::successors(const SearchNode& n)
{
    std::vector<SearchNode> out;
    out_ = &out;
    const GridPoint& r = roots_[n.root].p;
    int y = n.iv.row;
    switch (n.kind) {
    case NodeKind::Flat: {
        bool hi_far = std::fabs(n.iv.hi - r.x) >= std::fabs(n.iv.lo - r.x);
        Impl::flat_walk(*this, n.root, y, hi_far ? n.iv.hi : n.iv.lo, hi_far ? 1 : -1, true);
        break;
    }
    case NodeKind::Cone: {
        int D = y > r.y ? 1 : -1;
        int yp = y + D;
        if (yp >= 0 && yp <= g_.height() && geo_->reachable_row(r, yp)) {
            double a = geo_->x_at(r, {n.iv.lo, static_cast<double>(y)}, yp);
            double b = geo_->x_at(r, {n.iv.hi, static_cast<double>(y)}, yp);
            Impl::project_point(*this, n.root, y, D, a, b, n.iv.lo, n.iv.hi, !n.iv.lo_closed, !n.iv.hi_closed);
        } else if (yp >= 0 && yp <= g_.height()) {
            // half way round from the root: carry on from vertices of the interval
            for (int k = static_cast<int>(std::ceil(n.iv.lo - cfg_.tol)); k <= n.iv.hi + cfg_.tol; ++k) {
                GridPoint c{static_cast<double>(k), static_cast<double>(y)};
                if (!n.iv.contains(k, cfg_.tol) || classify_vertex(g_, k, y) == VertexKind::DoubleCorner) continue;
                int ci = Impl::spawn(*this, n.root, &n, c, cost_to(n, c));
                if (ci >= 0) Impl::project_point(*this, ci, y, D, 0, g_.width(), k, k, false, false);
            }
        }
        Impl::endpoint_spawns(*this, n);
        break;
    }
    case NodeKind::Adjoint:
        Impl::project_adjoint(*this, n);
        Impl::endpoint_spawns(*this, n);
        break;
    case NodeKind::Target:
        break;
    }
    out_ = nullptr;
    return out;
}

template <class Geo>
bool IntervalSearch<Geo>::is_intermediate(const SearchNode& n) const
{
    const double tol = cfg_.tol;
    auto corner = [&](double x, int row) {
        return is_int(x, tol) && classify_vertex(g_, static_cast<int>(std::lround(x)), row) == VertexKind::ConvexCorner;
    };
    const GridPoint& r = roots_[n.root].p;
    int y = n.iv.row;
    switch (n.kind) {
    case NodeKind::Flat: {
        bool hi_far = std::fabs(n.iv.hi - r.x) >= std::fabs(n.iv.lo - r.x);
        double p = hi_far ? n.iv.hi : n.iv.lo;
        if (!corner(p, y)) return true;
        int k = static_cast<int>(std::lround(p)), d = hi_far ? 1 : -1;
        int kb = d > 0 ? k - 1 : k, ka = d > 0 ? k : k - 1;
        for (int sd : {y - 1, y})
            if (g_.blocked(kb, sd) && !g_.blocked(ka, sd)) return false;
        return true;
    }
    case NodeKind::Adjoint: {
        double p = geo_->pole_side(n.edge) > 0 ? n.iv.hi : n.iv.lo;
        return !corner(p, y);
    }
    case NodeKind::Cone: {
        if ((n.iv.lo_closed && corner(n.iv.lo, y)) || (n.iv.hi_closed && corner(n.iv.hi, y))) return false;
        int D = y > r.y ? 1 : -1, yp = y + D;
        if (yp < 0 || yp > g_.height() || !geo_->reachable_row(r, yp)) return true;
        double a = geo_->x_at(r, {n.iv.lo, static_cast<double>(y)}, yp);
        double b = geo_->x_at(r, {n.iv.hi, static_cast<double>(y)}, yp);
        if (a > b) std::swap(a, b);
        a = std::max(a, 0.0);
        b = std::min(b, static_cast<double>(g_.width()));
        for (int k = static_cast<int>(std::ceil(a - tol)); k <= b + tol; ++k)
            if (classify_vertex(g_, k, yp) != VertexKind::NotCorner) return false;
        return true;
    }
    case NodeKind::Target:
        return false;
    }
    return true;
}

template <class Geo>
RouteRecord IntervalSearch<Geo>::path_to(const SearchNode& tn) const
{
    std::vector<GridPoint> pts{t_};
    std::vector<SegmentKind> kinds;
    auto add = [&](const GridPoint& p, SegmentKind k) {
        const GridPoint& b = pts.back();
        if (std::fabs(b.x - p.x) < 1e-12 && std::fabs(b.y - p.y) < 1e-12) return;
        pts.push_back(p);
        kinds.push_back(k);
    };
    auto hop = [&](bool hug, int edge, int dir, const GridPoint& entry, const GridPoint& from, const GridPoint& q) {
        if constexpr (Geo::kHug) {
            if (hug) {
                SearchNode tmp;
                tmp.hug = true;
                tmp.edge = edge;
                tmp.dir = dir;
                tmp.entry = entry;
                double th = Impl::dep_of(*this, tmp, q);
                add({static_cast<double>(edge), g_.y_of_lon(th)}, SegmentKind::GreatCircle);
                add(entry, SegmentKind::ParallelArc);
                add(from, SegmentKind::GreatCircle);
                return;
            }
        }
        add(from, SegmentKind::GreatCircle);
    };
    hop(tn.hug, tn.edge, tn.dir, tn.entry, roots_[tn.root].p, t_);
    int ri = tn.root;
    while (roots_[ri].parent >= 0) {
        const RootRecord& r = roots_[ri];
        hop(r.hug, r.edge, r.dir, r.entry, roots_[r.parent].p, r.p);
        ri = r.parent;
    }
    std::reverse(pts.begin(), pts.end());
    std::reverse(kinds.begin(), kinds.end());
    RouteRecord rr;
    rr.points = pts;
    rr.segment_kinds = kinds;
    rr.planar = !Geo::kHug;
    for (auto& p : pts) rr.turning_points.push_back(vertex_to_sphere(g_, p));
    for (size_t i = 0; i < kinds.size(); ++i) {
        if constexpr (Geo::kHug) {
            if (kinds[i] == SegmentKind::ParallelArc) {
                rr.length += geo_->hug_len(static_cast<int>(std::lround(pts[i].x)), geo_->lon(pts[i].y), geo_->lon(pts[i + 1].y));
                continue;
            }
        }
        rr.length += geo_->dist(pts[i], pts[i + 1]);
    }
    return rr;
}

template <class Geo>
RouteRecord IntervalSearch<Geo>::run(const GridPoint& s, const GridPoint& t)
{
    auto t0 = std::chrono::steady_clock::now();
    for (const GridPoint* p : {&s, &t}) {
        if (!is_int(p->y, 1e-12) || !point_traversable(g_, *p))
            throw InvalidEndpoint("endpoint is not a traversable point on a row");
    }
    reset(t);
    RouteRecord rr;
    if (s == t) {
        rr.points = {s};
        rr.turning_points = {vertex_to_sphere(g_, s)};
        rr.planar = !Geo::kHug;
        return rr;
    }
    struct Entry {
        double f, g;
        long seq;
        size_t idx;
    };
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.seq > b.seq;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
    std::vector<SearchNode> pool;
    std::unordered_map<std::uint64_t, double> closed;
    long seq = 0, expanded = 0, generated = 0;

    auto node_key = [&](const SearchNode& n) {
        std::uint64_t h = static_cast<std::uint64_t>(n.kind);
        const GridPoint& r = roots_[n.root].p;
        for (std::uint64_t v : {static_cast<std::uint64_t>(n.iv.row), q8(n.iv.lo), q8(n.iv.hi),
                                static_cast<std::uint64_t>(n.iv.lo_closed * 2 + n.iv.hi_closed), q8(r.x), q8(r.y),
                                static_cast<std::uint64_t>(n.hug), static_cast<std::uint64_t>(n.edge),
                                static_cast<std::uint64_t>(n.dir + 2), q8(n.entry.y)})
            h = mix(h, v);
        return h;
    };
    auto stale = [&](const SearchNode& n) {
        const RootRecord& r = roots_[n.root];
        if (!is_int(r.p.x, 1e-12)) return false;
        auto it = best_root_g_.find(vkey(std::lround(r.p.x), std::lround(r.p.y)));
        return it != best_root_g_.end() && it->second < r.g - 1e-12 * std::max(1.0, r.g);
    };
    auto first_visit = [&](const SearchNode& n) {
        auto key = node_key(n);
        auto it = closed.find(key);
        if (it != closed.end() && it->second <= n.g + 1e-12 * std::max(1.0, n.g)) return false;
        closed[key] = n.g;
        return true;
    };

    std::vector<SearchNode> stack;
    auto admit = [&](std::vector<SearchNode>& succ) {
        for (auto& c : succ) {
            if (c.kind == NodeKind::Flat && c.terminal) continue;
            ++generated;
            if (c.kind != NodeKind::Target) {
                if (stale(c)) continue;
                if (is_intermediate(c)) {
                    stack.push_back(c);
                    continue;
                }
            }
            pool.push_back(c);
            open.push({c.f, c.g, seq++, pool.size() - 1});
        }
    };
    auto drain = [&] {
        while (!stack.empty()) {
            SearchNode n = stack.back();
            stack.pop_back();
            if (!first_visit(n)) continue;
            ++expanded;
            auto succ = successors(n);
            admit(succ);
        }
    };

    auto first = start_successors(s);
    admit(first);
    drain();
    while (!open.empty()) {
        Entry e = open.top();
        open.pop();
        SearchNode n = pool[e.idx];
        if (n.kind == NodeKind::Target) {
            rr = path_to(n);
            rr.expanded_nodes = expanded;
            rr.generated_nodes = generated;
            rr.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
            return rr;
        }
        if (stale(n) || !first_visit(n)) continue;
        ++expanded;
        auto succ = successors(n);
        admit(succ);
        drain();
    }
    throw NoPath();
}

template class IntervalSearch<PlanarGeo>;
template class IntervalSearch<SphereGeo>;

} // namespace sanya
