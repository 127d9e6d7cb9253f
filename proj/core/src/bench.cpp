#include "sanya/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "sanya/anya_core.hpp"
#include "sanya/sanya.hpp"

namespace sanya {

GridMap gen_random_map(int w, int h, double fill, std::uint64_t seed, MapBox box)
{
    GridMap g(w, h, box);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution b(fill);
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) g.set_blocked(i, j, b(rng));
    return g;
}

InstanceSet make_instances(const GridMap& g, const std::string& map_id, int count, std::uint64_t seed)
{
    InstanceSet set{map_id, seed, {}};
    std::vector<std::pair<int, int>> free;
    for (int j = 0; j < g.height(); ++j)
        for (int i = 0; i < g.width(); ++i)
            if (!g.blocked(i, j)) free.push_back({i, j});
    if (free.size() < 2) return set;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, free.size() - 1);
    auto point = [&] {
        auto [i, j] = free[pick(rng)];
        return GridPoint{i + 0.5, static_cast<double>(j)};
    };
    while (static_cast<int>(set.pairs.size()) < count) {
        GridPoint s = point(), t = point();
        if (s == t) continue;
        // exactly half way round has no unique minor arc
        if (std::fabs(std::fabs(g.lon_of_y(s.y) - g.lon_of_y(t.y)) - kPi) < 1e-9) continue;
        set.pairs.push_back({s, t});
    }
    return set;
}

StatRow stat_row(std::vector<double> v)
{
    StatRow r;
    r.n = static_cast<int>(v.size());
    if (v.empty()) return r;
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
        double h = (v.size() - 1) * p;
        size_t lo = static_cast<size_t>(std::floor(h));
        size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (h - lo) * (v[hi] - v[lo]);
    };
    r.min = v.front();
    r.max = v.back();
    r.q1 = q(0.25);
    r.median = q(0.5);
    r.q3 = q(0.75);
    double sum = 0, less = 0;
    for (double x : v) {
        sum += x;
        if (x < 1 - 1e-9) ++less;
    }
    r.mean = sum / v.size();
    double ss = 0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.stdev = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0;
    r.pct_less = 100.0 * less / v.size();
    return r;
}

namespace {

template <class F>
long long timed(F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
}

void run_one(const GridMap& g, InstanceResult& out, const BenchConfig& cfg)
{
    const Instance& in = out.inst;
    out.s = vertex_to_sphere(g, in.s);
    out.t = vertex_to_sphere(g, in.t);
    RouteRecord sr, er;
    try {
        out.spherical.et_ns = timed([&] { sr = SphericalSearch(g, cfg.search).run(in.s, in.t); });
        out.euclid.et_ns = timed([&] { er = PlanarSearch(g, cfg.search).run(in.s, in.t); });
    } catch (const NoPath&) {
        return;
    }
    out.spherical.found = out.euclid.found = true;
    out.spherical.length_km = sr.length;
    out.spherical.legal = legality_check(sr, g).empty();
    out.spherical.ct = count_tiles_crossed(sr, g);
    out.euclid.length_km = er.length;   // grid units, not km
    out.euclid.legal = true;
    if (cfg.recipe1) {
        RouteRecord r1 = recipe1(er, g, cfg.search.sphere);
        out.recipe1 = {true, r1.length, out.euclid.et_ns, r1.tiles_crossed, r1.legal};
    }
    if (cfg.recipe2) {
        RouteRecord r2 = recipe2(er, g, cfg.step_arcsec, cfg.search.sphere);
        out.recipe2 = {true, r2.length, out.euclid.et_ns, r2.tiles_crossed, r2.legal};
    }
}

} // namespace

BenchResult run_benchmark(const std::vector<MapRef>& maps, int count, std::uint64_t seed, const BenchConfig& cfg)
{
    BenchResult res;
    std::vector<const GridMap*> owner;
    for (size_t m = 0; m < maps.size(); ++m) {
        InstanceSet set = make_instances(*maps[m].map, maps[m].id, count, seed + m);
        for (auto& p : set.pairs) {
            InstanceResult r;
            r.map_id = maps[m].id;
            r.seed = set.seed;
            r.inst = p;
            res.rows.push_back(r);
            owner.push_back(maps[m].map);
        }
    }
    int nt = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next++) < res.rows.size();) run_one(*owner[i], res.rows[i], cfg);
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < nt; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    std::vector<double> et1, rl1, ct1, et2, rl2, ct2;
    for (auto& r : res.rows) {
        if (!r.spherical.found) {
            ++res.skipped;
            continue;
        }
        double et = r.euclid.et_ns > 0 ? static_cast<double>(r.spherical.et_ns) / r.euclid.et_ns : 1;
        if (r.recipe1.found) {
            et1.push_back(et);
            rl1.push_back(r.recipe1.length_km > 0 ? r.spherical.length_km / r.recipe1.length_km : 1);
            ct1.push_back(r.recipe1.ct > 0 ? static_cast<double>(r.spherical.ct) / r.recipe1.ct : 1);
            res.illegal1 += !r.recipe1.legal;
        }
        if (r.recipe2.found) {
            et2.push_back(et);
            rl2.push_back(r.recipe2.length_km > 0 ? r.spherical.length_km / r.recipe2.length_km : 1);
            ct2.push_back(r.recipe2.ct > 0 ? static_cast<double>(r.spherical.ct) / r.recipe2.ct : 1);
            res.illegal2 += !r.recipe2.legal;
        }
    }
    res.et1 = stat_row(et1);
    res.rl1 = stat_row(rl1);
    res.ct1 = stat_row(ct1);
    res.et2 = stat_row(et2);
    res.rl2 = stat_row(rl2);
    res.ct2 = stat_row(ct2);
    return res;
}

void write_instances_csv(const BenchResult& r, std::ostream& os)
{
    os << "map,seed,s,t,algo,length_km,et_ns,ct,legal\n";
    os.precision(12);
    for (auto& row : r.rows) {
        if (!row.spherical.found) continue;
        auto pt = [](const SpherePoint& p) {
            return std::to_string(p.lat * 180 / kPi) + " " + std::to_string(p.lon * 180 / kPi);
        };
        auto line = [&](const char* algo, const RunResult& x) {
            if (!x.found) return;
            os << row.map_id << ',' << row.seed << ',' << pt(row.s) << ',' << pt(row.t) << ',' << algo << ','
               << x.length_km << ',' << x.et_ns << ',' << x.ct << ',' << (x.legal ? 1 : 0) << '\n';
        };
        line("spherical", row.spherical);
        line("recipe1", row.recipe1);
        line("recipe2", row.recipe2);
    }
}

void write_summary_csv(const BenchResult& r, std::ostream& os)
{
    os << "metric,recipe,n,pct_less,min,q1,median,mean,q3,max,stdev\n";
    os.precision(10);
    auto line = [&](const char* metric, int recipe, const StatRow& s) {
        if (s.n == 0) return;
        os << metric << ',' << recipe << ',' << s.n << ',' << s.pct_less << ',' << s.min << ',' << s.q1 << ','
           << s.median << ',' << s.mean << ',' << s.q3 << ',' << s.max << ',' << s.stdev << '\n';
    };
    line("et_ratio", 1, r.et1);
    line("rl_ratio", 1, r.rl1);
    line("ct_ratio", 1, r.ct1);
    line("et_ratio", 2, r.et2);
    line("rl_ratio", 2, r.rl2);
    line("ct_ratio", 2, r.ct2);
}

} // namespace sanya
