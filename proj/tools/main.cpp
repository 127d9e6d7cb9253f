#include <glob.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sanya/anya_core.hpp"
#include "sanya/bench.hpp"
#include "sanya/sanya.hpp"

using namespace sanya;
using json = nlohmann::json;

namespace {

struct CliConfig {
    std::string map_path, format = "auto";
    int ncols = 0, nrows = 0;
    std::vector<double> box;   // lat_min lat_max lon_min lon_max, raw16 only
    std::vector<double> from, to;
    bool grid_coords = false;
    std::string algo = "spherical";
    int recipe = 1;
    double step_arcsec = 1;
    std::string out;
    std::string route_path;
    std::string maps_glob;
    std::vector<double> random;   // W H fill nmaps
    int count = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    double radius_km = 6371.0;
};

struct Failure {
    std::string msg;
};

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Failure{"cannot read " + path};
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

GridMap load_map(const std::string& path, std::string format, const CliConfig& cfg)
{
    if (format == "auto") {
        auto ext = std::filesystem::path(path).extension().string();
        format = ext == ".map" ? "movingai" : ext == ".asc" ? "esri" : "raw16";
    }
    std::string bytes = slurp(path);
    if (format == "movingai") return load_movingai(bytes);
    RasterOptions opt;
    if (format == "raw16") {
        opt.format = RasterFormat::RawI16;
        opt.ncols = cfg.ncols;
        opt.nrows = cfg.nrows;
        if (cfg.box.size() == 4) opt.box = {cfg.box[0], cfg.box[1], cfg.box[2], cfg.box[3]};
    } else if (format != "esri") {
        throw Failure{"unknown map format " + format};
    }
    return load_raster(bytes, opt);
}

// nearest traversable row point within one cell
GridPoint resolve(const GridMap& g, const std::vector<double>& v, bool grid_coords)
{
    if (v.size() != 2) throw Failure{"endpoints take two numbers"};
    GridPoint p = grid_coords ? GridPoint{v[0], v[1]} : sphere_to_grid(g, {deg2rad(v[1]), deg2rad(v[0])});
    if (point_traversable(g, {p.x, std::round(p.y)}) && std::fabs(p.y - std::round(p.y)) < 1e-9)
        return {p.x, std::round(p.y)};
    std::optional<GridPoint> best;
    double bd = 1e300;
    for (int dy = -1; dy <= 2; ++dy) {
        double y = std::floor(p.y) + dy;
        for (int dx = -2; dx <= 2; ++dx)
            for (double off : {0.0, 0.5}) {
                GridPoint q{std::floor(p.x) + dx + off, y};
                double d = std::hypot(q.x - p.x, q.y - p.y);
                if (d <= std::sqrt(2.0) + 1e-9 && d < bd && point_traversable(g, q)) {
                    bd = d;
                    best = q;
                }
            }
    }
    if (!best) throw Failure{"no traversable point within one cell of an endpoint"};
    return *best;
}

json lonlat(const SpherePoint& p) { return json::array({rad2deg(p.lon), rad2deg(p.lat)}); }

// LineString coordinates, densified every 0.1 degree for display; kinds
// per coordinate pair so validate can tell parallels from great circles
void densify(const RouteRecord& r, json& coords, json& kinds)
{
    const double step = deg2rad(0.1);
    if (r.turning_points.empty()) return;
    coords.push_back(lonlat(r.turning_points[0]));
    for (size_t i = 0; i + 1 < r.turning_points.size(); ++i) {
        const SpherePoint &a = r.turning_points[i], &b = r.turning_points[i + 1];
        bool par = i < r.segment_kinds.size() && r.segment_kinds[i] == SegmentKind::ParallelArc;
        double span = par ? std::fabs(b.lon - a.lon) : central_angle(a, b);
        int n = std::max(1, static_cast<int>(std::ceil(span / step)));
        for (int k = 1; k <= n; ++k) {
            double f = static_cast<double>(k) / n;
            SpherePoint m = k == n ? b : par ? SpherePoint{a.lon + f * (b.lon - a.lon), a.lat} : interpolate_gc(a, b, f);
            coords.push_back(lonlat(m));
            kinds.push_back(par ? "parallel" : "gc");
        }
    }
}

json feature(const std::string& algo, const RouteRecord& r, long long et_ns)
{
    json coords = json::array(), kinds = json::array();
    densify(r, coords, kinds);
    return {{"type", "Feature"},
            {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
            {"properties", {{"algo", algo}, {"length_km", r.length}, {"legal", r.legal}, {"et_ns", et_ns},
                            {"segment_kinds", kinds}}}};
}

int cmd_route(const CliConfig& cfg)
{
    GridMap g = load_map(cfg.map_path, cfg.format, cfg);
    GridPoint s = resolve(g, cfg.from, cfg.grid_coords), t = resolve(g, cfg.to, cfg.grid_coords);
    SearchConfig sc;
    sc.sphere.radius_km = cfg.radius_km;
    json fc = {{"type", "FeatureCollection"}, {"features", json::array()}};
    try {
        if (cfg.algo == "spherical" || cfg.algo == "both") {
            RouteRecord r = search(g, s, t, sc);
            fc["features"].push_back(feature("spherical", r, r.elapsed_ns));
        }
        if (cfg.algo == "euclidean" || cfg.algo == "both") {
            RouteRecord e = euclid_search(g, s, t, sc);
            RouteRecord r = cfg.recipe == 2 ? recipe2(e, g, cfg.step_arcsec, sc.sphere) : recipe1(e, g, sc.sphere);
            fc["features"].push_back(feature("euclidean_recipe" + std::to_string(cfg.recipe), r, e.elapsed_ns));
        }
    } catch (const NoPath&) {
        std::cerr << "no path\n";
        return 2;
    }
    for (auto& f : fc["features"])
        std::cerr << f["properties"]["algo"].get<std::string>() << ": " << f["properties"]["length_km"].get<double>()
                  << " km, legal " << f["properties"]["legal"].get<bool>() << "\n";
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << fc.dump() << "\n";
    } else {
        std::ofstream o(cfg.out);
        if (!o) throw Failure{"cannot write " + cfg.out};
        o << fc.dump() << "\n";
    }
    return 0;
}

int cmd_validate(const CliConfig& cfg)
{
    GridMap g = load_map(cfg.map_path, cfg.format, cfg);
    json doc;
    try {
        doc = json::parse(slurp(cfg.route_path));
    } catch (const json::exception& e) {
        throw Failure{std::string("malformed GeoJSON: ") + e.what()};
    }
    std::vector<json> lines;
    try {
        if (doc.at("type") == "FeatureCollection") {
            for (auto& f : doc.at("features")) lines.push_back(f);
        } else {
            lines.push_back(doc);
        }
        long total = 0;
        for (size_t fi = 0; fi < lines.size(); ++fi) {
            const json& f = lines[fi];
            const json& geom = f.contains("geometry") ? f.at("geometry") : f;
            if (geom.at("type") != "LineString") throw Failure{"only LineString routes can be validated"};
            RouteRecord r;
            for (auto& c : geom.at("coordinates")) {
                SpherePoint p{deg2rad(c.at(0).get<double>()), deg2rad(c.at(1).get<double>())};
                r.turning_points.push_back(p);
                r.points.push_back(sphere_to_grid(g, p));
            }
            json kinds = f.contains("properties") && f["properties"].contains("segment_kinds") ? f["properties"]["segment_kinds"]
                                                                                                : json::array();
            for (size_t i = 0; i + 1 < r.points.size(); ++i)
                r.segment_kinds.push_back(i < kinds.size() && kinds[i] == "parallel" ? SegmentKind::ParallelArc
                                                                                    : SegmentKind::GreatCircle);
            auto v = legality_check(r, g);
            total += static_cast<long>(v.size());
            for (auto& x : v)
                std::cout << "feature " << fi << " segment " << x.segment << ": blocked cell (" << x.cell.i << ", "
                          << x.cell.j << ")\n";
        }
        std::cout << (total == 0 ? "legal\n" : "illegal\n");
        return total == 0 ? 0 : 3;
    } catch (const json::exception& e) {
        throw Failure{std::string("malformed GeoJSON: ") + e.what()};
    }
}

void print_row(const char* name, int recipe, const StatRow& s)
{
    if (s.n == 0) return;
    std::printf("%-9s %d %6d %7.2f %8.3f %8.3f %8.3f %8.3f %8.3f %8.3f %8.3f\n", name, recipe, s.n, s.pct_less, s.min,
                s.q1, s.median, s.mean, s.q3, s.max, s.stdev);
}

int cmd_bench(const CliConfig& cfg)
{
    std::vector<GridMap> maps;
    std::vector<std::string> ids;
    if (!cfg.maps_glob.empty()) {
        glob_t gl{};
        if (glob(cfg.maps_glob.c_str(), 0, nullptr, &gl) != 0) {
            globfree(&gl);
            throw Failure{"no maps match " + cfg.maps_glob};
        }
        for (size_t i = 0; i < gl.gl_pathc; ++i) {
            maps.push_back(load_map(gl.gl_pathv[i], cfg.format, cfg));
            ids.push_back(std::filesystem::path(gl.gl_pathv[i]).filename().string());
        }
        globfree(&gl);
    }
    if (cfg.random.size() == 4) {
        for (int m = 0; m < static_cast<int>(cfg.random[3]); ++m) {
            maps.push_back(gen_random_map(static_cast<int>(cfg.random[0]), static_cast<int>(cfg.random[1]), cfg.random[2],
                                          cfg.seed * 1000 + m));
            ids.push_back("random_" + std::to_string(m));
        }
    }
    if (maps.empty()) throw Failure{"no maps given (--maps or --random)"};
    std::vector<MapRef> refs;
    for (size_t i = 0; i < maps.size(); ++i) refs.push_back({ids[i], &maps[i]});
    BenchConfig bc;
    bc.step_arcsec = cfg.step_arcsec;
    bc.threads = cfg.threads;
    bc.search.sphere.radius_km = cfg.radius_km;
    BenchResult r = run_benchmark(refs, cfg.count, cfg.seed, bc);

    std::filesystem::create_directories(cfg.out);
    std::ofstream inst(std::filesystem::path(cfg.out) / "instances.csv"), sum(std::filesystem::path(cfg.out) / "summary.csv");
    if (!inst || !sum) throw Failure{"cannot write into " + cfg.out};
    write_instances_csv(r, inst);
    write_summary_csv(r, sum);

    std::printf("%-9s %s %6s %7s %8s %8s %8s %8s %8s %8s %8s\n", "metric", "r", "n", "%less", "min", "q1", "median",
                "mean", "q3", "max", "stdev");
    print_row("et_ratio", 1, r.et1);
    print_row("rl_ratio", 1, r.rl1);
    print_row("ct_ratio", 1, r.ct1);
    print_row("rl_ratio", 2, r.rl2);
    print_row("ct_ratio", 2, r.ct2);
    std::printf("skipped (no path) %d, illegal recipe1 %d, recipe2 %d\n", r.skipped, r.illegal1, r.illegal2);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"optimal any-angle routes on the sphere over equirectangular grids"};
    app.require_subcommand(1);
    CliConfig cfg;
    auto map_opts = [&](CLI::App* c) {
        c->add_option("--map", cfg.map_path, "map file")->required();
        c->add_option("--format", cfg.format, "movingai, esri, raw16 or auto (by extension)")
            ->check(CLI::IsMember({"auto", "movingai", "esri", "raw16"}));
        c->add_option("--ncols", cfg.ncols, "raw16 width");
        c->add_option("--nrows", cfg.nrows, "raw16 height");
        c->add_option("--box", cfg.box, "raw16 extent: lat_min lat_max lon_min lon_max")->expected(4)->delimiter(',');
    };

    auto* route = app.add_subcommand("route", "compute a route and write GeoJSON");
    map_opts(route);
    route->add_option("--from", cfg.from, "LAT,LON in degrees (or x,y with --grid)")->required()->delimiter(',')->expected(2);
    route->add_option("--to", cfg.to, "LAT,LON in degrees (or x,y with --grid)")->required()->delimiter(',')->expected(2);
    route->add_flag("--grid", cfg.grid_coords, "endpoints are grid coordinates");
    route->add_option("--algo", cfg.algo)->check(CLI::IsMember({"spherical", "euclidean", "both"}));
    route->add_option("--recipe", cfg.recipe)->check(CLI::IsMember({1, 2}));
    route->add_option("--step", cfg.step_arcsec, "recipe 2 spacing in arc-seconds");
    route->add_option("--out", cfg.out, "output file, - for stdout");
    route->add_option("--radius-km", cfg.radius_km);

    auto* bench = app.add_subcommand("bench", "benchmark against the euclidean baseline");
    bench->add_option("--maps", cfg.maps_glob, "glob of map files");
    bench->add_option("--format", cfg.format)->check(CLI::IsMember({"auto", "movingai", "esri", "raw16"}));
    bench->add_option("--random", cfg.random, "W,H,FILL,NMAPS random maps")->expected(4)->delimiter(',');
    bench->add_option("--count", cfg.count, "instances per map");
    bench->add_option("--seed", cfg.seed);
    bench->add_option("--threads", cfg.threads, "0 for all cores");
    bench->add_option("--step", cfg.step_arcsec, "recipe 2 spacing in arc-seconds");
    bench->add_option("--out", cfg.out, "output directory")->required();
    bench->add_option("--radius-km", cfg.radius_km);

    auto* validate = app.add_subcommand("validate", "check a GeoJSON route against a map");
    map_opts(validate);
    validate->add_option("--route", cfg.route_path)->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*route) return cmd_route(cfg);
        if (*bench) return cmd_bench(cfg);
        if (*validate) return cmd_validate(cfg);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.msg << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
