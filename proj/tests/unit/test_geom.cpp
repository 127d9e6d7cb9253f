#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "sanya/geom.hpp"

using namespace sanya;

namespace {

SpherePoint deg(double lon, double lat) { return {deg2rad(lon), deg2rad(lat)}; }

double acos_oracle(const SpherePoint& p, const SpherePoint& q)
{
    double c = std::sin(p.lat) * std::sin(q.lat) + std::cos(p.lat) * std::cos(q.lat) * std::cos(q.lon - p.lon);
    return std::acos(std::fmax(-1.0, std::fmin(1.0, c)));
}

// meridian plane intersected with the plane of the circle, picked on the
// meridian's own half
double plane_oracle(const SpherePoint& p, const SpherePoint& q, double lon)
{
    Vec3 n = cross(to_unit(p), to_unit(q));
    Vec3 m = {-std::sin(lon), std::cos(lon), 0};
    Vec3 d = cross(n, m);
    if (d[0] * std::cos(lon) + d[1] * std::sin(lon) < 0) d = {-d[0], -d[1], -d[2]};
    return std::atan2(d[2], std::hypot(d[0], d[1]));
}

double golden_min(const std::function<double(double)>& f, double a, double b)
{
    const double r = (std::sqrt(5.0) - 1) / 2;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        if (fc < fd) { b = d; d = c; fd = fc; c = b - r * (b - a); fc = f(c); }
        else { a = c; c = d; fc = fd; d = a + r * (b - a); fd = f(d); }
    }
    return 0.5 * (a + b);
}

} // namespace

TEST_CASE("central_angle basics")
{
    CHECK(central_angle(deg(0, 0), deg(0, 0)) == 0.0);
    CHECK(central_angle(deg(0, 0), deg(90, 0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
    auto p = deg(10, 40), q = deg(60, 55);
    CHECK(std::fabs(central_angle(p, q) - std::acos(dot(to_unit(p), to_unit(q)))) < 1e-12);
}

TEST_CASE("central_angle symmetry and oracle on random pairs")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lon(-kPi, kPi), z(-1, 1);
    double worst = 0;
    for (int n = 0; n < 20000; ++n) {
        SpherePoint p{lon(rng), std::asin(z(rng))}, q{lon(rng), std::asin(z(rng))};
        double a = central_angle(p, q);
        REQUIRE(a == central_angle(q, p));
        worst = std::fmax(worst, std::fabs(a - acos_oracle(p, q)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("gc_distance")
{
    SphereConfig cfg;
    double d = gc_distance(deg(0, 0), {kPi - 1e-9, 0}, cfg);
    CHECK(d == doctest::Approx(kPi * 6371.0).epsilon(1e-8));
    SphereConfig unit{1.0};
    CHECK(gc_distance(deg(0, 0), deg(90, 0), unit) == doctest::Approx(kPi / 2));
    // triangle inequality
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lon(-kPi, kPi), z(-1, 1);
    for (int n = 0; n < 2000; ++n) {
        SpherePoint a{lon(rng), std::asin(z(rng))}, b{lon(rng), std::asin(z(rng))}, c{lon(rng), std::asin(z(rng))};
        CHECK(gc_distance(a, c, cfg) <= gc_distance(a, b, cfg) + gc_distance(b, c, cfg) + 4 * 1e-12 * cfg.radius_km);
    }
}

TEST_CASE("lat_at_lon bulge direction and equator")
{
    CHECK(lat_at_lon(deg(-10, 30), deg(10, 30), 0) > deg2rad(30));
    CHECK(lat_at_lon(deg(-10, -30), deg(10, -30), 0) < deg2rad(-30));
    CHECK(std::fabs(lat_at_lon(deg(-10, 0), deg(10, 0), deg2rad(3))) < 1e-15);
}

TEST_CASE("lat_at_lon errors")
{
    auto code = [](auto f) {
        try { f(); } catch (const GeomError& e) { return static_cast<int>(e.code()); }
        return -1;
    };
    CHECK(code([] { lat_at_lon(deg(5, 10), deg(5, 40), deg2rad(5)); }) == static_cast<int>(GeomErrc::MeridianDegenerate));
    CHECK(code([] { lat_at_lon(deg(0, 10), deg(5, 40), deg2rad(7)); }) == static_cast<int>(GeomErrc::OutOfArc));
}

TEST_CASE("lat_at_lon against the plane intersection oracle")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lon(-3.0, 3.0), lat(-1.4, 1.4), f(0.01, 0.99);
    double worst = 0, trip = 0;
    for (int n = 0; n < 20000; ++n) {
        SpherePoint p{lon(rng), lat(rng)}, q{lon(rng), lat(rng)};
        if (std::fabs(p.lon - q.lon) < 1e-3 || std::fabs(p.lon - q.lon) > 3.0) continue;
        double l = p.lon + f(rng) * (q.lon - p.lon);
        double a = lat_at_lon(p, q, l);
        worst = std::fmax(worst, std::fabs(a - plane_oracle(p, q, l)));
        Vec3 n3 = cross(to_unit(p), to_unit(q));
        trip = std::fmax(trip, std::fabs(dot(n3, to_unit({l, a}))) / norm(n3));
    }
    CHECK(worst < 1e-12);
    CHECK(trip < 1e-12);
}

TEST_CASE("gc_max_lat_on_arc")
{
    auto e = gc_max_lat_on_arc(deg(0, 30), deg(20, 30));
    CHECK(e.poleward == 1);
    CHECK(e.lat > deg2rad(30));

    auto p = deg(0, 10), q = deg(40, 50);
    auto m = gc_max_lat_on_arc(p, q);
    // dense sampling: latitude along the arc never exceeds the endpoints
    double top = -10;
    for (int k = 0; k <= 100000; ++k) top = std::fmax(top, interpolate_gc(p, q, k / 100000.0).lat);
    CHECK(top <= std::fmax(p.lat, q.lat) + 1e-12);
    CHECK(m.poleward == 0);

    auto z = gc_max_lat_on_arc(deg(-20, 0), deg(30, 0));
    CHECK(z.poleward == 0);
    CHECK(z.lat == 0.0);

    auto s = gc_max_lat_on_arc(deg(0, -30), deg(20, -30));
    CHECK(s.poleward == -1);
    CHECK(s.lat < deg2rad(-30));
    // apex value by sampling
    double lo = 0;
    for (int k = 0; k <= 100000; ++k) lo = std::fmin(lo, interpolate_gc(deg(0, -30), deg(20, -30), k / 100000.0).lat);
    CHECK(std::fabs(lo - s.lat) < 1e-9);
}

TEST_CASE("adjoint_departure closed forms")
{
    SpherePoint root = deg(0, 50);
    auto x = adjoint_departure(root, deg2rad(50), deg(20, 50));
    CHECK(x.lon == doctest::Approx(deg2rad(20)));
    x = adjoint_departure(deg(-100, 45), deg2rad(45), deg(10, 0));
    CHECK(x.lon == doctest::Approx(deg2rad(10) - kPi / 2).epsilon(1e-14));
}

TEST_CASE("adjoint_departure equals the golden-section argmin over the parallel")
{
    double phi1 = deg2rad(50), phi2 = deg2rad(30), th2 = deg2rad(20);
    SpherePoint t{th2, phi2};
    auto x = adjoint_departure(deg(-60, 50), phi1, t);
    CHECK(rad2deg(x.lon) == doctest::Approx(20 - rad2deg(std::acos(std::tan(phi2) / std::tan(phi1)))).epsilon(1e-13));
    // x is where the great circle towards t leaves heading along the
    // parallel: the poleward component of the direction to t vanishes.
    Vec3 tv = to_unit(t);
    auto g = [&](double th) {
        Vec3 north = {-std::sin(phi1) * std::cos(th), -std::sin(phi1) * std::sin(th), std::cos(phi1)};
        return std::fabs(dot(tv, north));
    };
    double am = golden_min(g, th2 - kPi, th2);
    CHECK(std::fabs(am - x.lon) < 1e-9);
    // tangency: nearby points on the circle stay equatorward of the parallel
    for (double d : {1e-3, -1e-3, 1e-2}) {
        double l = lat_at_lon(x, t, x.lon + std::fabs(d));
        CHECK(l <= phi1);
    }
}

TEST_CASE("adjoint_departure errors")
{
    auto code = [](auto f) {
        try { f(); } catch (const GeomError& e) { return static_cast<int>(e.code()); }
        return -1;
    };
    CHECK(code([] { adjoint_departure(deg(0, 30), deg2rad(30), deg(10, 40)); }) == static_cast<int>(GeomErrc::DomainError));
    CHECK(code([] { adjoint_departure(deg(0, 90), kPi / 2, deg(10, 40)); }) == static_cast<int>(GeomErrc::PoleSingularity));
}

TEST_CASE("adjoint_path_length reductions")
{
    SphereConfig cfg;
    auto r = deg(0, 40), t = deg(30, 20);
    CHECK(adjoint_path_length(r, r, t, cfg) == doctest::Approx(gc_distance(r, t, cfg)));
    auto d = deg(25, 40);
    CHECK(adjoint_path_length(r, d, d, cfg) == doctest::Approx(cfg.radius_km * std::cos(deg2rad(40)) * deg2rad(25)));
}

TEST_CASE("adjoint_path_length against a polyline dynamic programme")
{
    // Edge at phi1 with obstacle poleward; the feasible region is lat <= phi1.
    // Discretise the parallel into 2000 points and take the best
    // hug-then-leave polyline: arc to point k then straight gc to p.
    SphereConfig cfg;
    double phi1 = deg2rad(40);
    SpherePoint r{deg2rad(0), phi1}, p{deg2rad(35), deg2rad(38)};
    auto x = adjoint_departure(r, phi1, p);
    double formula = adjoint_path_length(r, x, p, cfg);
    double best = 1e300;
    for (int k = 0; k <= 2000; ++k) {
        SpherePoint d{p.lon * k / 2000.0, phi1};
        // the leaving arc must not go poleward of the edge
        if (gc_max_lat_on_arc(d, p).poleward == 1 && gc_max_lat_on_arc(d, p).lat > phi1 + 1e-12) continue;
        best = std::fmin(best, adjoint_path_length(r, d, p, cfg));
    }
    CHECK(std::fabs(best - formula) / formula < 1e-3);
    CHECK(best >= formula - 1e-9);
}

TEST_CASE("gnomonic projection")
{
    auto a = gnomonic_project(deg(0, 35), GnomonicCenter::NorthPole);
    CHECK(a[0] == 0.0);
    auto b = gnomonic_project(deg(0, 0), GnomonicCenter::Equator);
    CHECK(b[0] == 0.0);
    CHECK(b[1] == 0.0);
    CHECK_THROWS_AS(gnomonic_project(deg(0, -5), GnomonicCenter::NorthPole), GeomError);
    CHECK_THROWS_AS(gnomonic_project(deg(120, 5), GnomonicCenter::Equator), GeomError);

    // great circles map to straight lines: least-squares fit residual
    for (auto c : {GnomonicCenter::NorthPole, GnomonicCenter::Equator}) {
        SpherePoint p = c == GnomonicCenter::NorthPole ? deg(-40, 30) : deg(-40, -20);
        SpherePoint q = c == GnomonicCenter::NorthPole ? deg(50, 60) : deg(50, 35);
        std::vector<std::array<double, 2>> pts;
        for (int k = 0; k < 64; ++k) pts.push_back(gnomonic_project(interpolate_gc(p, q, k / 63.0), c));
        double mx = 0, my = 0;
        for (auto& v : pts) { mx += v[0]; my += v[1]; }
        mx /= 64; my /= 64;
        double sxx = 0, sxy = 0, syy = 0;
        for (auto& v : pts) {
            sxx += (v[0] - mx) * (v[0] - mx); sxy += (v[0] - mx) * (v[1] - my); syy += (v[1] - my) * (v[1] - my);
        }
        // principal direction
        double th = 0.5 * std::atan2(2 * sxy, sxx - syy);
        double nx = -std::sin(th), ny = std::cos(th), worst = 0;
        for (auto& v : pts) worst = std::fmax(worst, std::fabs((v[0] - mx) * nx + (v[1] - my) * ny));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("interpolate_gc")
{
    auto p = deg(10, 20), q = deg(50, -10);
    auto a = interpolate_gc(p, q, 0), b = interpolate_gc(p, q, 1);
    CHECK(a.lon == p.lon);
    CHECK(b.lat == q.lat);
    auto m = interpolate_gc(deg(-20, 0), deg(40, 0), 0.5);
    CHECK(rad2deg(m.lon) == doctest::Approx(10).epsilon(1e-12));
    CHECK(std::fabs(m.lat) < 1e-15);
    CHECK_THROWS_AS(interpolate_gc(deg(0, 0), deg(-180, 0), 0.5), GeomError);
}
