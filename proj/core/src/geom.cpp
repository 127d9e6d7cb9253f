#include "sanya/geom.hpp"

#include <algorithm>
#include <cmath>

namespace sanya {

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 to_unit(const SpherePoint& p)
{
    double cl = std::cos(p.lat);
    return {cl * std::cos(p.lon), cl * std::sin(p.lon), std::sin(p.lat)};
}

SpherePoint from_unit(const Vec3& v)
{
    double lon = std::atan2(v[1], v[0]);
    if (lon >= kPi) lon -= 2 * kPi;
    return {lon, std::atan2(v[2], std::hypot(v[0], v[1]))};
}

double central_angle(const SpherePoint& p, const SpherePoint& q)
{
    // atan2 form; stays accurate near 0 and near pi
    Vec3 u = to_unit(p), v = to_unit(q);
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

double gc_distance(const SpherePoint& p, const SpherePoint& q, const SphereConfig& cfg)
{
    return cfg.radius_km * central_angle(p, q);
}

double lat_at_lon(const SpherePoint& p, const SpherePoint& q, double lon)
{
    if (p.lon == q.lon)
        throw GeomError(GeomErrc::MeridianDegenerate, "lat_at_lon: points share a meridian");
    double lo = std::min(p.lon, q.lon), hi = std::max(p.lon, q.lon);
    if (!(lon > lo && lon < hi))
        throw GeomError(GeomErrc::OutOfArc, "lat_at_lon: longitude outside the arc");
    Vec3 n = cross(to_unit(p), to_unit(q));
    if (n[2] == 0)
        throw GeomError(GeomErrc::MeridianDegenerate, "lat_at_lon: great circle is a meridian");
    double a = n[0] * std::cos(lon) + n[1] * std::sin(lon);
    return std::atan(-a / n[2]);
}

LatExtreme gc_max_lat_on_arc(const SpherePoint& p, const SpherePoint& q)
{
    Vec3 u = to_unit(p), v = to_unit(q);
    Vec3 n = cross(u, v);
    double nn = norm(n);
    if (nn < 1e-15) {
        if (dot(u, v) < 0) throw GeomError(GeomErrc::AntipodalPair, "gc_max_lat_on_arc: antipodal pair");
        return {std::fabs(p.lat) >= std::fabs(q.lat) ? p.lat : q.lat, 0};
    }
    for (double& c : n) c /= nn;
    double h = std::hypot(n[0], n[1]);
    if (h < 1e-15) return {0.0, 0};   // equator
    // north apex of the circle
    Vec3 a = {-n[2] * n[0], -n[2] * n[1], 1 - n[2] * n[2]};
    double an = norm(a);
    for (double& c : a) c /= an;
    double apex = std::acos(std::min(1.0, std::fabs(n[2])));
    auto inside = [&](const Vec3& w) {
        return dot(cross(u, w), n) > 1e-15 && dot(cross(w, v), n) > 1e-15;
    };
    if (inside(a)) return {apex, +1};
    if (inside(Vec3{-a[0], -a[1], -a[2]})) return {-apex, -1};
    return {std::fabs(p.lat) >= std::fabs(q.lat) ? p.lat : q.lat, 0};
}

SpherePoint adjoint_departure(const SpherePoint& root, double edge_lat, const SpherePoint& target)
{
    if (std::fabs(std::cos(edge_lat)) < 1e-15)
        throw GeomError(GeomErrc::PoleSingularity, "adjoint_departure: edge at a pole");
    double t1 = std::tan(edge_lat);
    if (t1 == 0)
        throw GeomError(GeomErrc::DomainError, "adjoint_departure: edge on the equator");
    double ratio = std::tan(target.lat) / t1;
    if (std::fabs(ratio) > 1 + 1e-15)
        throw GeomError(GeomErrc::DomainError, "adjoint_departure: no tangency point");
    ratio = std::clamp(ratio, -1.0, 1.0);
    double s = root.lon <= target.lon ? 1.0 : -1.0;
    return {target.lon - s * std::acos(ratio), edge_lat};
}

double adjoint_path_length(const SpherePoint& root, const SpherePoint& departure,
                           const SpherePoint& target, const SphereConfig& cfg)
{
    return parallel_arc_length(departure.lat, root.lon, departure.lon, cfg) +
           gc_distance(departure, target, cfg);
}

std::array<double, 2> gnomonic_project(const SpherePoint& p, GnomonicCenter c)
{
    double sl = std::sin(p.lat), cl = std::cos(p.lat);
    if (c == GnomonicCenter::NorthPole) {
        if (!(sl > 0)) throw GeomError(GeomErrc::OutsideHemisphere, "gnomonic: point not in northern hemisphere");
        return {cl * std::sin(p.lon) / sl, -cl * std::cos(p.lon) / sl};
    }
    double ct = std::cos(p.lon);
    if (!(cl * ct > 0)) throw GeomError(GeomErrc::OutsideHemisphere, "gnomonic: point outside equatorial hemisphere");
    return {std::tan(p.lon), std::tan(p.lat) / ct};
}

SpherePoint interpolate_gc(const SpherePoint& p, const SpherePoint& q, double fraction)
{
    Vec3 u = to_unit(p), v = to_unit(q);
    double sn = norm(cross(u, v)), cs = dot(u, v);
    if (sn < 1e-12 && cs < 0)
        throw GeomError(GeomErrc::AntipodalPair, "interpolate_gc: antipodal pair");
    if (fraction <= 0) return p;
    if (fraction >= 1) return q;
    double w = std::atan2(sn, cs);
    if (w < 1e-15) return p;
    double a = std::sin((1 - fraction) * w) / sn, b = std::sin(fraction * w) / sn;
    return from_unit({a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]});
}

} // namespace sanya
