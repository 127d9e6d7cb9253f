#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sanya {

constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg2rad(double d) { return d * (kPi / 180.0); }
inline constexpr double rad2deg(double r) { return r * (180.0 / kPi); }

// Angles in radians.  lon is the row axis, lat the x axis.
struct SpherePoint {
    double lon = 0;
    double lat = 0;
};

struct SphereConfig {
    double radius_km = 6371.0;
    double angular_tolerance = 1e-12;
    double snap_tolerance = 1e-9;
};

enum class GeomErrc {
    MeridianDegenerate,
    OutOfArc,
    AntipodalPair,
    DomainError,
    PoleSingularity,
    OutsideHemisphere,
};

class GeomError : public std::domain_error {
public:
    GeomError(GeomErrc c, const std::string& what) : std::domain_error(what), code_(c) {}
    GeomErrc code() const noexcept { return code_; }
private:
    GeomErrc code_;
};

using Vec3 = std::array<double, 3>;

inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a);

Vec3 to_unit(const SpherePoint& p);
SpherePoint from_unit(const Vec3& v);

double central_angle(const SpherePoint& p, const SpherePoint& q);
double gc_distance(const SpherePoint& p, const SpherePoint& q, const SphereConfig& cfg = {});

// latitude where the great circle through p and q meets meridian lon
double lat_at_lon(const SpherePoint& p, const SpherePoint& q, double lon);

struct LatExtreme {
    double lat;
    int poleward;   // +1 bulges north, -1 south, 0 monotone
};
LatExtreme gc_max_lat_on_arc(const SpherePoint& p, const SpherePoint& q);

SpherePoint adjoint_departure(const SpherePoint& root, double edge_lat, const SpherePoint& target);
double adjoint_path_length(const SpherePoint& root, const SpherePoint& departure,
                           const SpherePoint& target, const SphereConfig& cfg = {});

enum class GnomonicCenter { NorthPole, Equator };
std::array<double, 2> gnomonic_project(const SpherePoint& p, GnomonicCenter c);

SpherePoint interpolate_gc(const SpherePoint& p, const SpherePoint& q, double fraction);

// length of the parallel arc at latitude lat between two longitudes
inline double parallel_arc_length(double lat, double lon0, double lon1, const SphereConfig& cfg = {})
{
    double d = lon1 - lon0;
    return cfg.radius_km * std::cos(lat) * (d < 0 ? -d : d);
}

} // namespace sanya
