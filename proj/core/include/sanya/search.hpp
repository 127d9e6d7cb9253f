#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sanya/geom.hpp"
#include "sanya/grid.hpp"

namespace sanya {

class NoPath : public std::runtime_error {
public:
    NoPath() : std::runtime_error("no path between source and target") {}
};

class InvalidEndpoint : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SegmentKind { GreatCircle, ParallelArc };

struct RouteRecord {
    std::vector<GridPoint> points;           // grid coordinates of the turning points
    std::vector<SpherePoint> turning_points;
    std::vector<SegmentKind> segment_kinds;  // one per consecutive pair
    double length = 0;                       // km, or grid units for a planar search
    bool planar = false;
    bool legal = true;
    long expanded_nodes = 0;
    long generated_nodes = 0;
    long tiles_crossed = 0;
    long long elapsed_ns = 0;
};

struct SearchConfig {
    SphereConfig sphere;
    bool interval_heuristic = false;   // spherical only; planar search always uses it
    double tol = 1e-9;                 // grid units
};

enum class NodeKind { Flat, Cone, Adjoint, Target };

// A search node.  For adjoint nodes the path runs root -> entry (great
// circle), along the parallel x = edge in row direction dir, then departs
// tangentially to reach the interval.  g is the cost at the root, or at the
// entry point for adjoint nodes.
struct SearchNode {
    Interval iv;
    int root = -1;
    NodeKind kind = NodeKind::Cone;
    bool hug = false;
    int edge = 0;
    int dir = 0;
    GridPoint entry;
    double g = 0;
    double f = 0;
    bool terminal = false;
};

struct RootRecord {
    GridPoint p;
    double g = 0;
    int parent = -1;
    bool hug = false;
    int edge = 0;
    int dir = 0;
    GridPoint entry;
};

struct PlanarGeo;
struct SphereGeo;

template <class Geo>
class IntervalSearch {
public:
    IntervalSearch(const GridMap& g, const SearchConfig& cfg = {});

    RouteRecord run(const GridPoint& s, const GridPoint& t);

    // lower level access, used by the fixture tests
    void reset(const GridPoint& t);
    int add_root(const GridPoint& p, double g, int parent = -1);
    const RootRecord& root(int i) const { return roots_[i]; }
    std::vector<SearchNode> start_successors(const GridPoint& s);
    std::vector<SearchNode> successors(const SearchNode& n);
    bool is_intermediate(const SearchNode& n) const;
    double cost_to(const SearchNode& n, const GridPoint& q) const;
    RouteRecord path_to(const SearchNode& target_node) const;
    SearchNode make_node(NodeKind kind, int root, int row, double lo, double hi, bool lo_closed, bool hi_closed) const;

    const Geo& geo() const { return *geo_; }
    ~IntervalSearch();

private:
    struct Impl;
    const GridMap& g_;
    SearchConfig cfg_;
    Geo* geo_;
    GridPoint t_;
    std::vector<RootRecord> roots_;
    std::unordered_map<std::int64_t, double> best_root_g_;
    std::vector<SearchNode>* out_ = nullptr;
    friend struct Impl;
};

using SphericalSearch = IntervalSearch<SphereGeo>;
using PlanarSearch = IntervalSearch<PlanarGeo>;

// Spherical legality of a route: blocked cells per segment, in order.
struct Violation {
    int segment;
    CellRef cell;
};
std::vector<Violation> legality_check(const RouteRecord& r, const GridMap& g);
long count_tiles_crossed(const RouteRecord& r, const GridMap& g);

} // namespace sanya
