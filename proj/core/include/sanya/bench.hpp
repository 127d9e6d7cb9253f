#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sanya/search.hpp"

namespace sanya {

GridMap gen_random_map(int w, int h, double fill, std::uint64_t seed, MapBox box = {});

struct Instance {
    GridPoint s, t;
};
struct InstanceSet {
    std::string map_id;
    std::uint64_t seed = 0;
    std::vector<Instance> pairs;
};
// row points under uniformly drawn traversable cells, with replacement
InstanceSet make_instances(const GridMap& g, const std::string& map_id, int count, std::uint64_t seed);

struct StatRow {
    int n = 0;
    double pct_less = 0;   // share of ratios below 1, in percent
    double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0, stdev = 0;
};
StatRow stat_row(std::vector<double> ratios);

struct BenchConfig {
    bool recipe1 = true;
    bool recipe2 = true;
    double step_arcsec = 1;
    int threads = 0;   // 0: hardware concurrency
    SearchConfig search;
};

struct RunResult {
    bool found = false;
    double length_km = 0;
    long long et_ns = 0;
    long ct = 0;
    bool legal = false;
};
struct InstanceResult {
    std::string map_id;
    std::uint64_t seed = 0;
    Instance inst;
    SpherePoint s, t;
    RunResult spherical, euclid, recipe1, recipe2;
};

struct BenchResult {
    std::vector<InstanceResult> rows;
    int skipped = 0;   // no path
    StatRow et1, rl1, ct1, et2, rl2, ct2;
    int illegal1 = 0, illegal2 = 0;
};

struct MapRef {
    std::string id;
    const GridMap* map;
};
BenchResult run_benchmark(const std::vector<MapRef>& maps, int count, std::uint64_t seed, const BenchConfig& cfg = {});

void write_instances_csv(const BenchResult& r, std::ostream& os);
void write_summary_csv(const BenchResult& r, std::ostream& os);

} // namespace sanya
