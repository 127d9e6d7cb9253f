#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "sanya/anya_core.hpp"
#include "sanya/bench.hpp"
#include "sanya/oracle.hpp"
#include "sanya/sanya.hpp"

using namespace sanya;

namespace {

struct Fixture {
    GridMap g;
    std::vector<Instance> pairs;
};

// a map with some instances that have a path
Fixture make(int w, int h, double fill, std::uint64_t seed, int n)
{
    Fixture f{gen_random_map(w, h, fill, seed), {}};
    for (auto& in : make_instances(f.g, "b", 4 * n, seed + 1).pairs) {
        try {
            euclid_search(f.g, in.s, in.t);
        } catch (const NoPath&) {
            continue;
        }
        f.pairs.push_back(in);
        if (static_cast<int>(f.pairs.size()) == n) break;
    }
    return f;
}

const Fixture& sized(int w)
{
    static std::map<int, Fixture> cache;
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, make(w, 2 * w, 0.1, 42, 16)).first;
    return it->second;
}

void BM_CentralAngle(benchmark::State& st)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<SpherePoint> pts(1024);
    for (auto& p : pts) p = {2 * u(rng), u(rng)};
    size_t i = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(central_angle(pts[i & 1023], pts[(i + 1) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_CentralAngle);

void BM_Spherical(benchmark::State& st)
{
    const Fixture& f = sized(static_cast<int>(st.range(0)));
    size_t i = 0;
    for (auto _ : st) {
        auto& in = f.pairs[i++ % f.pairs.size()];
        benchmark::DoNotOptimize(search(f.g, in.s, in.t).length);
    }
}
BENCHMARK(BM_Spherical)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Euclidean(benchmark::State& st)
{
    const Fixture& f = sized(static_cast<int>(st.range(0)));
    size_t i = 0;
    for (auto _ : st) {
        auto& in = f.pairs[i++ % f.pairs.size()];
        benchmark::DoNotOptimize(euclid_search(f.g, in.s, in.t).length);
    }
}
BENCHMARK(BM_Euclidean)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Recipe2(benchmark::State& st)
{
    static Fixture f = make(64, 128, 0.1, 7, 16);
    std::vector<RouteRecord> routes;
    for (auto& in : f.pairs) routes.push_back(euclid_search(f.g, in.s, in.t));
    size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(recipe2(routes[i++ % routes.size()], f.g).length);
}
BENCHMARK(BM_Recipe2)->Unit(benchmark::kMillisecond);

void BM_Legality(benchmark::State& st)
{
    static Fixture f = make(64, 128, 0.1, 9, 16);
    std::vector<RouteRecord> routes;
    for (auto& in : f.pairs) routes.push_back(search(f.g, in.s, in.t));
    size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(legality_check(routes[i++ % routes.size()], f.g).size());
}
BENCHMARK(BM_Legality)->Unit(benchmark::kMicrosecond);

void BM_Oracle(benchmark::State& st)
{
    static Fixture f = make(16, 16, 0.2, 5, 8);
    size_t i = 0;
    for (auto _ : st) {
        auto& in = f.pairs[i++ % f.pairs.size()];
        benchmark::DoNotOptimize(oracle_spherical(f.g, in.s, in.t, {static_cast<int>(st.range(0)), {}}).length);
    }
}
BENCHMARK(BM_Oracle)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
