// Serial reference against the OpenMP kernels, plus planner timings.
#include <benchmark/benchmark.h>

#include "aoplkit/checker.h"
#include "aoplkit/config.h"
#include "aoplkit/ground.h"
#include "aoplkit/planner.h"

using namespace aoplkit;

namespace {

std::string data(const std::string &rel) { return std::string(AOPLKIT_DATA_DIR) + "/" + rel; }

struct Fixture {
    LoadedProblem lp;
    Policy p;
    GroundPolicy g;
    std::vector<StateSample> states;
};

// All reachable states of the bundled traffic scenarios, pooled.
const Fixture &traffic() {
    static Fixture f = [] {
        Fixture f;
        f.p = load_policy_file(data("policies/traffic.aopl"));
        f.lp = load_problem_file(data("traffic/s11.json"));
        f.g = ground_policy(f.p, *f.lp.domain);
        f.states = sample_states(*f.lp.domain, f.lp.problem, 2000, 1);
        return f;
    }();
    return f;
}

void BM_CheckSerial(benchmark::State &st) {
    const Fixture &f = traffic();
    for (auto _ : st)
        benchmark::DoNotOptimize(check_policy_serial(f.p, f.g, f.states));
    st.SetItemsProcessed(st.iterations() * f.states.size());
}

void BM_CheckParallel(benchmark::State &st) {
    const Fixture &f = traffic();
    for (auto _ : st)
        benchmark::DoNotOptimize(check_policy(f.p, f.g, f.states, {}, static_cast<int>(st.range(0))));
    st.SetItemsProcessed(st.iterations() * f.states.size());
}

void BM_OracleSerial(benchmark::State &st) {
    const Fixture &f = traffic();
    std::vector<StateSample> few(f.states.begin(), f.states.begin() + std::min<std::size_t>(64, f.states.size()));
    for (auto _ : st)
        benchmark::DoNotOptimize(oracle_agreement_serial(f.g, few));
    st.SetItemsProcessed(st.iterations() * few.size());
}

void BM_OracleParallel(benchmark::State &st) {
    const Fixture &f = traffic();
    std::vector<StateSample> few(f.states.begin(), f.states.begin() + std::min<std::size_t>(64, f.states.size()));
    for (auto _ : st)
        benchmark::DoNotOptimize(oracle_agreement(f.g, few, {}, static_cast<int>(st.range(0))));
    st.SetItemsProcessed(st.iterations() * few.size());
}

void BM_Plan(benchmark::State &st) {
    static const char *modes[] = {"emergency", "non-emergency"};
    const Fixture &f = traffic();
    LoadedProblem lp = load_problem_file(data("traffic/s01.json"));
    BehaviorMode m = BehaviorMode::parse(modes[st.range(0)]);
    int threads = static_cast<int>(st.range(1));
    for (auto _ : st)
        benchmark::DoNotOptimize(plan(lp, f.p, m, {.threads = threads}));
    st.SetLabel(std::string(modes[st.range(0)]) + " threads=" + std::to_string(threads));
}

}  // namespace

BENCHMARK(BM_CheckSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Plan)->Args({0, 1})->Args({1, 1})->Args({0, 4})->Args({1, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
