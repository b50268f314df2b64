#include <benchmark/benchmark.h>

#include "dbl/double.hpp"

using namespace dbl;

namespace {

DoubleCategory grid_squares(int n) { return commutative_squares(product(ordinal(n), ordinal(n))); }

void validate_serial(benchmark::State& st)
{
    auto d = grid_squares(int(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(validate(d, Exec::serial));
    st.counters["squares"] = d.num_squares();
}

void validate_parallel(benchmark::State& st)
{
    auto d = grid_squares(int(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(validate(d, Exec::parallel));
    st.counters["squares"] = d.num_squares();
}

} // namespace

BENCHMARK(validate_serial)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(validate_parallel)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
