// Serial reference against the OpenMP schedule for the generator-norm kernel.

#include <benchmark/benchmark.h>

#include "eisen/cft_oracle.hpp"
#include "eisen/classify2.hpp"
#include "eisen/classify3.hpp"

using namespace eisen;

namespace {

upoly::EisensteinPoly degree_p2(int p, int f) {
    classify2::GenRequest req;
    req.seed = 1;
    const auto P = classify2::gen_p2(gf::ResidueField(p, f), 6, req);
    return P.with_ring(P.ring().with_precision(cft_oracle::required_precision(p, 3)));
}

upoly::EisensteinPoly degree_p3() {
    classify3::GenRequest req;
    req.seed = 1;
    const auto P = classify3::gen_p3(gf::ResidueField(5, 1), 7, req);
    return P.with_ring(P.ring().with_precision(cft_oracle::required_precision(5, 4)));
}

void run(benchmark::State& state, const upoly::EisensteinPoly& P, int level, int ell_max, cft_oracle::Schedule s) {
    for (auto _ : state) benchmark::DoNotOptimize(cft_oracle::generator_logs(P, level, ell_max, s));
    state.counters["generators"] = static_cast<double>((P.ring().residue().q() - 1) * static_cast<std::uint64_t>(ell_max));
}

void BM_p2_serial(benchmark::State& st) {
    const auto P = degree_p2(5, static_cast<int>(st.range(0)));
    run(st, P, 3, 50, cft_oracle::Schedule::serial);
}
void BM_p2_parallel(benchmark::State& st) {
    const auto P = degree_p2(5, static_cast<int>(st.range(0)));
    run(st, P, 3, 50, cft_oracle::Schedule::parallel);
}
void BM_p3_serial(benchmark::State& st) {
    static const auto P = degree_p3();
    run(st, P, 4, static_cast<int>(st.range(0)), cft_oracle::Schedule::serial);
}
void BM_p3_parallel(benchmark::State& st) {
    static const auto P = degree_p3();
    run(st, P, 4, static_cast<int>(st.range(0)), cft_oracle::Schedule::parallel);
}

}  // namespace

BENCHMARK(BM_p2_serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_p2_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_p3_serial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_p3_parallel)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
