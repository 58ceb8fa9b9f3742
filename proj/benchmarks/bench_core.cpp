#include <benchmark/benchmark.h>

#include <random>

#include "halfflat/appendix.hpp"
#include "halfflat/classification.hpp"
#include "halfflat/search.hpp"
#include "halfflat/structure_file.hpp"

using namespace halfflat;

namespace {

KForm form(const char* text) { return parse_form(text, default_basis(6)); }

const KForm& sample_rho() {
  static const KForm rho =
      form("e1^e2^e3 + 2 e2^e3^f1 - e1^e3^f2 - e3^f1^f2 + 1/2 e1^e2^f3 + e2^f1^f3 - 3 e1^f2^f3 - f1^f2^f3");
  return rho;
}

void BM_Wedge23(benchmark::State& state) {
  const KForm omega = form("e1^f1 + 2 e2^f2 - e3^f3 + e1^e2");
  for (auto _ : state) benchmark::DoNotOptimize(wedge(omega, sample_rho()));
}
BENCHMARK(BM_Wedge23);

void BM_KMatrixExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(k_matrix(sample_rho()));
}
BENCHMARK(BM_KMatrixExact);

void BM_FloatInvariants(benchmark::State& state) {
  std::vector<double> omega(15, 0.3), rho(20);
  for (int i = 0; i < 20; ++i) rho[i] = 0.1 * (i % 7) - 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(float_invariants(omega, rho));
}
BENCHMARK(BM_FloatInvariants);

void BM_VerifyTableRow(benchmark::State& state) {
  const auto row = appendix::rows(3).front();
  for (auto _ : state) benchmark::DoNotOptimize(appendix::check_row(row));
}
BENCHMARK(BM_VerifyTableRow);

void BM_AppendixCorpus(benchmark::State& state) {
  const auto rows = appendix::all_rows();
  for (auto _ : state)
    for (const auto& row : rows) benchmark::DoNotOptimize(appendix::check_row(row));
}
BENCHMARK(BM_AppendixCorpus)->Unit(benchmark::kMillisecond);

void BM_ObstructDirectSum(benchmark::State& state) {
  const auto lie = direct_sum(catalog("r2R"), catalog("r3"));
  for (auto _ : state) benchmark::DoNotOptimize(obstruct(lie));
}
BENCHMARK(BM_ObstructDirectSum)->Unit(benchmark::kMicrosecond);

void BM_ClassifyAllPairs(benchmark::State& state) {
  const auto corpus = appendix::all_rows();
  for (auto _ : state)
    for (const auto& pair : pair_classes()) benchmark::DoNotOptimize(resolve(pair, corpus));
}
BENCHMARK(BM_ClassifyAllPairs)->Unit(benchmark::kMillisecond);

void BM_LambdaScan(benchmark::State& state) {
  const auto lie = direct_sum(catalog("su2"), catalog("su2"));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_nonneg_scan(lie, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_LambdaScan)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SearchSu3(benchmark::State& state) {
  const auto lie = direct_sum(catalog("su2"), catalog("su2"));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(find_halfflat(lie, StructureKind::SU3, {.restarts = 50, .seed = seed++}));
}
BENCHMARK(BM_SearchSu3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
