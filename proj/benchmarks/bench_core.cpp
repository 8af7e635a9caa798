#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "jetflow/intersect/intersect.hpp"
#include "jetflow/jets/jet.hpp"
#include "jetflow/jets/operator.hpp"
#include "jetflow/series/multi_index.hpp"

namespace {

using namespace jetflow;

std::vector<std::string> vars(std::size_t n) { return default_variable_names(n); }

void BM_Compose(benchmark::State& state) {
  const unsigned p = static_cast<unsigned>(state.range(0));
  const auto v = vars(2);
  const JetDiffeo f = parse_diffeo("2*x + x*y - 1/3*y^2; 4*y + x^2 + x^3", v, p);
  const JetDiffeo g = parse_diffeo("x + y^2 + x^2*y; -y + 1/2*x^2", v, p);
  for (auto _ : state) benchmark::DoNotOptimize(diffeo_compose(f, g));
}
BENCHMARK(BM_Compose)->DenseRange(4, 12, 4);

void BM_Inverse(benchmark::State& state) {
  const unsigned p = static_cast<unsigned>(state.range(0));
  const auto v = vars(2);
  const JetDiffeo f = parse_diffeo("2*x + x*y - 1/3*y^2; 4*y + x^2 + x^3", v, p);
  for (auto _ : state) benchmark::DoNotOptimize(diffeo_inverse(f));
}
BENCHMARK(BM_Inverse)->DenseRange(4, 12, 4);

void BM_AsOperator(benchmark::State& state) {
  const unsigned p = static_cast<unsigned>(state.range(0));
  const auto v = vars(2);
  const JetDiffeo f = parse_diffeo("2*x + x*y; 4*y + x^2", v, p);
  for (auto _ : state) benchmark::DoNotOptimize(as_operator(f));
}
BENCHMARK(BM_AsOperator)->DenseRange(2, 8, 2);

void BM_ColengthFinite(benchmark::State& state) {
  const unsigned p = static_cast<unsigned>(state.range(0));
  const auto v = vars(2);
  const IdealGens ideal = parse_ideal("y - x^2 + 1/2*x^2*y; y^2 - x^5", v, p);
  for (auto _ : state) benchmark::DoNotOptimize(ideal_multiplicity(ideal, p));
}
BENCHMARK(BM_ColengthFinite)->DenseRange(8, 16, 4);

void BM_ColengthExceeded(benchmark::State& state) {
  const unsigned p = static_cast<unsigned>(state.range(0));
  const auto v = vars(3);
  const IdealGens ideal = parse_ideal("x*y - z^2; x^2 + y*z", v, p);
  for (auto _ : state) benchmark::DoNotOptimize(ideal_multiplicity(ideal, p));
}
BENCHMARK(BM_ColengthExceeded)->DenseRange(4, 8, 2);

void BM_MuSequence(benchmark::State& state) {
  const unsigned p = 12;
  const auto v = vars(2);
  const JetDiffeo f = parse_diffeo("2*x + 2*x*y; 4*y - 4/3*x^2 + 4*x^3", v, p);
  const IdealGens a = parse_ideal("y - x^2", v, p);
  const IdealGens b = parse_ideal("y", v, p);
  const unsigned kmax = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mu_sequence(f, a, b, kmax, p));
}
BENCHMARK(BM_MuSequence)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
