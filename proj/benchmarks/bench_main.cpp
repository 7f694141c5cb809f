#include <random>

#include <benchmark/benchmark.h>

#include <braidforge/diagram.hpp>
#include <braidforge/entanglement.hpp>
#include <braidforge/families.hpp>
#include <braidforge/tensor.hpp>
#include <braidforge/verifier.hpp>

using namespace braidforge;

static void BM_Kron(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  Matrix a(1 << n, 1 << n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cplx(nd(rng), nd(rng));
  DenseOperator op(a);
  for (auto _ : state) benchmark::DoNotOptimize(kron(op, DenseOperator::identity(2, 3)));
}
BENCHMARK(BM_Kron)->Arg(2)->Arg(3)->Arg(4);

static void BM_GybeFamily(benchmark::State& state) {
  const auto id = static_cast<FamilyId>(state.range(0));
  const auto& f = family_info(id);
  std::mt19937_64 rng(2);
  auto R = build(random_point(id, rng));
  for (auto _ : state) benchmark::DoNotOptimize(check_gybe(R, f.d, f.m, f.l));
  state.SetLabel(f.name);
}
BENCHMARK(BM_GybeFamily)
    ->Arg(static_cast<int>(FamilyId::F2P))
    ->Arg(static_cast<int>(FamilyId::F3P))
    ->Arg(static_cast<int>(FamilyId::F42))
    ->Arg(static_cast<int>(FamilyId::F43))
    ->Unit(benchmark::kMillisecond);

static void BM_DiagramRelations(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_diagram_relations(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DiagramRelations)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_EigenMultiset(benchmark::State& state) {
  std::mt19937_64 rng(3);
  auto R = build(random_point(FamilyId::F43, rng));
  for (auto _ : state) benchmark::DoNotOptimize(eigen_multiset(R));
}
BENCHMARK(BM_EigenMultiset)->Unit(benchmark::kMicrosecond);

static void BM_Slocc3(benchmark::State& state) {
  std::mt19937_64 rng(4);
  auto s = random_ilo(3, rng).apply(StateVector::from_bits("000"));
  s.amps(7) += 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(slocc_3q(s.normalized()));
}
BENCHMARK(BM_Slocc3);

static void BM_Solve232(benchmark::State& state) {
  auto a = general_ansatz(2, 3, 2);
  SolveOptions opt;
  opt.starts = static_cast<int>(state.range(0));
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_numeric(a, opt));
}
BENCHMARK(BM_Solve232)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(3);
BENCHMARK_MAIN();
