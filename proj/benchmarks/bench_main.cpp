#include <benchmark/benchmark.h>

#include "martlab/burkholder.hpp"
#include "martlab/constants.hpp"
#include "martlab/gauss.hpp"
#include "martlab/martsim.hpp"
#include "martlab/specfun.hpp"
#include "martlab/spectral.hpp"
#include "martlab/sphere.hpp"

namespace {

void BM_KummerM(benchmark::State& state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(martlab::specfun::kummer_m(-0.75, 0.5, z));
    z = z < 20.0 ? z + 0.1 : 0.1;
  }
}
BENCHMARK(BM_KummerM);

void BM_NuRoot(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(martlab::specfun::nu_p(1.3));
}
BENCHMARK(BM_NuRoot);

void BM_GammaFn(benchmark::State& state) {
  double t = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(martlab::specfun::gamma_fn(1.5, t));
    t = t < 30.0 ? t + 0.07 : 0.05;
  }
}
BENCHMARK(BM_GammaFn);

void BM_LK(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(martlab::constants::l_k(2.0));
}
BENCHMARK(BM_LK);

void BM_MajorizationScan(benchmark::State& state) {
  martlab::burkholder::ScanConfig cfg;
  cfg.n_points = static_cast<std::size_t>(state.range(0));
  cfg.seed = 1;
  for (auto _ : state) {
    auto rep = martlab::burkholder::scan_majorization(
        martlab::burkholder::UKind::log_llogl,
        martlab::burkholder::MajKind::maj1, 2.0, cfg);
    benchmark::DoNotOptimize(rep.worst_violation);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MajorizationScan)->Arg(1 << 12)->Arg(1 << 16);

void BM_HilbertCircle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  martlab::RngStream rng(7, 0);
  auto f = martlab::spectral::random_trig_poly(
      martlab::spectral::SpectralField::Domain::circle, {n}, n / 8, rng);
  for (auto _ : state) {
    auto hf = martlab::spectral::hilbert_circle(f);
    benchmark::DoNotOptimize(hf.samples[0]);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HilbertCircle)->Arg(1 << 12)->Arg(1 << 14);

void BM_PathSteps(benchmark::State& state) {
  std::uint64_t seed = 3;
  for (auto _ : state) {
    auto r = martlab::martsim::exit_time_moments(3, 1, 256, 1e-3, seed++, 1);
    benchmark::DoNotOptimize(r.moments[0]);
  }
}
BENCHMARK(BM_PathSteps);

void BM_SphereDuality(benchmark::State& state) {
  martlab::sphere::SphereBasis basis(8);
  martlab::RngStream rng(5, 0);
  auto f = martlab::sphere::random_field(8, rng);
  auto g = martlab::sphere::random_field(8, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(martlab::sphere::duality_residual(
        basis, f, g, martlab::sphere::RieszType::cylinder, 0, 1));
  }
}
BENCHMARK(BM_SphereDuality);

}  // namespace

BENCHMARK_MAIN();
