#include <benchmark/benchmark.h>

#include <cbinom/binomial.hpp>
#include <cbinom/quadrature.hpp>
#include <cbinom/special.hpp>

namespace {

using cbinom::Cplx;

void BM_LogGamma(benchmark::State& state) {
  Cplx z{1.5, 2.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbinom::log_gamma(z));
    z += Cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_LogGamma);

void BM_BinomGamma(benchmark::State& state) {
  Cplx z{0.3, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbinom::binom_gamma(Cplx(1.0, 1.0), z));
    z += Cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_BinomGamma);

void BM_SincSeries(benchmark::State& state) {
  const double re_w = double(state.range(0)) / 10.0;
  cbinom::EvalOptions opts;
  opts.abs_tol = 1e-8;
  opts.rel_tol = 1e-8;
  for (auto _ : state) {
    auto [ev, diag] =
        cbinom::binom_sinc_series({Cplx(re_w, 1.0), Cplx(0.7, 0.0)}, opts);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_SincSeries)->Arg(30)->Arg(5)->Arg(-3);

void BM_IntegrateLineOscillatory(benchmark::State& state) {
  cbinom::QuadratureSpec spec;
  spec.panel_tol = 1e-8;
  spec.oscillation_period = 1.0;
  const Cplx w{2.0, 0.0};
  for (auto _ : state) {
    auto ev = cbinom::integrate_line(
        [&](double x) {
          return cbinom::binom_gamma(w, Cplx(x, 0.0)) *
                 cbinom::sinc(Cplx(x - 0.5, 0.0));
        },
        spec);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_IntegrateLineOscillatory);

}  // namespace

BENCHMARK_MAIN();
