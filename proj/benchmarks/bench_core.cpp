#include <benchmark/benchmark.h>

#include "pasflab/frames.hpp"
#include "pasflab/identities.hpp"
#include "pasflab/operators.hpp"
#include "pasflab/rng.hpp"
#include "pasflab/search.hpp"
#include "pasflab/sip.hpp"

using namespace pasflab;

namespace {

Pasf bench_frame(int d, int n, double p, bool parseval) {
  const SipSpace sp(d, p, Field::complex);
  for (std::uint64_t k = 0; k < 32; ++k) {
    try {
      return random_pasf(sp, n, CounterRng::derive(0xBE9C, k), parseval);
    } catch (const GenerationError&) {
      continue;
    }
  }
  throw GenerationError("no benchmark frame found");
}

void BM_SipEval(benchmark::State& state) {
  const SipSpace sp(16, static_cast<double>(state.range(0)), Field::complex);
  CounterRng rng(1);
  const Vector x = random_vector(sp, rng);
  const Vector y = random_vector(sp, rng);
  for (auto _ : state) benchmark::DoNotOptimize(sip_eval(x, y));
}
BENCHMARK(BM_SipEval)->Arg(2)->Arg(3);

void BM_DualityRoundTrip(benchmark::State& state) {
  const SipSpace sp(16, 3.0, Field::complex);
  CounterRng rng(2);
  const Vector x = random_vector(sp, rng);
  for (auto _ : state) benchmark::DoNotOptimize(riesz_representer(duality_map(x)));
}
BENCHMARK(BM_DualityRoundTrip);

void BM_FrameOperator(benchmark::State& state) {
  const Pasf f = bench_frame(16, 64, 3.0, false);
  for (auto _ : state) benchmark::DoNotOptimize(frame_operator(f));
}
BENCHMARK(BM_FrameOperator);

void BM_CanonicalDual(benchmark::State& state) {
  const Pasf f = bench_frame(8, 24, 1.5, false);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dual(f));
}
BENCHMARK(BM_CanonicalDual);

void BM_ParsevalIdentity(benchmark::State& state) {
  const Pasf f = bench_frame(6, 12, 2.0, true);
  const PasfEvaluator ev(f);
  CounterRng rng(3);
  const Vector x = random_vector(f.space(), rng);
  const IndexSet m(0x5A5, 12);
  for (auto _ : state) benchmark::DoNotOptimize(ev.parseval_identity(m, x));
}
BENCHMARK(BM_ParsevalIdentity);

void BM_LowerBoundEval(benchmark::State& state) {
  const Pasf f = bench_frame(6, 12, 2.0, true);
  const PasfEvaluator ev(f);
  CounterRng rng(4);
  const Vector x = random_vector(f.space(), rng);
  const IndexSet m(0x0F3, 12);
  for (auto _ : state) benchmark::DoNotOptimize(ev.bound(m, x));
}
BENCHMARK(BM_LowerBoundEval);

void BM_PnormEstimate(benchmark::State& state) {
  const SipSpace sp(8, 3.0, Field::complex);
  CounterRng rng(5);
  std::vector<Cplx> entries(64);
  for (Cplx& z : entries) z = rng.scalar(Field::complex);
  const LinearOperator a(entries, sp, sp);
  for (auto _ : state) benchmark::DoNotOptimize(pnorm_estimate(a, 3.0, 3.0, 4, 99));
}
BENCHMARK(BM_PnormEstimate);

}  // namespace

BENCHMARK_MAIN();
