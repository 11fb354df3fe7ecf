#include <benchmark/benchmark.h>

#include "rvkit/corpus.hpp"
#include "rvkit/decompose.hpp"

using namespace rvkit;

namespace {

void bm_decompose_worked_example(benchmark::State& state) {
  FieldPtr q = NumberField::rationals();
  FPtr phi = parse_formula(q, "rv(X^2 - t^2) = [3;1]");
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose1(phi, "X", q));
  }
}

void bm_decompose_kterm(benchmark::State& state) {
  FieldPtr q = NumberField::rationals();
  FPtr phi = parse_formula(q, "rv(X)*[0;1] + rv(X - 1)*[0;1] = 0");
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose1(phi, "X", q));
  }
}

void bm_cheese_boolean_ops(benchmark::State& state) {
  FieldPtr q = NumberField::rationals();
  SwissCheese a = SwissCheese::of_ball(
      Ball::open(parse_puiseux(q, "t"), GammaValue::finite(Rational(2))));
  SwissCheese b = SwissCheese::of_ball(
      Ball::closed(parse_puiseux(q, "t + t^3"), GammaValue::finite(Rational(4))));
  SwissCheese c = SwissCheese::of_ball(
      Ball::closed(parse_puiseux(q, "0"), GammaValue::finite(Rational(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.unite(b).subtract(c).complement());
  }
}

void bm_eval_probe(benchmark::State& state) {
  FieldPtr q = NumberField::rationals();
  FPtr phi = parse_formula(q, "rv(X^2 - t^2) = [3;1]");
  Puiseux x = parse_puiseux(q, "t + 1/2*t^2 + t^4");
  Assignment a;
  a.vf["X"] = x;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_qf(phi, a));
  }
}

}  // namespace

BENCHMARK(bm_decompose_worked_example);
BENCHMARK(bm_decompose_kterm);
BENCHMARK(bm_cheese_boolean_ops);
BENCHMARK(bm_eval_probe);

BENCHMARK_MAIN();
