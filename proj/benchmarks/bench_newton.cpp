#include <benchmark/benchmark.h>

#include <random>

#include "rvkit/formula.hpp"
#include "rvkit/newton.hpp"

using namespace rvkit;

namespace {

VfPoly random_poly(std::mt19937_64& rng, int nroots) {
  FieldPtr q = NumberField::rationals();
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<long> coeff(1, 6);
  VfPoly F = VfPoly::constant(Puiseux::one(q));
  for (int i = 0; i < nroots; ++i) {
    Puiseux r = Puiseux::monomial(KElem::of(q, Rational(coeff(rng))),
                                  Rational(num(rng), den(rng)));
    F = F * VfPoly(q, {-r, Puiseux::one(q)});
  }
  return F;
}

void bm_newton_polygon(benchmark::State& state) {
  std::mt19937_64 rng(42);
  std::vector<VfPoly> polys;
  for (int i = 0; i < 32; ++i) polys.push_back(random_poly(rng, static_cast<int>(state.range(0))));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(newton_polygon(polys[i++ % polys.size()]));
  }
}

void bm_root_classes(benchmark::State& state) {
  std::mt19937_64 rng(43);
  std::vector<VfPoly> polys;
  for (int i = 0; i < 32; ++i) polys.push_back(random_poly(rng, static_cast<int>(state.range(0))));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(root_rv_classes(polys[i++ % polys.size()]));
  }
}

void bm_puiseux_roots(benchmark::State& state) {
  std::mt19937_64 rng(44);
  std::vector<VfPoly> polys;
  for (int i = 0; i < 16; ++i) polys.push_back(random_poly(rng, 3));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(puiseux_roots(polys[i++ % polys.size()], Rational(state.range(0))));
  }
}

}  // namespace

BENCHMARK(bm_newton_polygon)->Arg(3)->Arg(5)->Arg(8);
BENCHMARK(bm_root_classes)->Arg(3)->Arg(5);
BENCHMARK(bm_puiseux_roots)->Arg(8)->Arg(24);

BENCHMARK_MAIN();
