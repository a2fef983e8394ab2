// Unary against binary evaluation of the same computations, and the cost
// of the translations themselves.

#include <benchmark/benchmark.h>

#include "uptrans/driver.hpp"
#include "uptrans/registry.hpp"

using namespace uptrans;

namespace {

const Library& lib() { return prelude(); }

Term transported(const char* f, bool white) {
  const Entry& e = lib().env.at(f);
  if (white) return transport_white_box(lib().env, lib().delta, *e.body).term;
  return transport_black_box(lib().env, lib().delta, mk_const(f), e.type).term;
}

void run_normal(benchmark::State& state, const Term& t) {
  uint64_t steps = 0;
  for (auto _ : state) {
    NormResult r = normalize(lib().env, t);
    benchmark::DoNotOptimize(r.normal_form);
    steps = r.steps;
  }
  state.counters["steps"] = static_cast<double>(steps);
}

void bm_square_unary(benchmark::State& state) {
  run_normal(state, mk_app(mk_const("square"), mk_nat(state.range(0))));
}

void bm_square_black_box(benchmark::State& state) {
  run_normal(state, mk_app(transported("square", false), mk_N(state.range(0))));
}

void bm_square_white_box(benchmark::State& state) {
  run_normal(state, mk_app(transported("square", true), mk_N(state.range(0))));
}

void bm_mult_unary(benchmark::State& state) {
  run_normal(state, mk_app(mk_const("mult"), {mk_nat(state.range(0)), mk_nat(state.range(0))}));
}

void bm_mult_binary(benchmark::State& state) {
  run_normal(state, mk_app(mk_const("mult_N"), {mk_N(state.range(0)), mk_N(state.range(0))}));
}

void bm_uparam_translate_lib(benchmark::State& state) {
  const Entry& e = lib().env.at("Lib");
  for (auto _ : state) benchmark::DoNotOptimize(uparam_translate(lib().env, lib().delta, *e.body));
}

void bm_replace_goal_poly(benchmark::State& state) {
  Library l = prelude();
  process(l, Command::Transport, parse_module("transport poly_N from poly whitebox"));
  Term goal = elaborate(l.env, parse_term("ge (poly 50%nat) 1000%nat"), 0);
  for (auto _ : state) benchmark::DoNotOptimize(replace_goal(l.env, l.delta, goal).goal);
}

}  // namespace

BENCHMARK(bm_square_unary)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_square_black_box)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_square_white_box)->Arg(16)->Arg(64)->Arg(256)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mult_unary)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mult_binary)->Arg(32)->Arg(128)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_uparam_translate_lib)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_replace_goal_poly)->Unit(benchmark::kMillisecond);

// Unary numerals recurse deeply; run everything on a large stack.
int main(int argc, char** argv) {
  int rc = 0;
  with_large_stack([&] {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) {
      rc = 1;
      return;
    }
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
  });
  return rc;
}
