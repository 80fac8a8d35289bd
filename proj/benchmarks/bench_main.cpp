#include <benchmark/benchmark.h>

#include "bannai/bivariate.hpp"
#include "bannai/operators.hpp"
#include "bannai/qlimit.hpp"
#include "bannai/univariate.hpp"

namespace {

using bannai::ExactScalar;
using namespace bannai::uni;
namespace biv = bannai::biv;
namespace ops = bannai::ops;
namespace qlimit = bannai::qlimit;

const UniBIParams kParams{ExactScalar(1), ExactScalar(1, 2), ExactScalar(1, 4),
                          ExactScalar(1, 8)};

void BM_EvalRecurrence(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const ExactScalar x(17, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_recurrence(kParams, n, x));
  }
}
BENCHMARK(BM_EvalRecurrence)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_EvalHypergeometric(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const ExactScalar x(17, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_hypergeometric(kParams, n, x));
  }
}
BENCHMARK(BM_EvalHypergeometric)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

const biv::BivTruncParams kTrunc{ExactScalar(1, 3), ExactScalar(1, 5), ExactScalar(1, 7),
                                 ExactScalar(2, 9), 4};
const biv::BivFreeParams kFree{ExactScalar(1, 3), ExactScalar(1, 5), ExactScalar(2, 7),
                               ExactScalar(1, 11), ExactScalar(1, 13)};

void BM_EvalBivariate(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const ExactScalar z1(1, 3), z2(2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(biv::eval_def2(kFree, n, n, z1, z2));
  }
}
BENCHMARK(BM_EvalBivariate)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_LatticeBuild(benchmark::State& state) {
  biv::BivTruncParams p = kTrunc;
  p.N = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(biv::build_lattice(p));
  }
}
BENCHMARK(BM_LatticeBuild)->Arg(2)->Arg(4)->Arg(6);

void BM_GramAssembly(benchmark::State& state) {
  biv::BivTruncParams p = kTrunc;
  p.N = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(biv::orthogonality_check(p));
  }
}
BENCHMARK(BM_GramAssembly)->Arg(2)->Arg(3)->Arg(4);

void BM_NineTermCoeffs(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ops::nine_term_coeffs(kFree, n, n));
  }
}
BENCHMARK(BM_NineTermCoeffs)->Arg(1)->Arg(2)->Arg(4);

void BM_ApplyL2(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const ExactScalar z1(1, 3), z2(2, 7);
  const auto member = [n](const ExactScalar& a, const ExactScalar& b) {
    return biv::eval_def2(kFree, n, n, a, b);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(ops::apply_L2(kFree, member, z1, z2));
  }
}
BENCHMARK(BM_ApplyL2)->Arg(1)->Arg(2)->Arg(4);

void BM_ExpandPolynomial(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const auto member = [n](const ExactScalar& a, const ExactScalar& b) {
    return biv::eval_def2(kFree, n, n, a, b);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(biv::expand_polynomial(member, n, n));
  }
}
BENCHMARK(BM_ExpandPolynomial)->Arg(1)->Arg(2)->Arg(3);

void BM_PolyLimitSweep(benchmark::State& state) {
  const auto prec = static_cast<mpfr_prec_t>(state.range(0));
  const std::vector<ExactScalar> ts = {ExactScalar(1, 64), ExactScalar(1, 128)};
  const ExactScalar z1(1, 3), z2(2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qlimit::check_poly_limit(kFree, 2, 1, z1, z2, ts, prec));
  }
}
BENCHMARK(BM_PolyLimitSweep)->Arg(64)->Arg(128)->Arg(256);

void BM_RecurrenceLimitSweep(benchmark::State& state) {
  const auto prec = static_cast<mpfr_prec_t>(state.range(0));
  const std::vector<ExactScalar> ts = {ExactScalar(1, 64), ExactScalar(1, 128)};
  const ExactScalar z1(1, 3), z2(2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qlimit::check_recurrence_limit(kFree, 1, 1, z1, z2, ts, prec));
  }
}
BENCHMARK(BM_RecurrenceLimitSweep)->Arg(64)->Arg(128);

} // namespace

BENCHMARK_MAIN();
