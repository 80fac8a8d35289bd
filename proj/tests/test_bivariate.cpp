#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <utility>
#include <vector>

#include "bannai/bivariate.hpp"
#include "bannai/errors.hpp"
#include "bannai/univariate.hpp"
#include "test_support.hpp"

using bannai::ExactScalar;
using namespace bannai::biv;

namespace {

ExactScalar Q(const char* s) { return ExactScalar::parse(s); }

const BivTruncParams kRef{Q("1/4"), Q("2/7"), Q("1/9"), Q("2/3"), 4};

BivTruncParams with_N(const BivTruncParams& base, unsigned N) {
  return {base.p1, base.p2, base.p3, base.c, N};
}

// Draws truncation parameters whose full lattice and norm table are
// pole-free. Rejection-samples over small rationals.
BivTruncParams sample_trunc_params(unsigned N, testsupport::Rng& rng) {
  for (;;) {
    BivTruncParams p{rng.rational(4, 7), rng.rational(4, 7), rng.rational(4, 7),
                     rng.rational(4, 7), N};
    try {
      (void)build_lattice(p);
      return p;
    } catch (const bannai::Error&) {
      continue;
    }
  }
}

BivFreeParams sample_free_params(testsupport::Rng& rng, unsigned max_total,
                                 const std::vector<std::pair<ExactScalar, ExactScalar>>& pts) {
  for (;;) {
    BivFreeParams f{rng.rational(4, 7), rng.rational(4, 7), rng.rational(4, 7),
                    rng.rational(4, 7), rng.rational(4, 7)};
    try {
      for (unsigned n1 = 0; n1 <= max_total; ++n1) {
        for (unsigned n2 = 0; n1 + n2 <= max_total; ++n2) {
          for (const auto& pt : pts) {
            (void)eval_def2(f, n1, n2, pt.first, pt.second);
          }
        }
      }
      return f;
    } catch (const bannai::Error&) {
      continue;
    }
  }
}

}  // namespace

TEST_CASE("degree zero evaluates to one everywhere") {
  CHECK(eval_def1(kRef, 0, 0, Q("3/5"), Q("-7/9")) == ExactScalar(1));
  const BivFreeParams f{Q("1/3"), Q("2/5"), Q("3/7"), Q("1/2"), Q("2/7")};
  CHECK(eval_def2(f, 0, 0, Q("3/5"), Q("-7/9")) == ExactScalar(1));
}

TEST_CASE("truncated evaluator rejects degrees beyond the simplex") {
  CHECK_THROWS_AS((void)eval_def1(kRef, 3, 2, Q("1/3"), Q("1/5")),
                  bannai::DegreeError);
  CHECK_THROWS_AS((void)eval_def1(with_N(kRef, 2), 0, 3, Q("1/3"), Q("1/5")),
                  bannai::DegreeError);
}

TEST_CASE("first factor parameter slots track z2") {
  const ExactScalar z2 = Q("5/8");
  const auto u = def1_factor1_params(kRef, z2);
  CHECK(u.rho1 == kRef.c - kRef.p1 + Q("1/2"));
  CHECK(u.rho2 == z2 + kRef.p2 - Q("1/4"));
  CHECK(u.r1 == Q("1/2") - kRef.p1);
  CHECK(u.r2 == z2 - kRef.p2 + Q("1/4"));
}

TEST_CASE("second factor family truncates at degree N minus n1") {
  for (unsigned N : {2u, 3u, 4u, 5u}) {
    const BivTruncParams p = with_N(kRef, N);
    for (unsigned n1 = 0; n1 <= N; ++n1) {
      const auto u = def1_factor2_params(p, n1);
      const unsigned M = N - n1;
      const ExactScalar target(static_cast<long>(M) + 1, 2);
      if (M % 2 == 0) {
        CHECK(u.r1 - u.rho2 == target);
      } else {
        CHECK(u.r1 + u.r2 == target);
      }
    }
  }
}

TEST_CASE("untruncated second factor swaps gamma and delta roles with n1 parity") {
  const BivFreeParams f{Q("1/3"), Q("2/5"), Q("3/7"), Q("1/2"), Q("2/7")};
  for (unsigned n1 : {0u, 1u, 2u, 3u}) {
    const auto u = def2_factor2_params(f, n1);
    const ExactScalar half_n1(static_cast<long>(n1), 2);
    CHECK(u.rho1 == f.beta + f.epsilon + half_n1);
    CHECK(u.r1 == f.alpha - f.epsilon - half_n1);
    if (n1 % 2 == 0) {
      CHECK(u.rho2 == f.delta);
      CHECK(u.r2 == -f.gamma);
    } else {
      CHECK(u.rho2 == f.gamma);
      CHECK(u.r2 == -f.delta);
    }
  }
}

TEST_CASE("lattice grids follow the alternating half-integer pattern") {
  const auto lat = build_lattice(kRef);
  const unsigned N = kRef.N;
  REQUIRE(lat.N == N);
  for (unsigned s = 0; s <= N; ++s) {
    const ExactScalar zs = bannai::sign_pow(static_cast<long>(s + N)) *
                           (ExactScalar(static_cast<long>(s) - static_cast<long>(N)) -
                            ExactScalar(2) * kRef.p1 - ExactScalar(2) * kRef.p2 +
                            Q("1/2")) /
                           ExactScalar(2);
    CHECK(lat.z2[s] == zs);
    for (unsigned r = 0; r <= N; ++r) {
      const ExactScalar zr =
          bannai::sign_pow(static_cast<long>(r + s + N)) *
          (ExactScalar(static_cast<long>(r) + static_cast<long>(s) -
                       static_cast<long>(N)) -
           ExactScalar(2) * kRef.p1 + Q("1/2")) /
          ExactScalar(2);
      CHECK(lat.z1[r][s] == zr);
    }
  }
}

TEST_CASE("first weight family is normalized at the origin and vanishes off range") {
  const auto lat = build_lattice(kRef);
  for (unsigned s = 0; s <= kRef.N; ++s) {
    CHECK(lat.w1[0][s] == ExactScalar(1));
    for (unsigned r = kRef.N - s + 1; r <= kRef.N; ++r) {
      CHECK(lat.w1[r][s].is_zero());
    }
  }
}

TEST_CASE("first factor is orthogonal column by column with the tabulated norms") {
  const auto lat = build_lattice(kRef);
  const unsigned N = kRef.N;
  for (unsigned s = 0; s <= N; ++s) {
    const unsigned M = N - s;
    const auto fam = def1_factor1_params(kRef, lat.z2[s]);
    for (unsigned a = 0; a <= M; ++a) {
      for (unsigned b = a; b <= M; ++b) {
        ExactScalar acc(0);
        for (unsigned r = 0; r <= N; ++r) {
          const ExactScalar x = lat.z1[r][s] - Q("1/4");
          acc += lat.w1[r][s] * bannai::uni::eval_recurrence(fam, a, x) *
                 bannai::uni::eval_recurrence(fam, b, x);
        }
        if (a == b) {
          CHECK(acc == h1_norm(kRef, a, M));
        } else {
          CHECK(acc.is_zero());
        }
      }
    }
  }
}

TEST_CASE("norm table entries are accessible only over the simplex") {
  const auto lat = build_lattice(with_N(kRef, 3));
  CHECK_FALSE(lat.H(1, 2).is_zero());
  CHECK_THROWS_AS((void)lat.H(2, 2), bannai::DegreeError);
}

TEST_CASE("full orthogonality report is clean across N and parameter sets") {
  testsupport::Rng rng(20260816);
  for (unsigned N : {2u, 3u, 4u}) {
    for (int rep = 0; rep < 3; ++rep) {
      const BivTruncParams p = sample_trunc_params(N, rng);
      const OrthoReport report = orthogonality_check(p);
      CAPTURE(N);
      CAPTURE(report.worst_case);
      CHECK(report.clean());
      CHECK(report.pairs > 0);
    }
  }
}

TEST_CASE("degenerate parameters surface as pole errors naming the weight") {
  // Half-integer c makes a first-weight denominator vanish on this lattice.
  const BivTruncParams bad{Q("1/3"), Q("1/5"), Q("1/7"), Q("1/2"), 2};
  CHECK_THROWS_AS((void)build_lattice(bad), bannai::PoleError);
}

TEST_CASE("the two definitions agree through the parameter reduction") {
  testsupport::Rng rng(987123);
  const std::vector<std::pair<ExactScalar, ExactScalar>> pts = {
      {Q("1/3"), Q("2/7")}, {Q("-2/5"), Q("1/9")}, {Q("5/4"), Q("-3/8")}};
  for (unsigned N = 1; N <= 4; ++N) {
    const BivTruncParams p = sample_trunc_params(N, rng);
    const BivFreeParams f = reduce_def2_to_def1(p);
    for (unsigned n1 = 0; n1 <= N; ++n1) {
      for (unsigned n2 = 0; n1 + n2 <= N; ++n2) {
        for (const auto& pt : pts) {
          CHECK(eval_def1(p, n1, n2, pt.first, pt.second) ==
                eval_def2(f, n1, n2, pt.first, pt.second));
        }
      }
    }
  }
}

TEST_CASE("expansion of the constant and of low-degree members") {
  const auto one = expand_polynomial(
      [](const ExactScalar&, const ExactScalar&) { return ExactScalar(1); }, 0, 0);
  CHECK(one.coefficient(0, 0) == ExactScalar(1));
  CHECK(one.total_degree() == 0);

  const BivFreeParams f{Q("1/3"), Q("2/5"), Q("3/7"), Q("1/2"), Q("2/7")};
  const auto lin = expand_polynomial(
      [&](const ExactScalar& x, const ExactScalar& y) {
        return eval_def2(f, 1, 0, x, y);
      },
      1, 0);
  CHECK(lin.degree_z1() == 1);
  CHECK(lin.coefficient(1, 0) == ExactScalar(1));

  // Monic product: z1-leading 1, z2-leading sign (-1)^{n1 n2}.
  const auto mixed = expand_polynomial(
      [&](const ExactScalar& x, const ExactScalar& y) {
        return eval_def2(f, 1, 1, x, y);
      },
      1, 1);
  CHECK(mixed.degree_z1() == 1);
  CHECK(mixed.total_degree() == 2);
  CHECK(mixed.coefficient(1, 1) == ExactScalar(-1));
}

TEST_CASE("expansion certifies the claimed degrees") {
  // z1-degree above the claim
  CHECK_THROWS_AS((void)expand_polynomial(
                      [](const ExactScalar& x, const ExactScalar&) { return x * x; },
                      1, 1),
                  bannai::InterpolationError);
  // total degree above the claim
  CHECK_THROWS_AS((void)expand_polynomial(
                      [](const ExactScalar& x, const ExactScalar& y) {
                        return x * y * y;
                      },
                      1, 1),
                  bannai::InterpolationError);
  // not a polynomial at all: caught by the off-grid cross-check
  CHECK_THROWS_AS((void)expand_polynomial(
                      [](const ExactScalar& x, const ExactScalar& y) {
                        return ExactScalar(1) / (x + y + ExactScalar(20));
                      },
                      2, 2),
                  bannai::InterpolationError);
}

TEST_CASE("expansion matches direct evaluation for random members") {
  testsupport::Rng rng(5150);
  const std::vector<std::pair<ExactScalar, ExactScalar>> pts = {
      {Q("1/3"), Q("2/7")}, {Q("-5/9"), Q("4/11")}};
  const BivFreeParams f = sample_free_params(rng, 4, pts);
  for (auto [n1, n2] :
       std::vector<std::pair<unsigned, unsigned>>{{2, 0}, {0, 2}, {2, 1}, {1, 2}}) {
    const auto ex = expand_polynomial(
        [&, n1 = n1, n2 = n2](const ExactScalar& x, const ExactScalar& y) {
          return eval_def2(f, n1, n2, x, y);
        },
        n1, n2);
    CHECK(ex.degree_z1() == n1);
    for (const auto& pt : pts) {
      ExactScalar acc(0);
      for (unsigned i = 0; i <= ex.n1; ++i) {
        for (unsigned j = 0; i + j <= ex.n1 + ex.n2; ++j) {
          acc += ex.coefficient(i, j) * bannai::pow_int(pt.first, i) *
                 bannai::pow_int(pt.second, j);
        }
      }
      CHECK(acc == eval_def2(f, n1, n2, pt.first, pt.second));
    }
  }
}
