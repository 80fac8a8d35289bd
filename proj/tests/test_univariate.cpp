#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "bannai/errors.hpp"
#include "bannai/interpolate.hpp"
#include "bannai/univariate.hpp"
#include "test_support.hpp"

using bannai::ExactScalar;
using namespace bannai::uni;

namespace {

const UniBIParams kZeroParams{ExactScalar(0), ExactScalar(0), ExactScalar(0), ExactScalar(0)};

UniBIParams random_params(testsupport::Rng& rng) {
  return {rng.rational(6, 5), rng.rational(6, 5), rng.rational(6, 5), rng.rational(6, 5)};
}

// Random parameters for which both evaluators are defined up to degree max_n.
UniBIParams random_regular_params(testsupport::Rng& rng, unsigned max_n) {
  for (;;) {
    const UniBIParams p = random_params(rng);
    try {
      const ExactScalar probe(17, 5);
      for (unsigned n = 0; n <= max_n; ++n) {
        (void)eval_recurrence(p, n, probe);
        (void)eval_hypergeometric(p, n, probe);
      }
      return p;
    } catch (const bannai::Error&) {
      continue;
    }
  }
}

struct Family {
  UniBIParams params;
  TruncationType trunc;
};

// Draws parameters realizing the requested truncation at this N, filtered for
// pole-free orthogonality data and the positivity conditions u_n > 0.
std::optional<Family> sample_family(TruncationKind kind, unsigned N, testsupport::Rng& rng) {
  const ExactScalar target(static_cast<long>(N) + 1, 2);
  for (int trial = 0; trial < 4000; ++trial) {
    UniBIParams p = random_params(rng);
    switch (kind) {
      case TruncationKind::TypeI:
        p.r1 = p.rho1 + target;
        break;
      case TruncationKind::TypeII:
        p.rho2 = -target - p.rho1;
        break;
      case TruncationKind::TypeIII:
        p.r2 = target - p.r1;
        break;
      default:
        return std::nullopt;
    }
    const TruncationType trunc = detect_truncation(p, N);
    if (trunc.kind != kind) continue;
    try {
      bool positive = true;
      for (unsigned n = 1; n <= N; ++n) {
        if (u_coeff(p, n).sign() <= 0) {
          positive = false;
          break;
        }
      }
      if (!positive) continue;
      (void)orthogonality_data(p, trunc);
      return Family{p, trunc};
    } catch (const bannai::Error&) {
      continue;
    }
  }
  return std::nullopt;
}

void check_gram(const UniBIParams& p, const OrthogonalityData& od, unsigned N) {
  REQUIRE(od.grid.size() == N + 1);
  REQUIRE(od.weights.size() == N + 1);
  REQUIRE(od.norms.size() == N + 1);
  std::vector<std::vector<ExactScalar>> table;
  table.reserve(N + 1);
  for (unsigned k = 0; k <= N; ++k) {
    table.push_back(eval_recurrence_upto(p, N, od.grid[k]));
  }
  for (unsigned n = 0; n <= N; ++n) {
    for (unsigned m = 0; m <= N; ++m) {
      ExactScalar sum(0);
      for (unsigned k = 0; k <= N; ++k) {
        sum += od.weights[k] * table[k][n] * table[k][m];
      }
      if (n == m) {
        CHECK(sum == od.norms[n]);
      } else {
        CHECK(sum == ExactScalar(0));
      }
    }
  }
}

} // namespace

TEST_CASE("recurrence coefficients at the all-zero parameter point") {
  const auto rc0 = recurrence_coeffs(kZeroParams, 0);
  CHECK(rc0.A == ExactScalar(1, 4));
  CHECK(rc0.C == ExactScalar(0));
  const auto rc1 = recurrence_coeffs(kZeroParams, 1);
  CHECK(rc1.C == ExactScalar(-1, 4));
}

TEST_CASE("recurrence coefficient poles") {
  // g = -1 here, so A_0 divides by n+g+1 = 0 and C_1 divides by n+g = 0.
  const UniBIParams p{ExactScalar(0), ExactScalar(0), ExactScalar(1, 2), ExactScalar(1, 2)};
  CHECK(p.g() == ExactScalar(-1));
  CHECK_THROWS_AS(recurrence_coeffs(p, 0), bannai::PoleError);
  CHECK_THROWS_AS(recurrence_coeffs(p, 1), bannai::PoleError);
  // C_0 never triggers the n+g check.
  const UniBIParams q{ExactScalar(1), ExactScalar(-1), ExactScalar(0), ExactScalar(0)};
  CHECK(q.g() == ExactScalar(0));
  CHECK(recurrence_coeffs(q, 0).C == ExactScalar(0));
}

TEST_CASE("B_0 and B_1 closed forms") {
  testsupport::Rng rng(0x101u);
  for (int trial = 0; trial < 25; ++trial) {
    const UniBIParams p = random_regular_params(rng, 1);
    const ExactScalar x = rng.rational(9, 7);
    CHECK(eval_recurrence(p, 0, x) == ExactScalar(1));
    const ExactScalar a0 = recurrence_coeffs(p, 0).A;
    CHECK(eval_recurrence(p, 1, x) == x - p.rho1 + a0);
  }
}

TEST_CASE("evaluators agree at pinned sample points") {
  const UniBIParams p{ExactScalar(1), ExactScalar(1, 2), ExactScalar(1, 4), ExactScalar(1, 8)};
  CHECK(eval_recurrence(p, 4, ExactScalar(2)) == eval_hypergeometric(p, 4, ExactScalar(2)));
  CHECK(eval_recurrence(p, 3, ExactScalar(7, 3)) == eval_hypergeometric(p, 3, ExactScalar(7, 3)));
}

TEST_CASE("evaluator agreement across random admissible families") {
  testsupport::Rng rng(0xA9eeu);
  for (int set = 0; set < 50; ++set) {
    const UniBIParams p = random_regular_params(rng, 8);
    for (int pt = 0; pt < 5; ++pt) {
      const ExactScalar x = rng.rational(10, 9);
      for (unsigned n = 0; n <= 8; ++n) {
        CHECK(eval_recurrence(p, n, x) == eval_hypergeometric(p, n, x));
      }
    }
  }
}

TEST_CASE("hypergeometric evaluator flags degenerate normalization") {
  // rho1 - r1 + 1/2 = 0 makes eta_n vanish for n >= 1.
  const UniBIParams p{ExactScalar(0), ExactScalar(1, 3), ExactScalar(1, 2), ExactScalar(1, 5)};
  CHECK(eval_hypergeometric(p, 0, ExactScalar(3)) == ExactScalar(1));
  CHECK_THROWS_AS(eval_hypergeometric(p, 1, ExactScalar(3)), bannai::NormalizationError);
  CHECK_THROWS_AS(eval_hypergeometric(p, 2, ExactScalar(3)), bannai::NormalizationError);
  // The recurrence evaluator stays defined there.
  CHECK_NOTHROW(eval_recurrence(p, 2, ExactScalar(3)));
}

TEST_CASE("symmetry under rho and r exchanges") {
  testsupport::Rng rng(0x5e11u);
  for (int set = 0; set < 20; ++set) {
    const UniBIParams p = random_regular_params(rng, 8);
    const ExactScalar x = rng.rational(10, 9);
    for (unsigned n = 0; n <= 8; ++n) {
      const ExactScalar base = eval_recurrence(p, n, x);
      CHECK(base == eval_recurrence(p.swap_rho(), n, x));
      CHECK(base == eval_recurrence(p.swap_r(), n, x));
      CHECK(base == eval_recurrence(p.swap_rho().swap_r(), n, x));
    }
  }
}

TEST_CASE("monicity: B_n - x B_{n-1} has degree at most n-1") {
  testsupport::Rng rng(0x313u);
  for (int set = 0; set < 10; ++set) {
    const UniBIParams p = random_regular_params(rng, 8);
    for (unsigned n = 1; n <= 8; ++n) {
      std::vector<ExactScalar> nodes;
      std::vector<ExactScalar> values;
      for (unsigned k = 0; k <= n; ++k) {
        const ExactScalar x(static_cast<long>(8 * k) + 3, 8);
        nodes.push_back(x);
        values.push_back(eval_recurrence(p, n, x) - x * eval_recurrence(p, n - 1, x));
      }
      const auto coeffs = bannai::interpolate_coefficients(nodes, values);
      CHECK(coeffs.back() == ExactScalar(0));
    }
  }
}

TEST_CASE("truncation detection") {
  SUBCASE("type i at the pinned example") {
    const UniBIParams p{ExactScalar(0), ExactScalar(2, 3), ExactScalar(3, 2), ExactScalar(4, 7)};
    const TruncationType t = detect_truncation(p, 2);
    CHECK(t.kind == TruncationKind::TypeI);
    CHECK(t.N == 2);
    CHECK(t.j == 1);
    CHECK(t.l == 1);
  }
  SUBCASE("type i scans (j,l) pairs lexicographically") {
    // Both r1 - rho2 and r2 - rho1 equal 3/2; (1,2) precedes (2,1).
    const UniBIParams p{ExactScalar(0), ExactScalar(1), ExactScalar(5, 2), ExactScalar(3, 2)};
    const TruncationType t = detect_truncation(p, 2);
    CHECK(t.kind == TruncationKind::TypeI);
    CHECK(t.j == 1);
    CHECK(t.l == 2);
  }
  SUBCASE("type iii at the pinned example") {
    const UniBIParams p{ExactScalar(1, 5), ExactScalar(1, 7), ExactScalar(3, 4), ExactScalar(5, 4)};
    CHECK(p.r1 + p.r2 == ExactScalar(2));
    const TruncationType t = detect_truncation(p, 3);
    CHECK(t.kind == TruncationKind::TypeIII);
  }
  SUBCASE("type ii") {
    const UniBIParams p{ExactScalar(-3, 2), ExactScalar(-1, 2), ExactScalar(1, 5), ExactScalar(2, 5)};
    CHECK(detect_truncation(p, 3).kind == TruncationKind::TypeII);
  }
  SUBCASE("type iv is reported inadmissible") {
    // g = -2 with neither the type ii nor the type iii identity holding.
    const UniBIParams p{ExactScalar(1, 3), ExactScalar(1, 3), ExactScalar(4, 3), ExactScalar(4, 3)};
    CHECK(p.g() == ExactScalar(-2));
    const TruncationType t = detect_truncation(p, 3);
    CHECK(t.kind == TruncationKind::TypeIVInadmissible);
  }
  SUBCASE("no condition yields None") {
    const UniBIParams p{ExactScalar(1, 5), ExactScalar(1, 7), ExactScalar(1, 11), ExactScalar(1, 13)};
    CHECK(detect_truncation(p, 2).kind == TruncationKind::None);
    CHECK(detect_truncation(p, 3).kind == TruncationKind::None);
  }
  SUBCASE("parity gates the candidate types") {
    // r1 - rho1 = 2 would be type i at N = 3, but type i needs even N.
    const UniBIParams p{ExactScalar(0), ExactScalar(1, 7), ExactScalar(2), ExactScalar(1, 13)};
    CHECK(detect_truncation(p, 3).kind == TruncationKind::None);
  }
}

TEST_CASE("type i orthogonality data at the pinned parameter set") {
  const UniBIParams p{ExactScalar(0), ExactScalar(1, 3), ExactScalar(3, 2), ExactScalar(1, 5)};
  const TruncationType t = detect_truncation(p, 2);
  REQUIRE(t.kind == TruncationKind::TypeI);
  const OrthogonalityData od = orthogonality_data(p, t);
  CHECK(od.grid[0] == p.rho1);
  CHECK(od.weights[0] == ExactScalar(1));
  check_gram(p, od, 2);
}

TEST_CASE("type i canonicalizes (j,l) through the symmetry swaps") {
  testsupport::Rng rng(0xCA30u);
  // Realize r2 - rho2 = (N+1)/2 so detection lands on (j,l) = (2,2).
  for (int trial = 0; trial < 200; ++trial) {
    UniBIParams p = random_params(rng);
    p.r2 = p.rho2 + ExactScalar(3, 2);
    const TruncationType t = detect_truncation(p, 2);
    if (t.kind != TruncationKind::TypeI || t.j != 2 || t.l != 2) continue;
    OrthogonalityData od;
    try {
      od = orthogonality_data(p, t);
    } catch (const bannai::Error&) {
      continue;
    }
    // Swapping both parameter pairs up front must give identical data.
    const UniBIParams q = p.swap_rho().swap_r();
    const TruncationType tq = detect_truncation(q, 2);
    REQUIRE(tq.j == 1);
    REQUIRE(tq.l == 1);
    const OrthogonalityData od_ref = orthogonality_data(q, tq);
    CHECK(od.grid == od_ref.grid);
    CHECK(od.weights == od_ref.weights);
    CHECK(od.norms == od_ref.norms);
    check_gram(p, od, 2);
    return;
  }
  FAIL("no admissible (2,2) family found");
}

TEST_CASE("orthogonality across all truncation types and sizes") {
  testsupport::Rng rng(0x06A3u);
  int families = 0;
  for (const unsigned N : {2u, 4u, 6u}) {
    for (int set = 0; set < 3; ++set) {
      const auto fam = sample_family(TruncationKind::TypeI, N, rng);
      REQUIRE(fam.has_value());
      check_gram(fam->params, orthogonality_data(fam->params, fam->trunc), N);
      ++families;
    }
  }
  for (const unsigned N : {1u, 3u, 5u}) {
    for (int set = 0; set < 3; ++set) {
      const auto fam2 = sample_family(TruncationKind::TypeII, N, rng);
      REQUIRE(fam2.has_value());
      check_gram(fam2->params, orthogonality_data(fam2->params, fam2->trunc), N);
      const auto fam3 = sample_family(TruncationKind::TypeIII, N, rng);
      REQUIRE(fam3.has_value());
      check_gram(fam3->params, orthogonality_data(fam3->params, fam3->trunc), N);
      families += 2;
    }
  }
  CHECK(families == 27);
}

TEST_CASE("norms are consistent with the recurrence: h_n = h_0 u_1 ... u_n") {
  testsupport::Rng rng(0x40F2u);
  for (const auto [kind, N] : {std::pair{TruncationKind::TypeI, 4u},
                               std::pair{TruncationKind::TypeII, 5u},
                               std::pair{TruncationKind::TypeIII, 5u}}) {
    const auto fam = sample_family(kind, N, rng);
    REQUIRE(fam.has_value());
    const OrthogonalityData od = orthogonality_data(fam->params, fam->trunc);
    ExactScalar expected = od.norms[0];
    for (unsigned n = 1; n <= N; ++n) {
      expected *= u_coeff(fam->params, n);
      CHECK(od.norms[n] == expected);
    }
  }
}

TEST_CASE("positivity of weights and norms on sampled admissible families") {
  testsupport::Rng rng(0x90D1u);
  for (const auto [kind, N] : {std::pair{TruncationKind::TypeI, 4u},
                               std::pair{TruncationKind::TypeII, 3u},
                               std::pair{TruncationKind::TypeIII, 5u}}) {
    const auto fam = sample_family(kind, N, rng);
    REQUIRE(fam.has_value());
    for (unsigned n = 1; n <= N; ++n) {
      CHECK(u_coeff(fam->params, n).sign() > 0);
    }
    const OrthogonalityData od = orthogonality_data(fam->params, fam->trunc);
    for (unsigned k = 0; k <= N; ++k) {
      CHECK(od.weights[k].sign() > 0);
      CHECK(od.norms[k].sign() > 0);
    }
  }
}

TEST_CASE("orthogonality data rejects bad truncations") {
  const UniBIParams p{ExactScalar(1, 3), ExactScalar(1, 3), ExactScalar(4, 3), ExactScalar(4, 3)};
  const TruncationType t4 = detect_truncation(p, 3);
  REQUIRE(t4.kind == TruncationKind::TypeIVInadmissible);
  CHECK_THROWS_AS(orthogonality_data(p, t4), bannai::InadmissibleError);

  const UniBIParams q{ExactScalar(1, 5), ExactScalar(1, 7), ExactScalar(1, 11), ExactScalar(1, 13)};
  CHECK_THROWS_AS(orthogonality_data(q, detect_truncation(q, 2)), bannai::InadmissibleError);
}

TEST_CASE("orthogonality data names the vanishing pole factor") {
  // rho1 + r2 + 1/2 = 0 zeroes a weight denominator at k = 1.
  const UniBIParams p{ExactScalar(1, 4), ExactScalar(1, 3), ExactScalar(7, 4), ExactScalar(-3, 4)};
  const TruncationType t = detect_truncation(p, 2);
  REQUIRE(t.kind == TruncationKind::TypeI);
  try {
    (void)orthogonality_data(p, t);
    FAIL("expected PoleError");
  } catch (const bannai::PoleError& e) {
    CHECK(std::string(e.what()).find("vanishes") != std::string::npos);
  }
}

TEST_CASE("dunkl eigenvalues") {
  CHECK(dunkl_eigenvalue(kZeroParams, 0) == ExactScalar(0));
  CHECK(dunkl_eigenvalue(kZeroParams, 4) == ExactScalar(2));
  CHECK(dunkl_eigenvalue(kZeroParams, 1) == ExactScalar(-1));
  testsupport::Rng rng(0xE16u);
  const UniBIParams p = random_params(rng);
  CHECK(dunkl_eigenvalue(p, 6) == ExactScalar(3));
  CHECK(dunkl_eigenvalue(p, 3) == p.r1 + p.r2 - p.rho1 - p.rho2 - ExactScalar(2));
}

TEST_CASE("dunkl operator pole points") {
  const auto one = [](const ExactScalar&) { return ExactScalar(1); };
  CHECK_THROWS_AS(dunkl_apply(kZeroParams, one, ExactScalar(0)), bannai::PoleError);
  CHECK_THROWS_AS(dunkl_apply(kZeroParams, one, ExactScalar(-1, 2)), bannai::PoleError);
  CHECK(dunkl_apply(kZeroParams, one, ExactScalar(2, 3)) == ExactScalar(0));
}

TEST_CASE("dunkl eigenequation on B_n") {
  testsupport::Rng rng(0xD07u);
  for (int set = 0; set < 20; ++set) {
    const UniBIParams p = random_regular_params(rng, 8);
    for (unsigned n = 0; n <= 8; ++n) {
      const auto f = [&](const ExactScalar& y) { return eval_recurrence(p, n, y); };
      const ExactScalar lambda = dunkl_eigenvalue(p, n);
      unsigned hits = 0;
      long k = 1;
      while (hits < n + 2) {
        const ExactScalar x(2 * k + 1, 4); // grid 3/4, 5/4, ... avoids 0 and -1/2
        ++k;
        ++hits;
        CHECK(dunkl_apply(p, f, x) == lambda * f(x));
      }
    }
  }
}
