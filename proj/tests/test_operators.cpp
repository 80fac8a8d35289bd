#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <utility>
#include <vector>

#include "bannai/bivariate.hpp"
#include "bannai/errors.hpp"
#include "bannai/operators.hpp"
#include "test_support.hpp"

using bannai::ExactScalar;
using bannai::biv::BivFreeParams;
using namespace bannai::ops;

namespace {

ExactScalar Q(const char* s) { return ExactScalar::parse(s); }

const BivFreeParams kF{Q("1/3"), Q("2/5"), Q("3/7"), Q("1/2"), Q("2/7")};

const std::vector<std::pair<ExactScalar, ExactScalar>> kPts = {
    {Q("1/3"), Q("2/7")}, {Q("-2/5"), Q("1/9")}, {Q("5/4"), Q("-3/8")}};

BivFn member(const BivFreeParams& f, unsigned n1, unsigned n2) {
  return [f, n1, n2](const ExactScalar& z1, const ExactScalar& z2) {
    return bannai::biv::eval_def2(f, n1, n2, z1, z2);
  };
}

// Free parameters for which every operator identity below is pole-free at
// the probe points up to the given total degree.
BivFreeParams sample_operator_params(testsupport::Rng& rng, unsigned max_total) {
  for (;;) {
    BivFreeParams f{rng.rational(4, 7), rng.rational(4, 7), rng.rational(4, 7),
                    rng.rational(4, 7), rng.rational(4, 7)};
    try {
      for (unsigned n1 = 0; n1 <= max_total; ++n1) {
        for (unsigned n2 = 0; n1 + n2 <= max_total; ++n2) {
          (void)nine_term_coeffs(f, n1, n2);
          for (const auto& pt : kPts) {
            const BivFn b = member(f, n1, n2);
            (void)apply_L1(f, b, pt.first, pt.second);
            (void)apply_L2(f, b, pt.first, pt.second);
            (void)three_term_step(f, n1, n2, pt.first, pt.second);
            (void)nine_term_residual(f, n1, n2, pt.first, pt.second);
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

TEST_CASE("shift-reflect argument maps") {
  const ExactScalar z = Q("3/7");
  CHECK(shift_reflect_argument(z, 0) == z);
  CHECK(shift_reflect_argument(z, 1) == -z + Q("1/2"));
  CHECK(shift_reflect_argument(z, -1) == -z - Q("1/2"));
}

TEST_CASE("the nine operator terms enumerate the index square") {
  const auto terms = l2_terms(kF);
  int seen[3][3] = {};
  for (const auto& t : terms) {
    REQUIRE(t.i >= -1);
    REQUIRE(t.i <= 1);
    REQUIRE(t.j >= -1);
    REQUIRE(t.j <= 1);
    ++seen[t.i + 1][t.j + 1];
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(seen[a][b] == 1);
    }
  }
}

TEST_CASE("coefficient sum vanishes so constants are annihilated") {
  const auto terms = l2_terms(kF);
  for (const auto& pt : kPts) {
    ExactScalar sum(0);
    for (const auto& t : terms) {
      sum += t.coefficient(pt.first, pt.second);
    }
    CHECK(sum.is_zero());
    CHECK(apply_L2(kF, member(kF, 0, 0), pt.first, pt.second).is_zero());
  }
}

TEST_CASE("operator poles raise errors") {
  const BivFn b = member(kF, 1, 1);
  CHECK_THROWS_AS((void)apply_L1(kF, b, Q("1/4"), Q("1/3")), bannai::PoleError);
  CHECK_THROWS_AS((void)apply_L2(kF, b, Q("1/3"), Q("-1/4")), bannai::PoleError);
  const auto terms = l2_terms(kF);
  CHECK_THROWS_AS((void)terms[0].coefficient(Q("-1/4"), Q("1/3")),
                  bannai::PoleError);
}

TEST_CASE("eigenvalue tables at pinned degrees") {
  CHECK(eigenvalue_L1(kF, 0).is_zero());
  CHECK(eigenvalue_L1(kF, 2) == ExactScalar(1));
  CHECK(eigenvalue_L1(kF, 4) == ExactScalar(2));
  CHECK(eigenvalue_L1(kF, 1) ==
        Q("-1/2") + kF.alpha - kF.beta - ExactScalar(2) * kF.epsilon);
  CHECK(eigenvalue_L2(kF, 0, 0).is_zero());
  CHECK(eigenvalue_L2(kF, 1, 1) == ExactScalar(1));
  CHECK(eigenvalue_L2(kF, 2, 2) == ExactScalar(2));
  CHECK(eigenvalue_L2(kF, 0, 1) ==
        kF.alpha - kF.beta - kF.gamma - kF.delta - ExactScalar(2) * kF.epsilon -
            ExactScalar(1));
  CHECK(eigenvalue_L2(kF, 1, 2) == eigenvalue_L2(kF, 3, 0));
}

TEST_CASE("first operator is diagonal on the family") {
  testsupport::Rng rng(424242);
  for (int rep = 0; rep < 2; ++rep) {
    const BivFreeParams f = sample_operator_params(rng, 4);
    for (unsigned n1 = 0; n1 <= 4; ++n1) {
      for (unsigned n2 = 0; n1 + n2 <= 4; ++n2) {
        const BivFn b = member(f, n1, n2);
        const ExactScalar mu = eigenvalue_L1(f, n1);
        for (const auto& pt : kPts) {
          CHECK(apply_L1(f, b, pt.first, pt.second) ==
                mu * b(pt.first, pt.second));
        }
      }
    }
  }
}

TEST_CASE("second operator is diagonal on the family") {
  testsupport::Rng rng(53715);
  for (int rep = 0; rep < 2; ++rep) {
    const BivFreeParams f = sample_operator_params(rng, 4);
    for (unsigned n1 = 0; n1 <= 4; ++n1) {
      for (unsigned n2 = 0; n1 + n2 <= 4; ++n2) {
        const BivFn b = member(f, n1, n2);
        const ExactScalar lam = eigenvalue_L2(f, n1, n2);
        for (const auto& pt : kPts) {
          CHECK(apply_L2(f, b, pt.first, pt.second) ==
                lam * b(pt.first, pt.second));
        }
      }
    }
  }
}

TEST_CASE("second-variable recurrence closes exactly") {
  testsupport::Rng rng(90125);
  const BivFreeParams f = sample_operator_params(rng, 5);
  for (unsigned n1 = 0; n1 <= 5; ++n1) {
    for (unsigned n2 = 0; n1 + n2 <= 5; ++n2) {
      for (const auto& pt : kPts) {
        CHECK(three_term_step(f, n1, n2, pt.first, pt.second).is_zero());
      }
    }
  }
}

TEST_CASE("first-variable nine-term recurrence closes exactly") {
  testsupport::Rng rng(80081);
  const BivFreeParams f = sample_operator_params(rng, 5);
  for (unsigned n1 = 0; n1 <= 5; ++n1) {
    for (unsigned n2 = 0; n1 + n2 <= 5; ++n2) {
      for (const auto& pt : kPts) {
        CHECK(nine_term_residual(f, n1, n2, pt.first, pt.second).is_zero());
      }
    }
  }
}

TEST_CASE("leading nine-term coefficient alternates with n2") {
  for (unsigned n1 : {0u, 1u, 2u}) {
    for (unsigned n2 : {0u, 1u, 2u, 3u}) {
      const auto th = nine_term_coeffs(kF, n1, n2);
      CHECK(th[1] == bannai::sign_pow(static_cast<long>(n2)));
    }
  }
}

TEST_CASE("nine-term coefficients name the vanishing denominator") {
  // alpha - beta - gamma - delta - 2 epsilon = n1 + n2 makes the shared
  // denominator vanish at (1, 1).
  BivFreeParams f = kF;
  f.alpha = f.beta + f.gamma + f.delta + ExactScalar(2) * f.epsilon + ExactScalar(2);
  try {
    (void)nine_term_coeffs(f, 1, 1);
    FAIL("expected a pole");
  } catch (const bannai::PoleError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("epsilon") != std::string::npos);
  }
}
