#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bannai/exact.hpp"
#include "bannai/univariate.hpp"

namespace bannai::biv {

// Parameters of the truncated bivariate family: four rationals and the
// truncation degree N bounding the total degree n1 + n2.
struct BivTruncParams {
  ExactScalar p1, p2, p3, c;
  unsigned N = 0;
};

// Parameters of the untruncated bivariate family.
struct BivFreeParams {
  ExactScalar alpha, beta, gamma, delta, epsilon;
};

// Univariate parameter sets induced by the truncated definition. The first
// factor's parameters depend on the second variable, the second factor's on
// the first degree and on N.
uni::UniBIParams def1_factor1_params(const BivTruncParams& params, const ExactScalar& z2);
uni::UniBIParams def1_factor2_params(const BivTruncParams& params, unsigned n1);

// Univariate parameter sets induced by the untruncated definition.
uni::UniBIParams def2_factor1_params(const BivFreeParams& params, const ExactScalar& z2);
uni::UniBIParams def2_factor2_params(const BivFreeParams& params, unsigned n1);

// B_{n1,n2}(z1,z2) of the truncated family: product of the two univariate
// factors at arguments z1 - 1/4 and (-1)^{n1} z2 - 1/4.
// Throws DegreeError when n1 + n2 > N.
ExactScalar eval_def1(const BivTruncParams& params, unsigned n1, unsigned n2,
                      const ExactScalar& z1, const ExactScalar& z2);

// B_{n1,n2}(z1,z2) of the untruncated family. No degree cap.
ExactScalar eval_def2(const BivFreeParams& params, unsigned n1, unsigned n2,
                      const ExactScalar& z1, const ExactScalar& z2);

// Parameter substitution mapping the untruncated family onto the truncated
// one: eval_def2(reduce_def2_to_def1(P), ...) == eval_def1(P, ...).
BivFreeParams reduce_def2_to_def1(const BivTruncParams& params);

// Orthogonality lattice of the truncated family: grids, the two weight
// families, and the normalization table over the simplex n1 + n2 <= N.
struct BivLattice {
  unsigned N = 0;
  std::vector<std::vector<ExactScalar>> z1;  // [r][s], r,s in 0..N
  std::vector<ExactScalar> z2;               // [s]
  std::vector<std::vector<ExactScalar>> w1;  // [r][s] = w1 weight at (r, N-s)
  std::vector<ExactScalar> w2;               // [s]
  std::vector<std::vector<ExactScalar>> h;   // [n1][n2], n2 <= N - n1

  // Checked access to the normalization table. Throws DegreeError when
  // n1 + n2 > N.
  const ExactScalar& H(unsigned n1, unsigned n2) const;
};

BivLattice build_lattice(const BivTruncParams& params);

// Norm of the first-factor family with truncation parameter m = N - s,
// branch-keyed by the parities of n1 and m. Zero when n1 > m.
ExactScalar h1_norm(const BivTruncParams& params, unsigned n1, unsigned m);

// Exact residual report for the full orthogonality relation: every Gram
// entry over the simplex, off-diagonals against zero, diagonals against H,
// and the full-range sum against the triangular-range sum.
struct OrthoReport {
  unsigned N = 0;
  unsigned long pairs = 0;
  ExactScalar max_offdiag;
  ExactScalar max_diag_error;
  ExactScalar max_range_error;
  std::string worst_case;  // empty when all residuals vanish

  bool clean() const {
    return max_offdiag.is_zero() && max_diag_error.is_zero() && max_range_error.is_zero();
  }
};

OrthoReport orthogonality_check(const BivTruncParams& params);

// Monomial coefficients of a bivariate polynomial, c[i][j] multiplying
// z1^i z2^j.
struct BivExpansion {
  unsigned n1 = 0, n2 = 0;
  std::vector<std::vector<ExactScalar>> coeff;

  const ExactScalar& coefficient(unsigned i, unsigned j) const;
  unsigned degree_z1() const;
  unsigned total_degree() const;
};

using BivEvaluator = std::function<ExactScalar(const ExactScalar&, const ExactScalar&)>;

// Recovers the monomial expansion of an evaluator expected to be a
// polynomial of total degree n1 + n2 with z1-degree n1, by exact
// interpolation on a tensor grid of nodes k + 3/8 (clear of the +-1/4
// operator poles). Certifies the degree bounds and cross-checks the
// expansion against the evaluator at an off-grid point; any violation
// throws InterpolationError.
BivExpansion expand_polynomial(const BivEvaluator& f, unsigned n1, unsigned n2);

}  // namespace bannai::biv
