#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bannai/exact.hpp"

namespace bannai::uni {

/// Parameter 4-tuple of a univariate Bannai-Ito family. The polynomials are
/// invariant under rho1 <-> rho2 and r1 <-> r2.
struct UniBIParams {
  ExactScalar rho1;
  ExactScalar rho2;
  ExactScalar r1;
  ExactScalar r2;

  ExactScalar g() const { return rho1 + rho2 - r1 - r2; }

  UniBIParams swap_rho() const { return {rho2, rho1, r1, r2}; }
  UniBIParams swap_r() const { return {rho1, rho2, r2, r1}; }

  friend bool operator==(const UniBIParams&, const UniBIParams&) = default;
};

enum class TruncationKind {
  TypeI,              // r_j - rho_l = (N+1)/2, N even
  TypeII,             // rho1 + rho2 = -(N+1)/2, N odd
  TypeIII,            // r1 + r2 = (N+1)/2, N odd
  TypeIVInadmissible, // g = -(N+1)/2, N odd; u_n singular, rejected
  None
};

struct TruncationType {
  TruncationKind kind = TruncationKind::None;
  unsigned N = 0;
  // Type I only: which difference r_j - rho_l realizes the truncation.
  unsigned j = 1;
  unsigned l = 1;

  friend bool operator==(const TruncationType&, const TruncationType&) = default;
};

/// Grid, weights and norms of a finite orthogonal family; all of length N+1.
/// sum_k w_k B_n(x_k) B_m(x_k) = h_n delta_{nm} exactly.
struct OrthogonalityData {
  std::vector<ExactScalar> grid;
  std::vector<ExactScalar> weights;
  std::vector<ExactScalar> norms;
};

struct RecurrenceCoeffs {
  ExactScalar A;
  ExactScalar C;
};

/// The parity-branched recurrence coefficients A_n, C_n. C_0 is exactly 0 (its
/// printed formula carries the factor n). Throws PoleError when n+g+1 = 0 (A_n)
/// or n+g = 0 (C_n, n >= 1).
RecurrenceCoeffs recurrence_coeffs(const UniBIParams& params, unsigned n);

/// u_n = A_{n-1} C_n, the positivity/truncation quantity; defined for n >= 1.
ExactScalar u_coeff(const UniBIParams& params, unsigned n);

/// Monic B_n(x) by forward three-term recurrence. Canonical evaluator.
ExactScalar eval_recurrence(const UniBIParams& params, unsigned n, const ExactScalar& x);

/// B_0(x), ..., B_n(x) in one forward pass.
std::vector<ExactScalar> eval_recurrence_upto(const UniBIParams& params, unsigned n,
                                              const ExactScalar& x);

/// eta_n, the exact factor between monic B_n and its two-series 4F3 form:
///   (-1)^n (rho1-r1+1/2)_{ne+np} (rho2-r1+1/2)_{ne+np} (1-r1-r2)_{ne}
///   / (ne+g+1)_{ne+np}
/// with n = 2 ne + np. May legitimately be zero; throws NormalizationError
/// only when the denominator Pochhammer vanishes (eta undefined).
ExactScalar hyper_normalization(const UniBIParams& params, unsigned n);

/// Monic B_n(x) as eta_n times a sum of two terminating 4F3 series at unit
/// argument. Cross-check evaluator; throws NormalizationError when eta_n is
/// zero or undefined or a lower Pochhammer vanishes inside the terminating
/// range (callers should fall back to eval_recurrence).
ExactScalar eval_hypergeometric(const UniBIParams& params, unsigned n, const ExactScalar& x);

/// Classifies which truncation condition u_{N+1} = 0 the parameters realize.
/// Type I pairs (j,l) are scanned in lexicographic order.
TruncationType detect_truncation(const UniBIParams& params, unsigned N);

/// Grid, weights and norms for a realized truncation. Type I data is computed
/// after canonicalizing to j = l = 1 via the symmetry swaps. Throws
/// InadmissibleError for type IV (or an unrealized truncation) and PoleError
/// naming any vanishing denominator factor.
OrthogonalityData orthogonality_data(const UniBIParams& params, const TruncationType& trunc);

using EvalFn = std::function<ExactScalar(const ExactScalar&)>;

/// Applies the Dunkl shift operator
///   (x-rho1)(x-rho2)/(2x) (1 - R) + (x-r1+1/2)(x-r2+1/2)/(2x+1) (T^1 R - 1)
/// to f at x, where (R f)(x) = f(-x) and (T^1 R f)(x) = f(-x-1).
/// Throws PoleError at x in {0, -1/2}.
ExactScalar dunkl_apply(const UniBIParams& params, const EvalFn& f, const ExactScalar& x);

/// Dunkl eigenvalue on B_n: n/2 for even n, r1+r2-rho1-rho2-(n+1)/2 for odd n.
ExactScalar dunkl_eigenvalue(const UniBIParams& params, unsigned n);

} // namespace bannai::uni
