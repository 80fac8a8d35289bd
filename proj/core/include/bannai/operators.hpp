#pragma once

#include <array>
#include <functional>

#include "bannai/bivariate.hpp"
#include "bannai/exact.hpp"

namespace bannai::ops {

using biv::BivFreeParams;
using BivFn = std::function<ExactScalar(const ExactScalar&, const ExactScalar&)>;

// Argument map of the half-shift/reflection word T^{i/2} R^i on one variable:
// identity for i = 0, z -> -z + i/2 for i = +-1 (shift first, then reflect).
ExactScalar shift_reflect_argument(const ExactScalar& z, int i);

// One term of a shift-reflect operator sum: a rational coefficient times the
// word T^{i/2}R^i acting on z1 composed with T^{j/2}R^j acting on z2.
struct ShiftReflectTerm {
  int i = 0;
  int j = 0;
  std::function<ExactScalar(const ExactScalar&, const ExactScalar&)> coefficient;
};

// The nine terms of L2. Coefficients throw PoleError when evaluated at
// z1 = +-1/4 or z2 = +-1/4.
std::array<ShiftReflectTerm, 9> l2_terms(const BivFreeParams& params);

// (L1 f)(z1, z2): a Dunkl-type operator in the first variable with
// half-shifts. Throws PoleError at z1 = +-1/4.
ExactScalar apply_L1(const BivFreeParams& params, const BivFn& f, const ExactScalar& z1,
                     const ExactScalar& z2);

// (L2 f)(z1, z2): the nine-term shift-reflect operator mixing both
// variables. Throws PoleError at z1 = +-1/4 or z2 = +-1/4.
ExactScalar apply_L2(const BivFreeParams& params, const BivFn& f, const ExactScalar& z1,
                     const ExactScalar& z2);

// L1 eigenvalue on B_{n1,n2}: n1/2 for even n1,
// -n1/2 + alpha - beta - 2 epsilon for odd n1.
ExactScalar eigenvalue_L1(const BivFreeParams& params, unsigned n1);

// L2 eigenvalue on B_{n1,n2}: (n1+n2)/2 for even total degree,
// alpha - beta - gamma - delta - 2 epsilon - (n1+n2+1)/2 for odd.
ExactScalar eigenvalue_L2(const BivFreeParams& params, unsigned n1, unsigned n2);

// Residual of the second-variable three-term recurrence at one point:
//   ((-1)^{n1} z2 - 1/4) B_{n1,n2}
//     - B_{n1,n2+1} - b_{n2} B_{n1,n2} - u_{n2} B_{n1,n2-1}
// with b, u the recurrence data of the second factor family.
ExactScalar three_term_step(const BivFreeParams& params, unsigned n1, unsigned n2,
                            const ExactScalar& z1, const ExactScalar& z2);

// The nine coefficients of the first-variable recurrence, 1-indexed to match
// the term order: (n1+1,n2), (n1+1,n2-1), (n1+1,n2-2), (n1,n2+1), (n1,n2),
// (n1,n2-1), (n1-1,n2+2), (n1-1,n2+1), (n1-1,n2).
struct NineTermCoeffs {
  std::array<ExactScalar, 9> theta;

  const ExactScalar& operator[](unsigned k) const { return theta.at(k - 1); }
};

// Throws PoleError naming any vanishing denominator.
NineTermCoeffs nine_term_coeffs(const BivFreeParams& params, unsigned n1, unsigned n2);

// Residual of the nine-term recurrence
//   (z1 - alpha^2 + beta^2) B_{n1,n2} = sum_k theta_k B_{index(k)}
// at one point; terms whose degree index would go negative are dropped.
ExactScalar nine_term_residual(const BivFreeParams& params, unsigned n1, unsigned n2,
                               const ExactScalar& z1, const ExactScalar& z2);

}  // namespace bannai::ops
