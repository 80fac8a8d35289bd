#pragma once

#include <mpfr.h>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bannai/bigfloat.hpp"
#include "bannai/bivariate.hpp"
#include "bannai/exact.hpp"

namespace bannai::qlimit {

// One value of the deformation parameter: q = -exp(t) at a fixed working
// precision. Construction throws PrecisionError unless t is strictly positive
// and large enough that 1 + q = 1 - exp(t) keeps at least half the working
// bits, i.e. exp(t) - 1 >= 2^(-prec/2).
struct QContext {
  ExactScalar t_exact;
  BigFloat t;
  BigFloat q;
  mpfr_prec_t prec;

  QContext(const ExactScalar& t_value, mpfr_prec_t precision);
};

// The exact affine dictionaries carrying Bannai-Ito data to the exponents of
// the two q-side realizations. Both maps are affine and invertible; only the
// fixed phase patterns below are implemented.
struct ReparamMap {
  // Exponents of the q-Racah realization
  //   a1 = -e^{t a1e}, a2 = e^{t a2e}, a3 = e^{t a3e}, b = -e^{t be},
  //   q^{x1} = e^{t y1}, q^{x2} = e^{t y2}.
  struct QRacahExponents {
    ExactScalar a1e, a2e, a3e, be, y1, y2;
  };

  // Exponents of the Askey-Wilson realization
  //   a = i e^{t ae}, b = -i e^{t be}, c = i e^{t ce}, d = -i e^{t de},
  //   a2 = e^{t a2e}, and carriers z1 = i e^{t y1}, z2 = i e^{t y2}.
  // The phase i on the carriers is forced: it is the unique choice under
  // which the induced parameters a2 z2^{+-1} of the first factor inherit the
  // +-i pattern of the c and d slots and every coefficient limit below stays
  // finite and real.
  struct AWExponents {
    ExactScalar ae, be, ce, de, a2e, y1, y2;
  };

  static QRacahExponents q_racah(const biv::BivTruncParams& params, const ExactScalar& z1,
                                 const ExactScalar& z2);
  static AWExponents askey_wilson(const biv::BivFreeParams& params, const ExactScalar& z1,
                                  const ExactScalar& z2);
};

// q-Racah side values under the fixed phase pattern at one t. All entries are
// real; they are carried as complex numbers for uniformity with the
// Askey-Wilson side.
struct QRacahParams {
  BigComplex a1, a2, a3, b;
  BigComplex qx1, qx2;  // values of q^{x1}, q^{x2}
  unsigned N = 0;
};

// Askey-Wilson side values under the fixed phase pattern at one t.
struct QAWParams {
  BigComplex a, b, c, d, a2;
  BigComplex z1, z2;  // carriers; purely imaginary under the realization
};

QRacahParams realize_q_racah(const QContext& ctx, const ReparamMap::QRacahExponents& e,
                             unsigned N);
QAWParams realize_askey_wilson(const QContext& ctx, const ReparamMap::AWExponents& e);

// (u; q)_n = prod_{k<n} (1 - u q^k).
BigComplex q_pochhammer(const BigComplex& u, const BigComplex& q, unsigned n);

// Values of the two terminating 4phi3 factors of the bivariate q-Racah
// product at degrees (n1, n2). Requires n1 + n2 <= N (the second factor's
// lower parameter q^{n1-N} walls off longer sums). Throws PrecisionError when
// a sum cancels past half the working bits.
std::pair<BigComplex, BigComplex> q_racah_pair(const QContext& ctx, const QRacahParams& p,
                                               unsigned n1, unsigned n2);

// Values of the two Askey-Wilson 4phi3 factors at degrees (n1, n2): the first
// in the carrier z1 with parameters (a, b, a2 z2, a2 / z2), the second in z2
// with parameters (a a2 q^{n1}, b a2 q^{n1}, c, d).
std::pair<BigComplex, BigComplex> aw_pair(const QContext& ctx, const QAWParams& p, unsigned n1,
                                          unsigned n2);

// Normalizations of the renormalized Askey-Wilson family:
//   xi_n(a, b, c, d) = (ab; q)_n (ac; q)_n (ad; q)_n / a^n,
//   zeta_{n1,n2} = c^{n1+n2} a2^{n1} / ((a2^2; q)_{n1} (a c a2; q)_{n1+n2}
//                  (b c a2; q)_{n1+n2} (c d; q)_{n2}),
// and the full factor zeta_{n1,n2} xi_{n1}(a, b, a2 z2, a2/z2)
// xi_{n2}(a a2 q^{n1}, b a2 q^{n1}, c, d).
BigComplex aw_xi(const QContext& ctx, const BigComplex& a, const BigComplex& b,
                 const BigComplex& c, const BigComplex& d, unsigned n);
BigComplex aw_zeta(const QContext& ctx, const QAWParams& p, unsigned n1, unsigned n2);
BigComplex aw_normalization(const QContext& ctx, const QAWParams& p, unsigned n1, unsigned n2);

// Coefficient C_{i,j}, i, j in {-1, 0, 1}, of the q-difference operator
// sum C_{i,j} E_{q,z1}^i E_{q,z2}^j with E_{q,z}: z -> qz. Throws PoleError
// when a carrier denominator vanishes (these sit over the +-1/4 poles of the
// limit coefficients).
BigComplex operator_coefficient_q(const QContext& ctx, const QAWParams& p, int i, int j);

// Eigenvalue (q^{-n1-n2} - 1)(1 - a a2^2 b c d q^{n1+n2-1}).
BigComplex operator_eigenvalue_q(const QContext& ctx, const QAWParams& p, unsigned n1,
                                 unsigned n2);

// Recurrence coefficient tau^{(k)}, k = 1..9, of the nine-term relation for
// the renormalized family, in the term order (n1+1,n2), (n1+1,n2-1),
// (n1+1,n2-2), (n1,n2+1), (n1,n2), (n1,n2-1), (n1-1,n2+2), (n1-1,n2+1),
// (n1-1,n2).
BigComplex recurrence_coefficient_q(const QContext& ctx, const QAWParams& p, unsigned n1,
                                    unsigned n2, unsigned k);

// Left-hand multiplier c a2 ((a+b)(ab+q)/(ab(1+q)) - z1 - 1/z1) of the
// nine-term relation.
BigComplex recurrence_bracket_q(const QContext& ctx, const QAWParams& p);

// One measured limit: errors |value(t_k) - target| over the t sequence, the
// empirical order log(e_{k-1}/e_k)/log(t_{k-1}/t_k) from the last two values,
// and the largest |Im| among the compared values. A case passes when the
// imaginary parts stay below 2^(-prec/2) and either the order reaches the
// gate or the final error already sits at the roundoff floor 2^(-prec/2).
struct ConvergenceCase {
  std::string label;
  std::vector<double> error;
  double order = 0.0;
  bool at_floor = false;
  double max_imag = 0.0;
  bool pass = false;
};

struct ConvergenceReport {
  std::string check;
  std::vector<ExactScalar> ts;
  mpfr_prec_t prec = 0;
  std::vector<ConvergenceCase> cases;

  bool pass() const;
  double min_order() const;
  double max_imag() const;
};

inline constexpr double kOrderGate = 0.9;

// |R1 R2 - B_{n1,n2} / (eta1 eta2)| over the t sequence: the truncated-family
// target of the q-Racah product. Requires n1 + n2 <= N.
ConvergenceReport check_poly_limit(const biv::BivTruncParams& params, unsigned n1, unsigned n2,
                                   const ExactScalar& z1, const ExactScalar& z2,
                                   const std::vector<ExactScalar>& ts, mpfr_prec_t prec);

// |p1 p2 - B_{n1,n2} / (eta1 eta2)| over the t sequence: the untruncated
// target of the Askey-Wilson product.
ConvergenceReport check_poly_limit(const biv::BivFreeParams& params, unsigned n1, unsigned n2,
                                   const ExactScalar& z1, const ExactScalar& z2,
                                   const std::vector<ExactScalar>& ts, mpfr_prec_t prec);

// Nine coefficient limits C_{i,j}/(4(1+q)) toward the shift-reflect operator
// coefficients at the point, plus eigenvalue limits Lambda/(4(1+q)) at the
// given degrees.
ConvergenceReport check_operator_limit(const biv::BivFreeParams& params, const ExactScalar& z1,
                                       const ExactScalar& z2,
                                       const std::vector<std::pair<unsigned, unsigned>>& degrees,
                                       const std::vector<ExactScalar>& ts, mpfr_prec_t prec);

// Nine recurrence-coefficient limits at degrees (n1, n2): normalization-ratio
// corrected tau^{(k)}/(4(1+q)) toward theta^{(k)}, plus the left-multiplier
// limit toward z1 - alpha^2 + beta^2. Positions whose target degree leaves
// the quadrant must come out exactly zero on both sides.
ConvergenceReport check_recurrence_limit(const biv::BivFreeParams& params, unsigned n1,
                                         unsigned n2, const ExactScalar& z1,
                                         const ExactScalar& z2,
                                         const std::vector<ExactScalar>& ts, mpfr_prec_t prec);

}  // namespace bannai::qlimit
