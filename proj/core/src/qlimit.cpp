#include "bannai/qlimit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bannai/errors.hpp"
#include "bannai/operators.hpp"
#include "bannai/univariate.hpp"

namespace bannai::qlimit {

namespace {

enum class Phase { plus_one, minus_one, plus_i, minus_i };

BigComplex phased_exp(const QContext& ctx, Phase ph, const ExactScalar& e) {
  const BigFloat mag = exp(ctx.t * BigFloat(e, ctx.prec));
  const BigFloat zero(0L, ctx.prec);
  switch (ph) {
    case Phase::plus_one:
      return BigComplex(mag, zero);
    case Phase::minus_one:
      return BigComplex(-mag, zero);
    case Phase::plus_i:
      return BigComplex(zero, mag);
    case Phase::minus_i:
    default:
      return BigComplex(zero, -mag);
  }
}

BigComplex one_c(mpfr_prec_t prec) { return BigComplex(BigFloat(1L, prec)); }

BigComplex qpow(const QContext& ctx, long m) { return pow_int(BigComplex(ctx.q), m); }

// 4(1+q), the scale every limit divides by.
BigComplex four_one_plus_q(const QContext& ctx) {
  return BigComplex(BigFloat(4L, ctx.prec) * (BigFloat(1L, ctx.prec) + ctx.q));
}

// Terminating 4phi3 with argument q, summed by term-ratio recursion. nterms
// is the termination degree carried by the leading q^{-n} slot.
BigComplex phi43(const QContext& ctx, const std::array<BigComplex, 4>& upper,
                 const std::array<BigComplex, 3>& lower, unsigned nterms,
                 const std::string& what) {
  const BigComplex one = one_c(ctx.prec);
  const BigComplex q(ctx.q);
  BigComplex term = one;
  BigComplex sum = one;
  BigComplex qk = one;  // q^k
  BigFloat peak = abs(term);
  for (unsigned k = 0; k < nterms; ++k) {
    BigComplex num = one;
    for (const auto& u : upper) num *= one - u * qk;
    BigComplex den = one - qk * q;  // factor from (q; q)_{k+1}
    for (const auto& l : lower) den *= one - l * qk;
    if (den.is_zero()) {
      throw PoleError(what + ": lower parameter wall inside the terminating sum at k = " +
                      std::to_string(k + 1));
    }
    term = term * num / den * q;
    sum += term;
    peak = std::max(peak, abs(term));
    qk *= q;
  }
  guard_cancellation(sum, peak, what);
  return sum;
}

// One convergence case from the per-t errors and imaginary magnitudes.
ConvergenceCase finish_case(std::string label, const std::vector<BigFloat>& errs,
                            const std::vector<BigFloat>& ims, const std::vector<BigFloat>& tvals,
                            mpfr_prec_t prec) {
  ConvergenceCase c;
  c.label = std::move(label);
  const BigFloat floor = BigFloat::pow2(-static_cast<long>(prec / 2), prec);
  BigFloat max_im(0L, prec);
  for (const auto& v : ims) {
    if (v > max_im) max_im = v;
  }
  c.max_imag = max_im.to_double();
  c.error.reserve(errs.size());
  for (const auto& e : errs) c.error.push_back(e.to_double());
  c.at_floor = !errs.empty() && errs.back() <= floor;
  const std::size_t n = errs.size();
  if (n >= 2 && errs[n - 2] > floor && errs[n - 1] > floor) {
    const double eratio = (errs[n - 2] / errs[n - 1]).to_double();
    const double tratio = (tvals[n - 2] / tvals[n - 1]).to_double();
    if (eratio > 0.0 && tratio > 0.0 && tratio != 1.0) {
      c.order = std::log(eratio) / std::log(tratio);
    }
  }
  c.pass = (max_im < floor) && (c.order >= kOrderGate || c.at_floor);
  return c;
}

}  // namespace

QContext::QContext(const ExactScalar& t_value, mpfr_prec_t precision)
    : t_exact(t_value), t(precision), q(precision), prec(precision) {
  if (precision < 8) {
    throw PrecisionError("working precision must be at least 8 bits");
  }
  if (t_value.sign() <= 0) {
    throw PrecisionError("deformation step t must be positive, got " + t_value.str());
  }
  t = BigFloat(t_value, precision);
  const BigFloat one(1L, precision);
  const BigFloat expt = exp(t);
  if (expt - one < BigFloat::pow2(-static_cast<long>(precision / 2), precision)) {
    throw PrecisionError("1 + q = 1 - exp(t) keeps fewer than half of the " +
                         std::to_string(precision) + " working bits at t = " + t_value.str());
  }
  q = -expt;
}

ReparamMap::QRacahExponents ReparamMap::q_racah(const biv::BivTruncParams& params,
                                                const ExactScalar& z1, const ExactScalar& z2) {
  const ExactScalar half(1, 2);
  QRacahExponents e;
  e.a1e = 4 * params.p1 - 1;
  e.a2e = 4 * params.p2;
  e.a3e = 4 * params.p3 + 1;
  e.be = 2 * params.c;
  e.y1 = half - 2 * z1 - 2 * params.p1;
  e.y2 = half - 2 * z2 - 2 * params.p1 - 2 * params.p2;
  return e;
}

ReparamMap::AWExponents ReparamMap::askey_wilson(const biv::BivFreeParams& params,
                                                 const ExactScalar& z1, const ExactScalar& z2) {
  const ExactScalar half(1, 2);
  AWExponents e;
  e.ae = half - 2 * params.alpha;
  e.be = 2 * params.beta + half;
  e.ce = 2 * params.gamma + half;
  e.de = 2 * params.delta + half;
  e.a2e = 2 * params.epsilon;
  e.y1 = -2 * z1;
  e.y2 = -2 * z2;
  return e;
}

QRacahParams realize_q_racah(const QContext& ctx, const ReparamMap::QRacahExponents& e,
                             unsigned N) {
  QRacahParams p{phased_exp(ctx, Phase::minus_one, e.a1e), phased_exp(ctx, Phase::plus_one, e.a2e),
                 phased_exp(ctx, Phase::plus_one, e.a3e),  phased_exp(ctx, Phase::minus_one, e.be),
                 phased_exp(ctx, Phase::plus_one, e.y1),   phased_exp(ctx, Phase::plus_one, e.y2),
                 N};
  return p;
}

QAWParams realize_askey_wilson(const QContext& ctx, const ReparamMap::AWExponents& e) {
  return QAWParams{phased_exp(ctx, Phase::plus_i, e.ae),   phased_exp(ctx, Phase::minus_i, e.be),
                   phased_exp(ctx, Phase::plus_i, e.ce),   phased_exp(ctx, Phase::minus_i, e.de),
                   phased_exp(ctx, Phase::plus_one, e.a2e), phased_exp(ctx, Phase::plus_i, e.y1),
                   phased_exp(ctx, Phase::plus_i, e.y2)};
}

BigComplex q_pochhammer(const BigComplex& u, const BigComplex& q, unsigned n) {
  const mpfr_prec_t prec = std::max(u.precision(), q.precision());
  const BigComplex one = one_c(prec);
  BigComplex result = one;
  BigComplex uq = u;
  for (unsigned k = 0; k < n; ++k) {
    result *= one - uq;
    uq *= q;
  }
  return result;
}

std::pair<BigComplex, BigComplex> q_racah_pair(const QContext& ctx, const QRacahParams& p,
                                               unsigned n1, unsigned n2) {
  if (n1 + n2 > p.N) {
    throw DegreeError("q-Racah product needs n1 + n2 <= N, got (" + std::to_string(n1) + ", " +
                      std::to_string(n2) + ") with N = " + std::to_string(p.N));
  }
  const BigComplex one = one_c(ctx.prec);
  const BigComplex q(ctx.q);
  const long ln1 = static_cast<long>(n1);
  const long ln2 = static_cast<long>(n2);
  const long lN = static_cast<long>(p.N);
  const BigComplex r1 =
      phi43(ctx, {qpow(ctx, -ln1), p.b * p.a2 * qpow(ctx, ln1), one / p.qx1, p.a1 * p.qx1},
            {p.b * q, p.a1 * p.a2 * p.qx2, one / p.qx2}, n1, "q-Racah first factor");
  const BigComplex r2 =
      phi43(ctx,
            {qpow(ctx, -ln2), p.b * p.a2 * p.a3 * qpow(ctx, 2 * ln1 + ln2),
             qpow(ctx, ln1) / p.qx2, p.a1 * p.a2 * qpow(ctx, ln1) * p.qx2},
            {p.b * p.a2 * qpow(ctx, 2 * ln1 + 1), p.a1 * p.a2 * p.a3 * qpow(ctx, lN + ln1),
             qpow(ctx, ln1 - lN)},
            n2, "q-Racah second factor");
  return {r1, r2};
}

std::pair<BigComplex, BigComplex> aw_pair(const QContext& ctx, const QAWParams& p, unsigned n1,
                                          unsigned n2) {
  const long ln1 = static_cast<long>(n1);
  const long ln2 = static_cast<long>(n2);
  // First factor: parameters (a, b, a2 z2, a2 / z2), carrier z1.
  const BigComplex c1 = p.a2 * p.z2;
  const BigComplex d1 = p.a2 / p.z2;
  const BigComplex f1 = phi43(
      ctx, {qpow(ctx, -ln1), p.a * p.b * c1 * d1 * qpow(ctx, ln1 - 1), p.a * p.z1, p.a / p.z1},
      {p.a * p.b, p.a * c1, p.a * d1}, n1, "Askey-Wilson first factor");
  // Second factor: parameters (a a2 q^{n1}, b a2 q^{n1}, c, d), carrier z2.
  const BigComplex a2f = p.a * p.a2 * qpow(ctx, ln1);
  const BigComplex b2f = p.b * p.a2 * qpow(ctx, ln1);
  const BigComplex f2 =
      phi43(ctx, {qpow(ctx, -ln2), a2f * b2f * p.c * p.d * qpow(ctx, ln2 - 1), a2f * p.z2,
                  a2f / p.z2},
            {a2f * b2f, a2f * p.c, a2f * p.d}, n2, "Askey-Wilson second factor");
  return {f1, f2};
}

BigComplex aw_xi(const QContext& ctx, const BigComplex& a, const BigComplex& b,
                 const BigComplex& c, const BigComplex& d, unsigned n) {
  const BigComplex q(ctx.q);
  const BigComplex an = pow_int(a, static_cast<long>(n));
  if (an.is_zero()) throw PoleError("xi normalization: vanishing leading parameter");
  return q_pochhammer(a * b, q, n) * q_pochhammer(a * c, q, n) * q_pochhammer(a * d, q, n) / an;
}

BigComplex aw_zeta(const QContext& ctx, const QAWParams& p, unsigned n1, unsigned n2) {
  const BigComplex q(ctx.q);
  const BigComplex den =
      q_pochhammer(p.a2 * p.a2, q, n1) * q_pochhammer(p.a * p.c * p.a2, q, n1 + n2) *
      q_pochhammer(p.b * p.c * p.a2, q, n1 + n2) * q_pochhammer(p.c * p.d, q, n2);
  if (den.is_zero()) {
    throw PoleError("zeta normalization: vanishing q-Pochhammer denominator");
  }
  return pow_int(p.c, static_cast<long>(n1) + n2) * pow_int(p.a2, static_cast<long>(n1)) / den;
}

BigComplex aw_normalization(const QContext& ctx, const QAWParams& p, unsigned n1, unsigned n2) {
  const BigComplex qn1 = qpow(ctx, static_cast<long>(n1));
  return aw_zeta(ctx, p, n1, n2) * aw_xi(ctx, p.a, p.b, p.a2 * p.z2, p.a2 / p.z2, n1) *
         aw_xi(ctx, p.a * p.a2 * qn1, p.b * p.a2 * qn1, p.c, p.d, n2);
}

BigComplex operator_coefficient_q(const QContext& ctx, const QAWParams& p, int i, int j) {
  if (i < -1 || i > 1 || j < -1 || j > 1) {
    throw Error("operator coefficient index must lie in {-1,0,1}^2");
  }
  const BigComplex one = one_c(ctx.prec);
  const BigComplex q(ctx.q);
  const BigComplex &z1 = p.z1, &z2 = p.z2, &a = p.a, &b = p.b, &c = p.c, &d = p.d, &a2 = p.a2;
  const BigComplex s1 = z1 * z1;
  const BigComplex s2 = z2 * z2;
  // Compound brackets shared by the middle row and column.
  const BigComplex gab = one + a * b / q - (s1 + one) * (a + b) / (z1 * (q + one));
  const BigComplex gcd = one + c * d / q - (s2 + one) * (c + d) / (z2 * (q + one));
  const BigComplex ga2 = one + a2 * a2 / q - a2 * (s1 + one) * (s2 + one) / (z1 * z2 * (q + one));

  const auto guard = [](BigComplex den) {
    if (den.is_zero()) {
      throw PoleError("operator coefficient: carrier denominator vanishes");
    }
    return den;
  };

  BigComplex num(ctx.prec);
  BigComplex den(ctx.prec);
  switch (i * 3 + j) {
    case -4:  // (-1,-1)
      num = -((z1 - a) * (z1 - b) * (z2 - c) * (z2 - d) * (z1 * z2 - a2) * (z1 * z2 - a2 * q));
      den = (s1 - one) * (s2 - one) * (s1 - q) * (q - s2);
      break;
    case -3:  // (-1,0)
      num = z2 * q * (q + one) * (z1 - a) * (z1 - b) * (z1 * z2 - a2) * (z1 - a2 * z2) * gcd;
      den = (s1 - one) * (s1 - q) * (q - s2) * (q * s2 - one);
      break;
    case -2:  // (-1,+1)
      num = (a - z1) * (z1 - b) * (c * z2 - one) * (one - d * z2) * (z1 - a2 * z2) *
            (z1 - a2 * q * z2);
      den = (s1 - one) * (s2 - one) * (s1 - q) * (q * s2 - one);
      break;
    case -1:  // (0,-1)
      num = z1 * q * (q + one) * (z2 - c) * (z2 - d) * (z1 * z2 - a2) * (z2 - a2 * z1) * gab;
      den = (s2 - one) * (s1 - q) * (one - q * s1) * (s2 - q);
      break;
    case 0:  // (0,0)
      return -one + a2 * (a + b) * (c + d) / (q + one) - a * a2 * a2 * b * c * d / q +
             s1 * s2 * q * q * (q + one) * (q + one) * gab * ga2 * gcd /
                 guard((s1 - q) * (one - q * s1) * (s2 - q) * (one - q * s2));
    case 1:  // (0,+1)
      num = z1 * q * (q + one) * (one - c * z2) * (one - d * z2) * (z1 - a2 * z2) *
            (one - a2 * z1 * z2) * gab;
      den = (one - s2) * (s1 - q) * (one - q * s1) * (one - q * s2);
      break;
    case 2:  // (+1,-1)
      num = (a * z1 - one) * (b * z1 - one) * (c - z2) * (z2 - d) * (a2 * z1 - z2) *
            (a2 * q * z1 - z2);
      den = (s1 - one) * (s2 - one) * (q * s1 - one) * (q - s2);
      break;
    case 3:  // (+1,0)
      num = z2 * q * (q + one) * (one - a * z1) * (one - b * z1) * (z2 - a2 * z1) *
            (one - a2 * z1 * z2) * gcd;
      den = (s1 - one) * (q * s1 - one) * (q - s2) * (q * s2 - one);
      break;
    case 4:  // (+1,+1)
    default:
      num = -((a * z1 - one) * (b * z1 - one) * (c * z2 - one) * (one - d * z2) *
              (a2 * z1 * z2 - one) * (a2 * q * z1 * z2 - one));
      den = (s1 - one) * (s2 - one) * (q * s1 - one) * (q * s2 - one);
      break;
  }
  return num / guard(den);
}

BigComplex operator_eigenvalue_q(const QContext& ctx, const QAWParams& p, unsigned n1,
                                 unsigned n2) {
  const BigComplex one = one_c(ctx.prec);
  const long n = static_cast<long>(n1) + static_cast<long>(n2);
  const BigComplex prod = p.a * p.a2 * p.a2 * p.b * p.c * p.d;
  return (qpow(ctx, -n) - one) * (one - prod * qpow(ctx, n - 1));
}

BigComplex recurrence_coefficient_q(const QContext& ctx, const QAWParams& p, unsigned n1,
                                    unsigned n2, unsigned k) {
  if (k < 1 || k > 9) {
    throw Error("recurrence coefficient index must lie in 1..9");
  }
  const BigComplex one = one_c(ctx.prec);
  const BigComplex q(ctx.q);
  const BigComplex q2 = q * q;
  const BigComplex &a = p.a, &b = p.b, &c = p.c, &d = p.d, &a2 = p.a2;
  const long ln1 = static_cast<long>(n1);
  const long ln2 = static_cast<long>(n2);
  const long lm = ln1 + ln2;
  const BigComplex S = a * a2 * a2 * b;
  const BigComplex T = S * c * d;
  const auto Q = [&](long m) { return qpow(ctx, m); };

  // Compound factors shared between entries.
  const BigComplex bra =
      (a + b) * (q + T * Q(2 * lm)) - a * a2 * b * (q + one) * (c + d) * Q(lm);
  const BigComplex gs =
      one + a2 * a2 / q - (a * b + q) * (q + S * Q(2 * ln1)) / (a * b * Q(ln1 + 1) * (q + one));

  BigComplex num(ctx.prec);
  BigComplex den(ctx.prec);
  switch (k) {
    case 1:
      num = -((a2 * a2 * Q(ln1) - one) * (S * Q(ln1) - q) * (a * a2 * c * Q(lm) - one) *
              (a2 * b * c * Q(lm) - one) * (T * Q(2 * ln1 + ln2) - one) *
              (T * Q(2 * ln1 + ln2) - q));
      den = (S * Q(2 * ln1) - one) * (S * Q(2 * ln1) - q) * (T * Q(2 * lm) - one) *
            (T * Q(2 * lm) - q);
      break;
    case 2:
      num = a2 * c * Q(ln1) * (Q(ln2) - one) * (a2 * a2 * Q(ln1) - one) * (S * Q(ln1) - q) *
            (T * Q(2 * ln1 + ln2) - q) * bra;
      den = (q - S * Q(2 * ln1)) * (S * Q(2 * ln1) - one) * (q2 - T * Q(2 * lm)) *
            (T * Q(2 * lm) - one);
      break;
    case 3:
      num = -(S * c * c * Q(2 * ln1) * (Q(ln2) - one) * (Q(ln2) - q) * (a2 * a2 * Q(ln1) - one) *
              (S * Q(ln1) - q) * (a * a2 * d * Q(lm) - q) * (a2 * b * d * Q(lm) - q));
      den = (S * Q(2 * ln1) - one) * (S * Q(2 * ln1) - q) * (T * Q(2 * lm) - q) *
            (T * Q(2 * lm) - q2);
      break;
    case 4:
      num = -(q * (q + one) * (one - c * d * Q(ln2)) * (one - a * a2 * c * Q(lm)) *
              (one - a2 * b * c * Q(lm)) * (one - T * Q(2 * ln1 + ln2 - 1)) * gs);
      den = (one - Q(2 - 2 * ln1) / S) * (one - S * Q(2 * ln1)) * (one - T * Q(2 * lm)) *
            (one - T * Q(2 * ln1 + 2 * ln2 - 1));
      break;
    case 5: {
      const BigComplex g2 =
          one + c / d - (a + b) * (q + T * Q(2 * lm)) / (a * a2 * b * d * Q(lm) * (q + one));
      const BigComplex g3 = one + c * d / q - (q + S * Q(2 * ln1)) * (q + T * Q(2 * lm)) /
                                                  (S * Q(1 + 2 * ln1 + ln2) * (q + one));
      num = -(q2 * (q + one) * (q + one) * gs * g2 * g3);
      den = (one - Q(2 - 2 * ln1) / S) * (one - S * Q(2 * ln1)) * (one - Q(2 - 2 * lm) / T) *
            (one - T * Q(2 * lm));
      break;
    }
    case 6:
      num = a2 * a2 * c * c * Q(ln1) * (Q(ln2) - one) * (q - S * Q(2 * ln1 + ln2)) *
            (q - a * a2 * d * Q(lm)) * (q - a2 * b * d * Q(lm)) *
            (a * b * Q(ln1) * (one + q) * (a2 * a2 + q) - (a * b + q) * (q + S * Q(2 * ln1)));
      den = (q2 - S * Q(2 * ln1)) * (S * Q(2 * ln1) - one) * (q - T * Q(2 * lm)) *
            (q2 - T * Q(2 * lm));
      break;
    case 7:
      num = a * pow_int(a2, 4) * b * Q(2 * ln1 + 1) * (one - Q(ln1)) * (q - a * b * Q(ln1)) *
            (one - c * d * Q(ln2)) * (one - c * d * Q(ln2 + 1)) * (one - a * a2 * c * Q(lm)) *
            (one - a2 * b * c * Q(lm));
      den = (q - S * Q(2 * ln1)) * (q2 - S * Q(2 * ln1)) * (q - T * Q(2 * lm)) *
            (T * Q(2 * lm) - one);
      break;
    case 8:
      // Orientation of the (1 - q^{n1}) factor matches the entry at offset
      // (-1,+2); with (q^{n1} - 1) the limit lands on the negated coefficient.
      num = pow_int(a2, 3) * c * Q(ln1) * (one - Q(ln1)) * (q - a * b * Q(ln1)) *
            (c * d * Q(ln2) - one) * (q - S * Q(2 * ln1 + ln2)) * bra;
      den = (q - S * Q(2 * ln1)) * (q2 - S * Q(2 * ln1)) * (q2 - T * Q(2 * lm)) *
            (one - T * Q(2 * lm));
      break;
    case 9:
    default:
      num = -(a2 * a2 * c * c * (Q(ln1) - one) * (a * b * Q(ln1) - q) *
              (S * Q(2 * ln1 + ln2) - q) * (S * Q(2 * ln1 + ln2) - q2) *
              (a * a2 * d * Q(lm) - q) * (a2 * b * d * Q(lm) - q));
      den = (q - S * Q(2 * ln1)) * (q2 - S * Q(2 * ln1)) * (q - T * Q(2 * lm)) *
            (q2 - T * Q(2 * lm));
      break;
  }
  if (den.is_zero()) {
    throw PoleError("recurrence coefficient: vanishing denominator in entry " + std::to_string(k));
  }
  return num / den;
}

BigComplex recurrence_bracket_q(const QContext& ctx, const QAWParams& p) {
  const BigComplex one = one_c(ctx.prec);
  const BigComplex q(ctx.q);
  return p.c * p.a2 *
         ((p.a + p.b) * (p.a * p.b + q) / (p.a * p.b * (one + q)) - p.z1 - one / p.z1);
}

bool ConvergenceReport::pass() const {
  if (cases.empty()) return false;
  return std::all_of(cases.begin(), cases.end(), [](const ConvergenceCase& c) { return c.pass; });
}

double ConvergenceReport::min_order() const {
  double m = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& c : cases) {
    if (c.at_floor) continue;  // no measurable order at the roundoff floor
    m = std::min(m, c.order);
    any = true;
  }
  return any ? m : kOrderGate;
}

double ConvergenceReport::max_imag() const {
  double m = 0.0;
  for (const auto& c : cases) m = std::max(m, c.max_imag);
  return m;
}

ConvergenceReport check_poly_limit(const biv::BivTruncParams& params, unsigned n1, unsigned n2,
                                   const ExactScalar& z1, const ExactScalar& z2,
                                   const std::vector<ExactScalar>& ts, mpfr_prec_t prec) {
  ConvergenceReport rep;
  rep.check = "poly-limit-truncated";
  rep.ts = ts;
  rep.prec = prec;

  const ExactScalar eta1 = uni::hyper_normalization(biv::def1_factor1_params(params, z2), n1);
  const ExactScalar eta2 = uni::hyper_normalization(biv::def1_factor2_params(params, n1), n2);
  if (eta1.is_zero() || eta2.is_zero()) {
    throw NormalizationError("poly limit target undefined: eta vanishes at these parameters");
  }
  const BigFloat target(biv::eval_def1(params, n1, n2, z1, z2) / (eta1 * eta2), prec);

  const auto exps = ReparamMap::q_racah(params, z1, z2);
  std::vector<BigFloat> errs, ims, tvals;
  for (const auto& tv : ts) {
    const QContext ctx(tv, prec);
    const QRacahParams qp = realize_q_racah(ctx, exps, params.N);
    const auto [r1, r2] = q_racah_pair(ctx, qp, n1, n2);
    const BigComplex value = r1 * r2;
    errs.push_back(abs(value - BigComplex(target)));
    ims.push_back(abs(value.im));
    tvals.push_back(ctx.t);
  }
  rep.cases.push_back(finish_case("R(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
                                  errs, ims, tvals, prec));
  return rep;
}

ConvergenceReport check_poly_limit(const biv::BivFreeParams& params, unsigned n1, unsigned n2,
                                   const ExactScalar& z1, const ExactScalar& z2,
                                   const std::vector<ExactScalar>& ts, mpfr_prec_t prec) {
  ConvergenceReport rep;
  rep.check = "poly-limit-free";
  rep.ts = ts;
  rep.prec = prec;

  const ExactScalar eta1 = uni::hyper_normalization(biv::def2_factor1_params(params, z2), n1);
  const ExactScalar eta2 = uni::hyper_normalization(biv::def2_factor2_params(params, n1), n2);
  if (eta1.is_zero() || eta2.is_zero()) {
    throw NormalizationError("poly limit target undefined: eta vanishes at these parameters");
  }
  const BigFloat target(biv::eval_def2(params, n1, n2, z1, z2) / (eta1 * eta2), prec);

  const auto exps = ReparamMap::askey_wilson(params, z1, z2);
  std::vector<BigFloat> errs, ims, tvals;
  for (const auto& tv : ts) {
    const QContext ctx(tv, prec);
    const QAWParams aw = realize_askey_wilson(ctx, exps);
    const auto [f1, f2] = aw_pair(ctx, aw, n1, n2);
    const BigComplex value = f1 * f2;
    errs.push_back(abs(value - BigComplex(target)));
    ims.push_back(abs(value.im));
    tvals.push_back(ctx.t);
  }
  rep.cases.push_back(finish_case("P(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
                                  errs, ims, tvals, prec));
  return rep;
}

ConvergenceReport check_operator_limit(const biv::BivFreeParams& params, const ExactScalar& z1,
                                       const ExactScalar& z2,
                                       const std::vector<std::pair<unsigned, unsigned>>& degrees,
                                       const std::vector<ExactScalar>& ts, mpfr_prec_t prec) {
  ConvergenceReport rep;
  rep.check = "operator-limit";
  rep.ts = ts;
  rep.prec = prec;

  const auto exps = ReparamMap::askey_wilson(params, z1, z2);
  std::vector<QContext> ctxs;
  std::vector<QAWParams> aws;
  ctxs.reserve(ts.size());
  aws.reserve(ts.size());
  for (const auto& tv : ts) {
    ctxs.emplace_back(tv, prec);
    aws.push_back(realize_askey_wilson(ctxs.back(), exps));
  }

  for (const auto& term : ops::l2_terms(params)) {
    const BigFloat target(term.coefficient(z1, z2), prec);
    std::vector<BigFloat> errs, ims, tvals;
    for (std::size_t s = 0; s < ctxs.size(); ++s) {
      const BigComplex value =
          operator_coefficient_q(ctxs[s], aws[s], term.i, term.j) / four_one_plus_q(ctxs[s]);
      errs.push_back(abs(value - BigComplex(target)));
      ims.push_back(abs(value.im));
      tvals.push_back(ctxs[s].t);
    }
    rep.cases.push_back(finish_case(
        "C(" + std::to_string(term.i) + "," + std::to_string(term.j) + ")", errs, ims, tvals,
        prec));
  }

  for (const auto& [d1, d2] : degrees) {
    const BigFloat target(ops::eigenvalue_L2(params, d1, d2), prec);
    std::vector<BigFloat> errs, ims, tvals;
    for (std::size_t s = 0; s < ctxs.size(); ++s) {
      const BigComplex value =
          operator_eigenvalue_q(ctxs[s], aws[s], d1, d2) / four_one_plus_q(ctxs[s]);
      errs.push_back(abs(value - BigComplex(target)));
      ims.push_back(abs(value.im));
      tvals.push_back(ctxs[s].t);
    }
    rep.cases.push_back(finish_case(
        "Lambda(" + std::to_string(d1) + "," + std::to_string(d2) + ")", errs, ims, tvals, prec));
  }
  return rep;
}

ConvergenceReport check_recurrence_limit(const biv::BivFreeParams& params, unsigned n1,
                                         unsigned n2, const ExactScalar& z1,
                                         const ExactScalar& z2,
                                         const std::vector<ExactScalar>& ts, mpfr_prec_t prec) {
  ConvergenceReport rep;
  rep.check = "recurrence-limit";
  rep.ts = ts;
  rep.prec = prec;

  const ops::NineTermCoeffs theta = ops::nine_term_coeffs(params, n1, n2);
  const auto exps = ReparamMap::askey_wilson(params, z1, z2);
  std::vector<QContext> ctxs;
  std::vector<QAWParams> aws;
  ctxs.reserve(ts.size());
  aws.reserve(ts.size());
  for (const auto& tv : ts) {
    ctxs.emplace_back(tv, prec);
    aws.push_back(realize_askey_wilson(ctxs.back(), exps));
  }

  // Monic-side normalization eta^{(1)}_{n1} eta^{(2)}_{n2}; exact.
  const auto monic_norm = [&](unsigned m1, unsigned m2) {
    return uni::hyper_normalization(biv::def2_factor1_params(params, z2), m1) *
           uni::hyper_normalization(biv::def2_factor2_params(params, m1), m2);
  };
  const ExactScalar m_base = monic_norm(n1, n2);

  static constexpr std::array<std::pair<int, int>, 9> kOffsets = {
      {{1, 0}, {1, -1}, {1, -2}, {0, 1}, {0, 0}, {0, -1}, {-1, 2}, {-1, 1}, {-1, 0}}};

  for (unsigned k = 1; k <= 9; ++k) {
    const std::string label = "theta(" + std::to_string(k) + ")";
    const int tn1 = static_cast<int>(n1) + kOffsets[k - 1].first;
    const int tn2 = static_cast<int>(n2) + kOffsets[k - 1].second;
    std::vector<BigFloat> errs, ims, tvals;
    if (tn1 < 0 || tn2 < 0) {
      // Out of the quadrant: the tau entry carries an exact zero factor and
      // the target coefficient vanishes; record the exact comparison.
      for (const auto& ctx : ctxs) {
        errs.push_back(abs(BigFloat(theta[k], prec)));
        ims.push_back(BigFloat(0L, prec));
        tvals.push_back(ctx.t);
      }
    } else if (k == 5) {
      const BigFloat target(theta[k], prec);
      for (std::size_t s = 0; s < ctxs.size(); ++s) {
        const BigComplex value =
            recurrence_coefficient_q(ctxs[s], aws[s], n1, n2, k) / four_one_plus_q(ctxs[s]);
        errs.push_back(abs(value - BigComplex(target)));
        ims.push_back(abs(value.im));
        tvals.push_back(ctxs[s].t);
      }
    } else {
      const ExactScalar m_target = monic_norm(static_cast<unsigned>(tn1),
                                              static_cast<unsigned>(tn2));
      if (m_target.is_zero()) {
        throw NormalizationError("recurrence limit: eta normalization vanishes at the shifted "
                                 "degrees of entry " + std::to_string(k));
      }
      const BigFloat m_ratio(m_base / m_target, prec);
      const BigFloat target(theta[k], prec);
      for (std::size_t s = 0; s < ctxs.size(); ++s) {
        const BigComplex n_base = aw_normalization(ctxs[s], aws[s], n1, n2);
        if (n_base.is_zero()) {
          throw PoleError("recurrence limit: vanishing base normalization");
        }
        const BigComplex n_ratio =
            aw_normalization(ctxs[s], aws[s], static_cast<unsigned>(tn1),
                             static_cast<unsigned>(tn2)) /
            n_base;
        const BigComplex value = BigComplex(m_ratio) * n_ratio *
                                 recurrence_coefficient_q(ctxs[s], aws[s], n1, n2, k) /
                                 four_one_plus_q(ctxs[s]);
        errs.push_back(abs(value - BigComplex(target)));
        ims.push_back(abs(value.im));
        tvals.push_back(ctxs[s].t);
      }
    }
    rep.cases.push_back(finish_case(label, errs, ims, tvals, prec));
  }

  // Left-hand multiplier toward z1 - alpha^2 + beta^2.
  {
    const BigFloat target(z1 - params.alpha * params.alpha + params.beta * params.beta, prec);
    std::vector<BigFloat> errs, ims, tvals;
    for (std::size_t s = 0; s < ctxs.size(); ++s) {
      const BigComplex value = recurrence_bracket_q(ctxs[s], aws[s]) / four_one_plus_q(ctxs[s]);
      errs.push_back(abs(value - BigComplex(target)));
      ims.push_back(abs(value.im));
      tvals.push_back(ctxs[s].t);
    }
    rep.cases.push_back(finish_case("bracket", errs, ims, tvals, prec));
  }
  return rep;
}

}  // namespace bannai::qlimit
