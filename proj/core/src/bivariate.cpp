#include "bannai/bivariate.hpp"

#include <string>
#include <utility>

#include "bannai/errors.hpp"
#include "bannai/interpolate.hpp"

namespace bannai::biv {
namespace {

const ExactScalar kHalf(1, 2);
const ExactScalar kQuarter(1, 4);

ExactScalar frac(long num, long den) { return ExactScalar(num, den); }

// (base)_len extended to negative lengths by (a)_{-k} = 1/(a-k)_k.
ExactScalar poch_signed(const ExactScalar& base, long len, const std::string& where) {
  if (len >= 0) {
    return pochhammer(base, static_cast<unsigned>(len));
  }
  const unsigned k = static_cast<unsigned>(-len);
  const ExactScalar tail = pochhammer(base - ExactScalar(static_cast<long>(k)), k);
  if (tail.is_zero()) {
    throw PoleError(where + ": Pochhammer (" + base.str() + ")_(" + std::to_string(len) +
                    ") has a vanishing reciprocal factor");
  }
  return ExactScalar(1) / tail;
}

ExactScalar guarded_div(const ExactScalar& num, const ExactScalar& den, const std::string& where) {
  if (den.is_zero()) {
    throw PoleError(where + ": denominator vanishes");
  }
  return num / den;
}

std::string index2(const char* name, unsigned i, unsigned j) {
  return std::string(name) + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

// First-factor weight w1 at grid row r, truncation parameter m = N - s.
// Four branches keyed by the parities of r and m.
ExactScalar w1_value(const BivTruncParams& P, unsigned r, unsigned m) {
  const auto [ri_, rp] = parity_split(r);
  const auto [si_, sp] = parity_split(m);
  const long ri = static_cast<long>(ri_);
  const ExactScalar st(static_cast<long>(si_));
  const ExactScalar tp1 = P.p1 + P.p1, tp2 = P.p2 + P.p2;
  const ExactScalar& c = P.c;
  const std::string where = index2("w1", r, m);

  ExactScalar num(1), den = factorial(ri_);
  if (sp == 0) {
    if (rp == 0) {
      num = pochhammer(tp2, ri_) * pochhammer(-st, ri_) *
            pochhammer(ExactScalar(1) - tp1 - st - st, ri_) *
            pochhammer(frac(3, 2) + c - tp1 - st, ri_);
      den *= pochhammer(kHalf - c - st, ri_) * pochhammer(ExactScalar(1) - tp1 - st, ri_) *
             pochhammer(ExactScalar(1) - tp1 - tp2 - st - st, ri_);
    } else {
      num = -pochhammer(tp2, ri_ + 1) * pochhammer(-st, ri_ + 1) *
            pochhammer(ExactScalar(1) - tp1 - st - st, ri_) *
            pochhammer(frac(3, 2) + c - tp1 - st, ri_);
      den *= pochhammer(kHalf - c - st, ri_) * pochhammer(ExactScalar(1) - tp1 - st, ri_ + 1) *
             pochhammer(ExactScalar(1) - tp1 - tp2 - st - st, ri_ + 1);
    }
  } else {
    if (rp == 0) {
      num = pochhammer(tp2, ri_) * pochhammer(-st, ri_) *
            pochhammer(-tp1 - st - st, ri_) * pochhammer(kHalf + c - tp1 - st, ri_);
      den *= pochhammer(-kHalf - c - st, ri_) * pochhammer(ExactScalar(1) - tp1 - st, ri_) *
             pochhammer(-tp1 - tp2 - st - st, ri_);
    } else {
      num = -pochhammer(tp2, ri_ + 1) * pochhammer(-st, ri_) *
            pochhammer(-tp1 - st - st, ri_) * pochhammer(kHalf + c - tp1 - st, ri_ + 1);
      den *= pochhammer(-kHalf - c - st, ri_ + 1) * pochhammer(ExactScalar(1) - tp1 - st, ri_) *
             pochhammer(-tp1 - tp2 - st - st, ri_ + 1);
    }
  }
  return guarded_div(num, den, where);
}

// Second-factor weight w2 at grid row s for the full truncation degree P.N.
// Four branches keyed by the parities of s and N.
ExactScalar w2_value(const BivTruncParams& P, unsigned s) {
  const auto [si_, sp] = parity_split(s);
  const auto [Ni_, Np] = parity_split(P.N);
  const unsigned si = si_, Ni = Ni_;
  const ExactScalar sn(static_cast<long>(si)), Nn(static_cast<long>(Ni));
  const ExactScalar tp1 = P.p1 + P.p1, tp2 = P.p2 + P.p2, tp3 = P.p3 + P.p3;
  const ExactScalar& c = P.c;
  const std::string where = index2("w2", s, P.N);

  ExactScalar num(1), den(1);
  if (Np == 0) {
    if (sp == 0) {
      num = sign_pow(si) * binomial(Ni, si) * pochhammer(frac(3, 2) + c - tp1 - Nn, si) *
            pochhammer(ExactScalar(1) - tp1 - tp2 - Nn - Nn, si) * pochhammer(kHalf + tp3, si);
      den = factorial(Ni) * pochhammer(kHalf - c - Nn, si) *
            pochhammer(ExactScalar(1) - tp1 - tp2 - Nn - Nn, 2 * si) *
            pochhammer(kHalf - tp1 - tp2 - tp3 - Nn - Nn, si) *
            pochhammer(ExactScalar(1) - tp1 - Nn - Nn + sn + sn, Ni - si);
    } else {
      num = sign_pow(si) * binomial(Ni - 1, si) * pochhammer(frac(3, 2) + c - tp1 - Nn, si) *
            pochhammer(ExactScalar(1) - tp1 - tp2 - Nn - Nn, si) * pochhammer(kHalf + tp3, si + 1);
      den = factorial(Ni - 1) * pochhammer(kHalf - c - Nn, si) *
            pochhammer(ExactScalar(1) - tp1 - tp2 - Nn - Nn, 2 * si + 1) *
            pochhammer(kHalf - tp1 - tp2 - tp3 - Nn - Nn, si + 1) *
            pochhammer(ExactScalar(2) - tp1 - Nn - Nn + sn + sn, Ni - si);
    }
  } else {
    if (sp == 0) {
      num = sign_pow(si) * binomial(Ni, si) * pochhammer(kHalf + c - tp1 - Nn, si) *
            pochhammer(-tp1 - tp2 - Nn - Nn, si) * pochhammer(kHalf + tp3, si);
      den = factorial(Ni) * pochhammer(-kHalf - c - Nn, si) *
            pochhammer(-tp1 - tp2 - Nn - Nn, 2 * si) *
            pochhammer(-kHalf - tp1 - tp2 - tp3 - Nn - Nn, si) *
            pochhammer(-tp1 - Nn - Nn + sn + sn, Ni + 1 - si);
    } else {
      num = sign_pow(si + 1) * binomial(Ni, si) * pochhammer(kHalf + c - tp1 - Nn, si + 1) *
            pochhammer(-tp1 - tp2 - Nn - Nn, si) * pochhammer(kHalf + tp3, si + 1);
      den = factorial(Ni) * pochhammer(-kHalf - c - Nn, si + 1) *
            pochhammer(-tp1 - tp2 - Nn - Nn, 2 * si + 1) *
            pochhammer(-kHalf - tp1 - tp2 - tp3 - Nn - Nn, si + 1) *
            pochhammer(ExactScalar(1) - tp1 - Nn - Nn + sn + sn, Ni - si);
    }
  }
  return guarded_div(num, den, where);
}

// Normalization H_{n1,n2} for total truncation degree P.N. Eight branches
// keyed by the parities of n1, n2 and N. Only call inside n1 + n2 <= N.
ExactScalar h_value(const BivTruncParams& P, unsigned n1, unsigned n2) {
  const auto [a_, ap] = parity_split(n1);
  const auto [b_, bp] = parity_split(n2);
  const auto [Ni_, Np] = parity_split(P.N);
  const long a = static_cast<long>(a_), b = static_cast<long>(b_), Ni = static_cast<long>(Ni_);
  const ExactScalar an(a), bn(b), Nn(Ni);
  const ExactScalar tp1 = P.p1 + P.p1, tp2 = P.p2 + P.p2, tp3 = P.p3 + P.p3;
  const ExactScalar& c = P.c;
  const std::string where = index2("H", n1, n2);

  // Shared building blocks across the branches.
  const ExactScalar lead = factorial(a_) * factorial(b_);
  const ExactScalar base_mid = c + an + tp2 + kHalf;            // (c + n1 + 2p2 + 1/2)
  const ExactScalar mid = pochhammer(base_mid, Ni_);            // (...)_N
  const ExactScalar tail_even = c - Nn - tp1 + frac(3, 2);      // N even family
  const ExactScalar tail_odd = c - Nn - tp1 + kHalf;            // N odd family
  const ExactScalar big1 = c + an + an + bn + tp2;              // c + 2n1 + n2 + 2p2
  const ExactScalar big2 = c + an + an + bn + tp2 + tp3;        // c + 2n1 + n2 + 2p2 + 2p3
  const ExactScalar cNn = c + Nn + an + tp2 + tp3;              // c + N + n1 + 2p2 + 2p3

  ExactScalar num, den;
  if (Np == 0) {
    if (ap == 0 && bp == 0) {
      num = lead * pochhammer(tp2, a_) * pochhammer(tp3 + kHalf, b_) * mid *
            pochhammer(tail_even, a_ + b_) * pochhammer(cNn + 1, b_) *
            pochhammer(big2 + 1, Ni_ - a_ - b_);
      const ExactScalar sq1 = pochhammer(base_mid, a_), sq2 = pochhammer(big2 + 1, b_);
      den = factorial(Ni_ - a_ - b_) * pochhammer(c + an + kHalf, Ni_ - a_) * sq1 * sq1 *
            pochhammer(big1 + kHalf, Ni_ - a_ - b_) * sq2 * sq2 *
            pochhammer(kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_);
    } else if (ap == 1 && bp == 0) {
      num = lead * pochhammer(tp2, a_ + 1) * pochhammer(tp3 + kHalf, b_) * mid *
            pochhammer(tail_even, a_ + b_) * pochhammer(cNn + 2, b_) *
            pochhammer(big2 + 2, Ni_ - a_ - b_);
      const ExactScalar sq1 = pochhammer(base_mid, a_ + 1), sq2 = pochhammer(big2 + 2, b_);
      den = factorial(Ni_ - a_ - b_ - 1) * pochhammer(c + an + frac(3, 2), Ni_ - a_ - 1) * sq1 *
            sq1 * pochhammer(big1 + frac(3, 2), Ni - a - b - 1) * sq2 * sq2 *
            pochhammer(kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_);
    } else if (ap == 0 && bp == 1) {
      num = lead * pochhammer(tp2, a_) * pochhammer(tp3 + kHalf, b_ + 1) * mid *
            pochhammer(tail_even, a_ + b_) * pochhammer(cNn + 1, b_ + 1) *
            pochhammer(big2 + 1, Ni_ - a_ - b_);
      const ExactScalar sq1 = pochhammer(base_mid, a_), sq2 = pochhammer(big2 + 1, b_ + 1);
      den = factorial(Ni_ - a_ - b_ - 1) * pochhammer(c + an + kHalf, Ni_ - a_) * sq1 * sq1 *
            pochhammer(big1 + frac(3, 2), Ni - a - b - 1) * sq2 * sq2 *
            pochhammer(kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_);
    } else {
      num = lead * pochhammer(tp2, a_ + 1) * pochhammer(tp3 + kHalf, b_ + 1) * mid *
            pochhammer(tail_even, a_ + b_ + 1) * pochhammer(cNn + 2, b_) *
            pochhammer(big2 + 2, Ni_ - a_ - b_);
      const ExactScalar sq1 = pochhammer(base_mid, a_ + 1), sq2 = pochhammer(big2 + 2, b_ + 1);
      den = factorial(Ni_ - a_ - b_ - 1) * pochhammer(c + an + frac(3, 2), Ni_ - a_ - 1) * sq1 *
            sq1 * poch_signed(big1 + frac(5, 2), Ni - a - b - 2, where) * sq2 * sq2 *
            pochhammer(kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_ - 1);
    }
  } else {
    if (ap == 0 && bp == 0) {
      num = lead * pochhammer(tp2, a_) * pochhammer(tp3 + kHalf, b_) * mid *
            pochhammer(tail_odd, a_ + b_) * pochhammer(cNn + 2, b_) *
            pochhammer(big2 + 1, Ni_ - a_ - b_ + 1);
      const ExactScalar sq1 = pochhammer(base_mid, a_), sq2 = pochhammer(big2 + 1, b_);
      den = factorial(Ni_ - a_ - b_) * pochhammer(c + an + kHalf, Ni_ - a_ + 1) * sq1 * sq1 *
            pochhammer(big1 + kHalf, Ni_ - a_ - b_) * sq2 * sq2 *
            pochhammer(-kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_ + 1);
    } else if (ap == 1 && bp == 0) {
      num = lead * pochhammer(tp2, a_ + 1) * pochhammer(tp3 + kHalf, b_) * mid *
            pochhammer(tail_odd, a_ + b_ + 1) * pochhammer(cNn + 2, b_) *
            pochhammer(big2 + 2, Ni_ - a_ - b_);
      const ExactScalar sq1 = pochhammer(base_mid, a_ + 1), sq2 = pochhammer(big2 + 2, b_);
      den = factorial(Ni_ - a_ - b_) * pochhammer(c + an + frac(3, 2), Ni_ - a_) * sq1 * sq1 *
            poch_signed(big1 + frac(3, 2), Ni - a - b - 1, where) * sq2 * sq2 *
            pochhammer(-kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_);
    } else if (ap == 0 && bp == 1) {
      num = lead * pochhammer(tp2, a_) * pochhammer(tp3 + kHalf, b_ + 1) * mid *
            pochhammer(tail_odd, a_ + b_ + 1) * pochhammer(cNn + 1, b_ + 1) *
            pochhammer(big2 + 1, Ni_ - a_ - b_);
      const ExactScalar sq1 = pochhammer(base_mid, a_), sq2 = pochhammer(big2 + 1, b_ + 1);
      den = factorial(Ni_ - a_ - b_) * pochhammer(c + an + kHalf, Ni_ - a_ + 1) * sq1 * sq1 *
            poch_signed(big1 + frac(3, 2), Ni - a - b - 1, where) * sq2 * sq2 *
            pochhammer(-kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_);
    } else {
      num = lead * pochhammer(tp2, a_ + 1) * pochhammer(tp3 + kHalf, b_ + 1) * mid *
            pochhammer(tail_odd, a_ + b_ + 1) * pochhammer(cNn + 2, b_ + 1) *
            pochhammer(big2 + 2, Ni_ - a_ - b_);
      const ExactScalar sq1 = pochhammer(base_mid, a_ + 1), sq2 = pochhammer(big2 + 2, b_ + 1);
      den = factorial(Ni_ - a_ - b_ - 1) * pochhammer(c + an + frac(3, 2), Ni_ - a_) * sq1 * sq1 *
            poch_signed(big1 + frac(5, 2), Ni - a - b - 2, where) * sq2 * sq2 *
            pochhammer(-kHalf - Nn - Nn - tp1 - tp2 - tp3, Ni_ - a_ - b_);
    }
  }
  return guarded_div(num, den, where);
}

}  // namespace

uni::UniBIParams def1_factor1_params(const BivTruncParams& params, const ExactScalar& z2) {
  return {params.c - params.p1 + kHalf, z2 + params.p2 - kQuarter, kHalf - params.p1,
          z2 - params.p2 + kQuarter};
}

uni::UniBIParams def1_factor2_params(const BivTruncParams& params, unsigned n1) {
  const ExactScalar sgn = sign_pow(static_cast<long>(n1) + static_cast<long>(params.N));
  const ExactScalar blob =
      ExactScalar(static_cast<long>(params.N), 2) + params.p1 + params.p2 + params.p3;
  return {ExactScalar(static_cast<long>(n1) + 1, 2) + params.c + params.p2 - params.p1,
          params.p3 - sgn * blob,
          ExactScalar(1 - static_cast<long>(n1), 2) - params.p1 - params.p2,
          -params.p3 - sgn * blob};
}

uni::UniBIParams def2_factor1_params(const BivFreeParams& params, const ExactScalar& z2) {
  return {params.beta, z2 + params.epsilon - kQuarter, params.alpha,
          z2 - params.epsilon + kQuarter};
}

uni::UniBIParams def2_factor2_params(const BivFreeParams& params, unsigned n1) {
  const ExactScalar half_n1(static_cast<long>(n1), 2);
  ExactScalar rho2, r2;
  if (n1 % 2 == 0) {
    rho2 = params.delta;
    r2 = -params.gamma;
  } else {
    rho2 = params.gamma;
    r2 = -params.delta;
  }
  return {params.beta + params.epsilon + half_n1, std::move(rho2),
          params.alpha - params.epsilon - half_n1, std::move(r2)};
}

ExactScalar eval_def1(const BivTruncParams& params, unsigned n1, unsigned n2,
                      const ExactScalar& z1, const ExactScalar& z2) {
  if (n1 + n2 > params.N) {
    throw DegreeError("eval_def1: n1 + n2 = " + std::to_string(n1 + n2) +
                      " exceeds the truncation degree N = " + std::to_string(params.N));
  }
  const ExactScalar first =
      uni::eval_recurrence(def1_factor1_params(params, z2), n1, z1 - kQuarter);
  const ExactScalar second = uni::eval_recurrence(
      def1_factor2_params(params, n1), n2, sign_pow(static_cast<long>(n1)) * z2 - kQuarter);
  return first * second;
}

ExactScalar eval_def2(const BivFreeParams& params, unsigned n1, unsigned n2,
                      const ExactScalar& z1, const ExactScalar& z2) {
  const ExactScalar first =
      uni::eval_recurrence(def2_factor1_params(params, z2), n1, z1 - kQuarter);
  const ExactScalar second = uni::eval_recurrence(
      def2_factor2_params(params, n1), n2, sign_pow(static_cast<long>(n1)) * z2 - kQuarter);
  return first * second;
}

BivFreeParams reduce_def2_to_def1(const BivTruncParams& params) {
  const ExactScalar half_N(static_cast<long>(params.N), 2);
  const ExactScalar plain = -half_N - params.p1 - params.p2;
  const ExactScalar shifted = half_N + params.p1 + params.p2 + params.p3 + params.p3;
  BivFreeParams out;
  out.alpha = kHalf - params.p1;
  out.beta = kHalf + params.c - params.p1;
  out.epsilon = params.p2;
  if (params.N % 2 == 0) {
    out.gamma = shifted;
    out.delta = plain;
  } else {
    out.gamma = plain;
    out.delta = shifted;
  }
  return out;
}

const ExactScalar& BivLattice::H(unsigned n1, unsigned n2) const {
  if (n1 + n2 > N) {
    throw DegreeError("H[" + std::to_string(n1) + "," + std::to_string(n2) +
                      "]: defined only for n1 + n2 <= N = " + std::to_string(N));
  }
  return h[n1][n2];
}

BivLattice build_lattice(const BivTruncParams& params) {
  const unsigned N = params.N;
  BivLattice lat;
  lat.N = N;
  lat.z1.assign(N + 1, std::vector<ExactScalar>(N + 1));
  lat.z2.assign(N + 1, ExactScalar(0));
  lat.w1.assign(N + 1, std::vector<ExactScalar>(N + 1));
  lat.w2.assign(N + 1, ExactScalar(0));
  const ExactScalar tp1 = params.p1 + params.p1, tp2 = params.p2 + params.p2;
  for (unsigned s = 0; s <= N; ++s) {
    const long sl = static_cast<long>(s), Nl = static_cast<long>(N);
    lat.z2[s] = kHalf * sign_pow(sl + Nl) * (ExactScalar(sl - Nl) - tp1 - tp2 + kHalf);
    lat.w2[s] = w2_value(params, s);
    for (unsigned r = 0; r <= N; ++r) {
      const long rl = static_cast<long>(r);
      lat.z1[r][s] = kHalf * sign_pow(rl + sl + Nl) * (ExactScalar(rl + sl - Nl) - tp1 + kHalf);
      lat.w1[r][s] = w1_value(params, r, N - s);
    }
  }
  lat.h.resize(N + 1);
  for (unsigned n1 = 0; n1 <= N; ++n1) {
    lat.h[n1].reserve(N - n1 + 1);
    for (unsigned n2 = 0; n1 + n2 <= N; ++n2) {
      lat.h[n1].push_back(h_value(params, n1, n2));
    }
  }
  return lat;
}

ExactScalar h1_norm(const BivTruncParams& params, unsigned n1, unsigned m) {
  if (n1 > m) {
    return ExactScalar(0);
  }
  const auto [a_, ap] = parity_split(n1);
  const auto [st_, sp] = parity_split(m);
  const ExactScalar an(static_cast<long>(a_)), st(static_cast<long>(st_));
  const ExactScalar tp1 = params.p1 + params.p1, tp2 = params.p2 + params.p2;
  const ExactScalar& c = params.c;
  const std::string where = index2("h1", n1, m);

  ExactScalar num, den;
  const ExactScalar lead = factorial(st_) * factorial(a_);
  if (ap == 0 && sp == 0) {
    num = lead * pochhammer(tp2, a_) * pochhammer(kHalf + c + an + tp2, st_ - a_) *
          pochhammer(kHalf + c + tp2 + st, a_) * pochhammer(frac(3, 2) + c - tp1 - st, a_) *
          pochhammer(ExactScalar(1) - tp1 - st - st, st_);
    const ExactScalar sq = pochhammer(kHalf + c + an + tp2, a_);
    den = factorial(st_ - a_) * pochhammer(kHalf + c + an, st_ - a_) * sq * sq *
          pochhammer(ExactScalar(1) - tp1 - tp2 - st - st, st_ - a_);
  } else if (ap == 1 && sp == 0) {
    num = lead * pochhammer(tp2, a_ + 1) * pochhammer(kHalf + c + an + tp2, st_ - a_) *
          pochhammer(kHalf + c + tp2 + st, a_ + 1) * pochhammer(frac(3, 2) + c - tp1 - st, a_) *
          pochhammer(ExactScalar(1) - tp1 - st - st, st_);
    const ExactScalar sq = pochhammer(kHalf + c + an + tp2, a_ + 1);
    den = factorial(st_ - a_ - 1) * pochhammer(frac(3, 2) + c + an, st_ - a_ - 1) * sq * sq *
          pochhammer(ExactScalar(1) - tp1 - tp2 - st - st, st_ - a_);
  } else if (ap == 0 && sp == 1) {
    num = lead * pochhammer(tp2, a_) * pochhammer(kHalf + c + an + tp2, st_ + 1 - a_) *
          pochhammer(frac(3, 2) + c + tp2 + st, a_) * pochhammer(kHalf + c - tp1 - st, a_) *
          pochhammer(-tp1 - st - st, st_ + 1);
    const ExactScalar sq = pochhammer(kHalf + c + an + tp2, a_);
    den = factorial(st_ - a_) * pochhammer(kHalf + c + an, st_ + 1 - a_) * sq * sq *
          pochhammer(-tp1 - tp2 - st - st, st_ + 1 - a_);
  } else {
    // Odd degree with odd truncation parameter: the slots here are fixed by
    // the norm chain h_a = h_{a-1} A_{a-1} C_a from the even-degree entry.
    num = lead * pochhammer(tp2, a_ + 1) * pochhammer(kHalf + c + an + tp2, st_ + 1 - a_) *
          pochhammer(frac(3, 2) + c + tp2 + st, a_) * pochhammer(kHalf + c - tp1 - st, a_ + 1) *
          pochhammer(-tp1 - st - st, st_ + 1);
    const ExactScalar sq = pochhammer(kHalf + c + an + tp2, a_ + 1);
    den = factorial(st_ - a_) * pochhammer(frac(3, 2) + c + an, st_ - a_) * sq * sq *
          pochhammer(-tp1 - tp2 - st - st, st_ - a_);
  }
  return guarded_div(num, den, where);
}

OrthoReport orthogonality_check(const BivTruncParams& params) {
  const unsigned N = params.N;
  const BivLattice lat = build_lattice(params);

  // Degree pairs over the simplex and their values on the full grid.
  std::vector<std::pair<unsigned, unsigned>> degs;
  for (unsigned n1 = 0; n1 <= N; ++n1) {
    for (unsigned n2 = 0; n1 + n2 <= N; ++n2) {
      degs.emplace_back(n1, n2);
    }
  }
  std::vector<std::vector<ExactScalar>> values(degs.size());
  for (std::size_t d = 0; d < degs.size(); ++d) {
    values[d].reserve((N + 1) * (N + 1));
    for (unsigned s = 0; s <= N; ++s) {
      for (unsigned r = 0; r <= N; ++r) {
        values[d].push_back(
            eval_def1(params, degs[d].first, degs[d].second, lat.z1[r][s], lat.z2[s]));
      }
    }
  }

  OrthoReport rep;
  rep.N = N;
  auto bump = [](ExactScalar& slot, const ExactScalar& candidate) {
    if (abs(candidate) > slot) {
      slot = abs(candidate);
      return true;
    }
    return false;
  };
  for (std::size_t d = 0; d < degs.size(); ++d) {
    for (std::size_t e = d; e < degs.size(); ++e) {
      const auto [n1, n2] = degs[d];
      const auto [m1, m2] = degs[e];
      ExactScalar full(0), tri(0);
      for (unsigned s = 0; s <= N; ++s) {
        for (unsigned r = 0; r <= N; ++r) {
          const ExactScalar term =
              lat.w1[r][s] * lat.w2[s] * values[d][s * (N + 1) + r] * values[e][s * (N + 1) + r];
          full += term;
          if (s <= N - n1 && r <= N - s) {
            tri += term;
          }
        }
      }
      ++rep.pairs;
      const std::string tag = "(" + std::to_string(n1) + "," + std::to_string(n2) + ")x(" +
                              std::to_string(m1) + "," + std::to_string(m2) + ")";
      if (bump(rep.max_range_error, full - tri)) {
        rep.worst_case = tag + " range";
      }
      if (d == e) {
        if (bump(rep.max_diag_error, full - lat.H(n1, n2))) {
          rep.worst_case = tag + " diagonal";
        }
      } else {
        if (bump(rep.max_offdiag, full)) {
          rep.worst_case = tag + " off-diagonal";
        }
      }
    }
  }
  if (rep.clean()) {
    rep.worst_case.clear();
  }
  return rep;
}

const ExactScalar& BivExpansion::coefficient(unsigned i, unsigned j) const {
  static const ExactScalar kZero(0);
  if (i >= coeff.size() || j >= coeff[i].size()) {
    return kZero;
  }
  return coeff[i][j];
}

unsigned BivExpansion::degree_z1() const {
  for (std::size_t i = coeff.size(); i-- > 0;) {
    for (const ExactScalar& c : coeff[i]) {
      if (!c.is_zero()) {
        return static_cast<unsigned>(i);
      }
    }
  }
  return 0;
}

unsigned BivExpansion::total_degree() const {
  unsigned best = 0;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    for (std::size_t j = 0; j < coeff[i].size(); ++j) {
      if (!coeff[i][j].is_zero()) {
        best = std::max(best, static_cast<unsigned>(i + j));
      }
    }
  }
  return best;
}

BivExpansion expand_polynomial(const BivEvaluator& f, unsigned n1, unsigned n2) {
  const unsigned m = n1 + n2;
  std::vector<ExactScalar> nodes;
  nodes.reserve(m + 1);
  for (unsigned k = 0; k <= m; ++k) {
    nodes.push_back(ExactScalar(static_cast<long>(k) + 1) + ExactScalar(3, 8));
  }

  // Interpolate in z1 along each z2 node, then across z2.
  std::vector<std::vector<ExactScalar>> byZ2(m + 1);
  for (unsigned j = 0; j <= m; ++j) {
    std::vector<ExactScalar> column;
    column.reserve(m + 1);
    for (unsigned i = 0; i <= m; ++i) {
      column.push_back(f(nodes[i], nodes[j]));
    }
    byZ2[j] = interpolate_coefficients(nodes, column);
  }
  BivExpansion out;
  out.n1 = n1;
  out.n2 = n2;
  out.coeff.assign(m + 1, std::vector<ExactScalar>(m + 1));
  for (unsigned i = 0; i <= m; ++i) {
    std::vector<ExactScalar> row;
    row.reserve(m + 1);
    for (unsigned j = 0; j <= m; ++j) {
      row.push_back(byZ2[j][i]);
    }
    out.coeff[i] = interpolate_coefficients(nodes, row);
  }

  for (unsigned i = 0; i <= m; ++i) {
    for (unsigned j = 0; j <= m; ++j) {
      if (i + j > m && !out.coeff[i][j].is_zero()) {
        throw InterpolationError("expand_polynomial: coefficient of z1^" + std::to_string(i) +
                                 " z2^" + std::to_string(j) + " is " + out.coeff[i][j].str() +
                                 ", beyond total degree " + std::to_string(m));
      }
    }
  }
  if (out.degree_z1() != n1) {
    throw InterpolationError("expand_polynomial: z1-degree " + std::to_string(out.degree_z1()) +
                             " differs from n1 = " + std::to_string(n1));
  }

  // The interpolant must reproduce the evaluator away from the grid.
  const ExactScalar x0(1, 3), y0(-2, 5);
  ExactScalar at(0), xp(1);
  for (unsigned i = 0; i <= m; ++i) {
    ExactScalar yp(1);
    for (unsigned j = 0; j <= m; ++j) {
      at += out.coeff[i][j] * xp * yp;
      yp *= y0;
    }
    xp *= x0;
  }
  if (at != f(x0, y0)) {
    throw InterpolationError("expand_polynomial: expansion disagrees with the evaluator at (" +
                             x0.str() + ", " + y0.str() + ")");
  }
  return out;
}

}  // namespace bannai::biv
