#include "bannai/univariate.hpp"

#include <array>
#include <cassert>
#include <utility>

#include "bannai/errors.hpp"

namespace bannai::uni {

namespace {

const ExactScalar kHalf(1, 2);
const ExactScalar kQuarter(1, 4);

ExactScalar poch_denominator(const ExactScalar& base, unsigned len, const std::string& name) {
  const ExactScalar p = pochhammer(base, len);
  if (p.is_zero()) {
    throw PoleError("(" + base.str() + ")_" + std::to_string(len) + " vanishes in " + name);
  }
  return p;
}

// Terminating 4F3 at unit argument: sum_{k=0}^{K} prod(u_i)_k / (prod(l_i)_k k!).
// Throws NormalizationError if a lower factor hits zero inside the sum range.
ExactScalar hyp4f3_terminating(const std::array<ExactScalar, 4>& upper,
                               const std::array<ExactScalar, 3>& lower, unsigned K) {
  ExactScalar sum(1);
  ExactScalar term(1);
  for (unsigned k = 0; k < K; ++k) {
    ExactScalar num(1);
    for (const auto& u : upper) num *= u + ExactScalar(static_cast<long>(k));
    ExactScalar den(ExactScalar(static_cast<long>(k) + 1));
    for (const auto& l : lower) {
      const ExactScalar f = l + ExactScalar(static_cast<long>(k));
      if (f.is_zero()) {
        throw NormalizationError("lower parameter " + l.str() +
                                 " reaches zero inside the terminating series");
      }
      den *= f;
    }
    term *= num / den;
    sum += term;
  }
  return sum;
}

} // namespace

RecurrenceCoeffs recurrence_coeffs(const UniBIParams& p, unsigned n) {
  const ExactScalar g = p.g();
  const ExactScalar nn(static_cast<long>(n));

  const ExactScalar a_den = nn + g + 1;
  if (a_den.is_zero()) {
    throw PoleError("A_" + std::to_string(n) + ": n+g+1 vanishes");
  }
  ExactScalar A;
  if (n % 2 == 0) {
    A = (nn + 2 * p.rho1 - 2 * p.r1 + 1) * (nn + 2 * p.rho1 - 2 * p.r2 + 1) / (4 * a_den);
  } else {
    A = (nn + 2 * g + 1) * (nn + 2 * p.rho1 + 2 * p.rho2 + 1) / (4 * a_den);
  }

  // C_0 = 0 exactly: the printed formula carries the factor n, so no n+g
  // check is needed (or meaningful) at n = 0.
  ExactScalar C(0);
  if (n >= 1) {
    const ExactScalar c_den = nn + g;
    if (c_den.is_zero()) {
      throw PoleError("C_" + std::to_string(n) + ": n+g vanishes");
    }
    if (n % 2 == 0) {
      C = -(nn * (nn - 2 * p.r1 - 2 * p.r2)) / (4 * c_den);
    } else {
      C = -((nn + 2 * p.rho2 - 2 * p.r2) * (nn + 2 * p.rho2 - 2 * p.r1)) / (4 * c_den);
    }
  }
  return {A, C};
}

ExactScalar u_coeff(const UniBIParams& p, unsigned n) {
  if (n == 0) throw std::invalid_argument("u_coeff requires n >= 1");
  return recurrence_coeffs(p, n - 1).A * recurrence_coeffs(p, n).C;
}

std::vector<ExactScalar> eval_recurrence_upto(const UniBIParams& p, unsigned n,
                                              const ExactScalar& x) {
  std::vector<ExactScalar> B;
  B.reserve(n + 1);
  B.emplace_back(1);
  ExactScalar a_prev(0); // A_{-1}, never used against a nonzero B_{-1}
  for (unsigned k = 0; k < n; ++k) {
    const RecurrenceCoeffs rc = recurrence_coeffs(p, k);
    ExactScalar next = (x - p.rho1 + rc.A + rc.C) * B[k];
    if (k >= 1) next -= a_prev * rc.C * B[k - 1];
    B.push_back(std::move(next));
    a_prev = rc.A;
  }
  return B;
}

ExactScalar eval_recurrence(const UniBIParams& p, unsigned n, const ExactScalar& x) {
  return eval_recurrence_upto(p, n, x).back();
}

ExactScalar hyper_normalization(const UniBIParams& p, unsigned n) {
  const auto [ne_u, np_u] = parity_split(n);
  const ExactScalar g = p.g();
  const ExactScalar eta_den = pochhammer(g + ExactScalar(static_cast<long>(ne_u) + 1), ne_u + np_u);
  if (eta_den.is_zero()) {
    throw NormalizationError("eta_" + std::to_string(n) +
                             " undefined: (n_e+g+1)_{n_e+n_p} vanishes");
  }
  return sign_pow(n) * pochhammer(p.rho1 - p.r1 + kHalf, ne_u + np_u) *
         pochhammer(p.rho2 - p.r1 + kHalf, ne_u + np_u) *
         pochhammer(1 - p.r1 - p.r2, ne_u) / eta_den;
}

ExactScalar eval_hypergeometric(const UniBIParams& p, unsigned n, const ExactScalar& x) {
  const auto [ne_u, np_u] = parity_split(n);
  const long ne = ne_u;
  const long np = np_u;
  const ExactScalar g = p.g();

  const ExactScalar eta = hyper_normalization(p, n);
  if (eta.is_zero()) {
    throw NormalizationError("eta_" + std::to_string(n) + " vanishes");
  }

  const ExactScalar s1 = hyp4f3_terminating(
      {ExactScalar(-ne), g + ExactScalar(ne + 1), x - p.r1 + kHalf, kHalf - x - p.r1},
      {1 - p.r1 - p.r2, p.rho1 - p.r1 + kHalf, p.rho2 - p.r1 + kHalf}, ne_u);

  // Second series; its prefactor carries (n_e + n_p + g n_p), which kills the
  // whole term at n = 0 (where the series would not terminate).
  ExactScalar second(0);
  const ExactScalar pref_num = ExactScalar(ne + np) + g * ExactScalar(np);
  if (!pref_num.is_zero()) {
    const ExactScalar d1 = p.rho1 - p.r1 + kHalf;
    const ExactScalar d2 = p.rho2 - p.r1 + kHalf;
    if (d1.is_zero() || d2.is_zero()) {
      throw NormalizationError("(rho_i - r_1 + 1/2) vanishes in the prefactor denominator");
    }
    const unsigned k2 = ne_u + np_u - 1;
    const ExactScalar s2 = hyp4f3_terminating(
        {ExactScalar(1 - ne - np), ExactScalar(ne + np) + g + 1, x - p.r1 + 3 * kHalf,
         kHalf - x - p.r1},
        {1 - p.r1 - p.r2, p.rho1 - p.r1 + 3 * kHalf, p.rho2 - p.r1 + 3 * kHalf}, k2);
    second = sign_pow(n) * pref_num * (x - p.r1 + kHalf) / (d1 * d2) * s2;
  }

  return eta * (s1 + second);
}

TruncationType detect_truncation(const UniBIParams& p, unsigned N) {
  const ExactScalar target(static_cast<long>(N) + 1, 2);
  if (N % 2 == 0) {
    constexpr std::array<std::pair<unsigned, unsigned>, 4> combos{
        {{1, 1}, {1, 2}, {2, 1}, {2, 2}}};
    for (const auto& [j, l] : combos) {
      const ExactScalar& r = (j == 1) ? p.r1 : p.r2;
      const ExactScalar& rho = (l == 1) ? p.rho1 : p.rho2;
      if (r - rho == target) return {TruncationKind::TypeI, N, j, l};
    }
  } else {
    if (p.rho1 + p.rho2 == -target) return {TruncationKind::TypeII, N};
    if (p.r1 + p.r2 == target) return {TruncationKind::TypeIII, N};
    if (p.g() == -target) return {TruncationKind::TypeIVInadmissible, N};
  }
  return {TruncationKind::None, N};
}

namespace {

// Grid x_k = (-1)^k (k/2 + rho1 + 1/4) - 1/4, k = 0..N (types i and ii).
std::vector<ExactScalar> grid_ascending(const UniBIParams& p, unsigned N) {
  std::vector<ExactScalar> xs;
  xs.reserve(N + 1);
  for (unsigned k = 0; k <= N; ++k) {
    xs.push_back(sign_pow(k) * (ExactScalar(static_cast<long>(k), 2) + p.rho1 + kQuarter) -
                 kQuarter);
  }
  return xs;
}

// Weight table shared by types i and ii (type iii substitutes parameters).
std::vector<ExactScalar> weights_table(const UniBIParams& p, unsigned N) {
  std::vector<ExactScalar> ws;
  ws.reserve(N + 1);
  for (unsigned k = 0; k <= N; ++k) {
    const auto [ke, kp] = parity_split(k);
    const std::string at = "w_" + std::to_string(k);
    const ExactScalar num = pochhammer(p.rho1 - p.r1 + kHalf, ke + kp) *
                            pochhammer(p.rho1 - p.r2 + kHalf, ke + kp) *
                            pochhammer(p.rho1 + p.rho2 + 1, ke) *
                            pochhammer(2 * p.rho1 + 1, ke);
    const ExactScalar den = poch_denominator(p.rho1 + p.r1 + kHalf, ke + kp, at) *
                            poch_denominator(p.rho1 + p.r2 + kHalf, ke + kp, at) *
                            poch_denominator(p.rho1 - p.rho2 + 1, ke, at);
    ws.push_back(sign_pow(k) / factorial(ke) * num / den);
  }
  return ws;
}

std::vector<ExactScalar> norms_type_i(const UniBIParams& p, unsigned N) {
  assert(N % 2 == 0);
  const unsigned Ne = N / 2;
  const ExactScalar g = p.g();
  std::vector<ExactScalar> hs;
  hs.reserve(N + 1);
  for (unsigned n = 0; n <= N; ++n) {
    const auto [ne, np] = parity_split(n);
    const std::string at = "h_" + std::to_string(n);
    const ExactScalar num =
        factorial(ne) * factorial(Ne) * pochhammer(1 + 2 * p.rho1, Ne) *
        pochhammer(1 + p.rho1 + p.rho2, ne) *
        pochhammer(ExactScalar(static_cast<long>(ne) + 1) + g, Ne - ne) *
        pochhammer(kHalf + p.rho1 - p.r2, ne + np) * pochhammer(kHalf + p.rho2 - p.r2, ne + np);
    const ExactScalar last = poch_denominator(
        ExactScalar(static_cast<long>(ne) + 1) + g, ne + np, at);
    const ExactScalar den =
        factorial(Ne - ne - np) * poch_denominator(kHalf + p.rho1 + p.r2, Ne - ne, at) *
        poch_denominator(kHalf + ExactScalar(static_cast<long>(ne + np)) + p.rho2 - p.r1,
                         Ne - ne - np, at) *
        last * last;
    hs.push_back(num / den);
  }
  return hs;
}

std::vector<ExactScalar> norms_type_ii(const UniBIParams& p, unsigned N) {
  assert(N % 2 == 1);
  const unsigned Ne = (N - 1) / 2;
  const ExactScalar g = p.g();
  std::vector<ExactScalar> hs;
  hs.reserve(N + 1);
  for (unsigned n = 0; n <= N; ++n) {
    const auto [ne, np] = parity_split(n);
    const std::string at = "h_" + std::to_string(n);
    const ExactScalar num =
        factorial(ne) * factorial(Ne) * pochhammer(1 + 2 * p.rho1, Ne + 1) *
        pochhammer(1 - p.r1 - p.r2, ne) *
        pochhammer(ExactScalar(static_cast<long>(ne) + 1) + g, Ne + 1 - ne) *
        pochhammer(kHalf + p.rho1 - p.r1, ne + np) * pochhammer(kHalf + p.rho1 - p.r2, ne + np);
    const ExactScalar last = poch_denominator(
        ExactScalar(static_cast<long>(ne) + 1) + g, ne + np, at);
    const ExactScalar den =
        factorial(Ne - ne) *
        poch_denominator(kHalf + p.rho1 + p.r1, Ne + 1 - ne - np, at) *
        poch_denominator(kHalf + ExactScalar(static_cast<long>(ne + np)) + p.rho2 - p.r2,
                         Ne + 1 - ne - np, at) *
        last * last;
    hs.push_back(num / den);
  }
  return hs;
}

} // namespace

OrthogonalityData orthogonality_data(const UniBIParams& params, const TruncationType& trunc) {
  const unsigned N = trunc.N;
  const ExactScalar target(static_cast<long>(N) + 1, 2);

  switch (trunc.kind) {
    case TruncationKind::None:
      throw InadmissibleError("no truncation condition realized; orthogonality data undefined");
    case TruncationKind::TypeIVInadmissible:
      throw InadmissibleError("truncation type iv (g = -(N+1)/2) is inadmissible: u_n singular");
    case TruncationKind::TypeI: {
      if (N % 2 != 0) throw InadmissibleError("type i truncation requires even N");
      UniBIParams p = params;
      if (trunc.j == 2) p = p.swap_r();
      if (trunc.l == 2) p = p.swap_rho();
      if (p.r1 - p.rho1 != target) {
        throw InadmissibleError("parameters do not satisfy r_j - rho_l = (N+1)/2");
      }
      return {grid_ascending(p, N), weights_table(p, N), norms_type_i(p, N)};
    }
    case TruncationKind::TypeII: {
      if (N % 2 != 1) throw InadmissibleError("type ii truncation requires odd N");
      if (params.rho1 + params.rho2 != -target) {
        throw InadmissibleError("parameters do not satisfy rho1 + rho2 = -(N+1)/2");
      }
      return {grid_ascending(params, N), weights_table(params, N), norms_type_ii(params, N)};
    }
    case TruncationKind::TypeIII: {
      if (N % 2 != 1) throw InadmissibleError("type iii truncation requires odd N");
      if (params.r1 + params.r2 != target) {
        throw InadmissibleError("parameters do not satisfy r1 + r2 = (N+1)/2");
      }
      std::vector<ExactScalar> xs;
      xs.reserve(N + 1);
      for (unsigned k = 0; k <= N; ++k) {
        xs.push_back(sign_pow(k) * (params.r1 - ExactScalar(static_cast<long>(k), 2) - kQuarter) -
                     kQuarter);
      }
      // B_n(x; rho1, rho2, r1, r2) = (-1)^n B_n(-x - 1/2; -r1, -r2, -rho1, -rho2),
      // and x_k = -y_k - 1/2 maps this lattice onto the substituted family's
      // lattice, so weights and norms are those of the substituted family.
      const UniBIParams sub{-params.r1, -params.r2, -params.rho1, -params.rho2};
      return {std::move(xs), weights_table(sub, N), norms_type_ii(sub, N)};
    }
  }
  throw InadmissibleError("unreachable truncation kind");
}

ExactScalar dunkl_apply(const UniBIParams& p, const EvalFn& f, const ExactScalar& x) {
  if (x.is_zero()) throw PoleError("dunkl operator undefined at x = 0");
  if (x == ExactScalar(-1, 2)) throw PoleError("dunkl operator undefined at x = -1/2");
  const ExactScalar c_reflect = (x - p.rho1) * (x - p.rho2) / (2 * x);
  const ExactScalar c_shift = (x - p.r1 + kHalf) * (x - p.r2 + kHalf) / (2 * x + 1);
  return c_reflect * (f(x) - f(-x)) + c_shift * (f(-x - 1) - f(x));
}

ExactScalar dunkl_eigenvalue(const UniBIParams& p, unsigned n) {
  if (n % 2 == 0) return ExactScalar(static_cast<long>(n), 2);
  return p.r1 + p.r2 - p.rho1 - p.rho2 - ExactScalar(static_cast<long>(n) + 1, 2);
}

} // namespace bannai::uni
