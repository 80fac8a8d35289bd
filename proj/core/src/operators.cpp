#include "bannai/operators.hpp"

#include <string>

#include "bannai/errors.hpp"
#include "bannai/univariate.hpp"

namespace bannai::ops {
namespace {

const ExactScalar kHalf(1, 2);
const ExactScalar kQuarter(1, 4);

void require_off_pole(const ExactScalar& z, const char* var) {
  if (z == kQuarter || z == -kQuarter) {
    throw PoleError(std::string(var) + " = " + z.str() + " is an operator pole");
  }
}

ExactScalar guarded_div(const ExactScalar& num, const ExactScalar& den, const std::string& name) {
  if (den.is_zero()) {
    throw PoleError(name + " vanishes");
  }
  return num / den;
}

// The nine L2 coefficients, i and j indexing the half-shift exponents.
ExactScalar l2_coefficient(const BivFreeParams& P, int i, int j, const ExactScalar& z1,
                           const ExactScalar& z2) {
  require_off_pole(z1, "z1");
  require_off_pole(z2, "z2");
  const ExactScalar zm = z1 - kQuarter, zp = z1 + kQuarter;
  const ExactScalar wm = z2 - kQuarter, wp = z2 + kQuarter;
  const ExactScalar four(4);
  const ExactScalar aslot = z1 - P.alpha + kQuarter;      // pairs with i = -1
  const ExactScalar bslot = z1 - P.beta - kQuarter;       // pairs with i = +1
  const ExactScalar gslot = z2 + P.gamma + kQuarter;      // pairs with j = -1
  const ExactScalar dslot = z2 - P.delta - kQuarter;      // pairs with j = +1
  const ExactScalar mixed = P.delta * wp - P.gamma * wm;  // pairs with j = 0
  const ExactScalar stay1 = P.alpha * zm + P.beta * zp;   // pairs with i = 0

  if (i == -1 && j == -1) {
    return aslot * gslot * (P.epsilon + z1 + z2 + kHalf) / (four * zp * wp);
  }
  if (i == -1 && j == 0) {
    return aslot * (P.epsilon + z1 - z2) * mixed / (four * zp * wm * wp);
  }
  if (i == -1 && j == 1) {
    return aslot * dslot * (P.epsilon + z1 - z2) / (four * zp * wm);
  }
  if (i == 0 && j == -1) {
    return gslot * (P.epsilon - z1 + z2) * stay1 / (four * zm * zp * wp);
  }
  if (i == 0 && j == 0) {
    const ExactScalar constant = P.alpha * (P.gamma - P.delta + kHalf) +
                                 P.beta * (P.gamma - P.delta - kHalf) -
                                 kHalf * (P.gamma + P.delta + kHalf) - P.epsilon;
    return constant + (P.epsilon + four * z1 * z2 - kQuarter) * stay1 * mixed /
                          (four * zm * zp * wm * wp);
  }
  if (i == 0 && j == 1) {
    return dslot * (P.epsilon + z1 - z2) * stay1 / (four * zm * zp * wm);
  }
  if (i == 1 && j == -1) {
    return bslot * gslot * (P.epsilon - z1 + z2) / (four * zm * wp);
  }
  if (i == 1 && j == 0) {
    return bslot * (P.epsilon - z1 + z2) * mixed / (four * zm * wm * wp);
  }
  return bslot * dslot * (P.epsilon - z1 - z2 + kHalf) / (four * zm * wm);
}

}  // namespace

ExactScalar shift_reflect_argument(const ExactScalar& z, int i) {
  if (i == 0) {
    return z;
  }
  return -z + ExactScalar(i, 2);
}

std::array<ShiftReflectTerm, 9> l2_terms(const BivFreeParams& params) {
  std::array<ShiftReflectTerm, 9> terms;
  std::size_t k = 0;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      terms[k].i = i;
      terms[k].j = j;
      terms[k].coefficient = [params, i, j](const ExactScalar& z1, const ExactScalar& z2) {
        return l2_coefficient(params, i, j, z1, z2);
      };
      ++k;
    }
  }
  return terms;
}

ExactScalar apply_L1(const BivFreeParams& params, const BivFn& f, const ExactScalar& z1,
                     const ExactScalar& z2) {
  require_off_pole(z1, "z1");
  const ExactScalar two(2);
  const ExactScalar here = f(z1, z2);
  const ExactScalar down = (params.epsilon - z1 + z2) * (z1 - params.beta - kQuarter) /
                           (two * (z1 - kQuarter));
  const ExactScalar up = (params.epsilon + z1 - z2) * (z1 - params.alpha + kQuarter) /
                         (two * (z1 + kQuarter));
  return down * (f(-z1 + kHalf, z2) - here) + up * (f(-z1 - kHalf, z2) - here);
}

ExactScalar apply_L2(const BivFreeParams& params, const BivFn& f, const ExactScalar& z1,
                     const ExactScalar& z2) {
  require_off_pole(z1, "z1");
  require_off_pole(z2, "z2");
  ExactScalar acc(0);
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      acc += l2_coefficient(params, i, j, z1, z2) *
             f(shift_reflect_argument(z1, i), shift_reflect_argument(z2, j));
    }
  }
  return acc;
}

ExactScalar eigenvalue_L1(const BivFreeParams& params, unsigned n1) {
  if (n1 % 2 == 0) {
    return ExactScalar(static_cast<long>(n1), 2);
  }
  return ExactScalar(-static_cast<long>(n1), 2) + params.alpha - params.beta -
         params.epsilon - params.epsilon;
}

ExactScalar eigenvalue_L2(const BivFreeParams& params, unsigned n1, unsigned n2) {
  const long total = static_cast<long>(n1) + static_cast<long>(n2);
  if (total % 2 == 0) {
    return ExactScalar(total, 2);
  }
  return ExactScalar(-total - 1, 2) + params.alpha - params.beta - params.gamma - params.delta -
         params.epsilon - params.epsilon;
}

ExactScalar three_term_step(const BivFreeParams& params, unsigned n1, unsigned n2,
                            const ExactScalar& z1, const ExactScalar& z2) {
  const uni::UniBIParams second = biv::def2_factor2_params(params, n1);
  const uni::RecurrenceCoeffs rc = uni::recurrence_coeffs(second, n2);
  const ExactScalar b = second.rho1 - rc.A - rc.C;
  const ExactScalar x = sign_pow(static_cast<long>(n1)) * z2 - kQuarter;
  ExactScalar rhs = biv::eval_def2(params, n1, n2 + 1, z1, z2) +
                    b * biv::eval_def2(params, n1, n2, z1, z2);
  if (n2 >= 1) {
    rhs += uni::u_coeff(second, n2) * biv::eval_def2(params, n1, n2 - 1, z1, z2);
  }
  return x * biv::eval_def2(params, n1, n2, z1, z2) - rhs;
}

NineTermCoeffs nine_term_coeffs(const BivFreeParams& P, unsigned n1, unsigned n2) {
  const ExactScalar a = P.alpha, b = P.beta, g = P.gamma, d = P.delta, e = P.epsilon;
  const ExactScalar n1s(static_cast<long>(n1)), n2s(static_cast<long>(n2));
  const ExactScalar two(2), four(4);
  const bool e1 = n1 % 2 == 0, e2 = n2 % 2 == 0;

  // Shared denominators of the coefficient table.
  const ExactScalar D0 = -a + b + g + d + two * e + n1s + n2s;
  const ExactScalar D1 = D0 + 1;
  const ExactScalar E0 = -two * a + two * b + four * e + two * n1s - 1;
  const ExactScalar E1 = E0 + two;
  const std::string sD0 = "-alpha+beta+gamma+delta+2*epsilon+n1+n2";
  const std::string sD1 = sD0 + "+1";
  const std::string sE0 = "-2*alpha+2*beta+4*epsilon+2*n1-1";
  const std::string sE1 = "-2*alpha+2*beta+4*epsilon+2*n1+1";

  const ExactScalar half_sum = (n1s + n2s) / two;

  NineTermCoeffs out;
  out.theta[0] = sign_pow(static_cast<long>(n2));

  // theta2
  {
    const ExactScalar pB = two * b + two * g + two * e + n1s + n2s;   // beta-flavored
    const ExactScalar pA = -two * a + two * g + two * e + n1s + n2s;  // alpha-flavored
    if (e1 && e2) {
      out.theta[1] = n2s / four * (guarded_div(pB + 1, D1, sD1) - guarded_div(pA, D0, sD0));
    } else if (e1) {
      out.theta[1] = (two * g + two * d + n2s) / four *
                     (guarded_div(pA + 1, D1, sD1) - guarded_div(pB, D0, sD0));
    } else if (e2) {
      out.theta[1] = n2s / four * (guarded_div(pB, D0, sD0) - guarded_div(pA + 1, D1, sD1));
    } else {
      out.theta[1] = (two * g + two * d + n2s) / four *
                     (guarded_div(pA, D0, sD0) - guarded_div(pB + 1, D1, sD1));
    }
  }

  // theta3
  {
    const ExactScalar aG = -two * a + two * g + two * e + n1s + n2s;
    const ExactScalar aD = -two * a + two * d + two * e + n1s + n2s;
    const ExactScalar bG = two * b + two * g + two * e + n1s + n2s;
    const ExactScalar bD = two * b + two * d + two * e + n1s + n2s;
    const ExactScalar den = ExactScalar(16) * D0 * D0;
    const std::string sden = "16*(" + sD0 + ")^2";
    if (e1 && e2) {
      out.theta[2] = guarded_div(-n2s * (two * g + two * d + n2s - 1) * aG * bD, den, sden);
    } else if (e1) {
      out.theta[2] = guarded_div((n2s - 1) * (two * g + two * d + n2s) * aD * bG, den, sden);
    } else if (e2) {
      out.theta[2] = guarded_div(-n2s * (two * g + two * d + n2s - 1) * aD * bG, den, sden);
    } else {
      out.theta[2] = guarded_div((n2s - 1) * (two * g + two * d + n2s) * aG * bD, den, sden);
    }
  }

  // theta4
  {
    const ExactScalar up = -a + b + two * e + n1s + kHalf;    // = E1/2
    const ExactScalar down = -a + b + two * e + n1s - kHalf;  // = E0/2
    const std::string sup = "-alpha+beta+2*epsilon+n1+1/2";
    const std::string sdown = "-alpha+beta+2*epsilon+n1-1/2";
    if (e1) {
      out.theta[3] = ExactScalar(1) - guarded_div(two * e + n1s / two, up, sup) -
                     guarded_div(n1s / two, down, sdown);
    } else {
      out.theta[3] = ExactScalar(1) - guarded_div(two * e + (n1s - 1) / two, down, sdown) -
                     guarded_div((n1s + 1) / two, up, sup);
    }
  }

  // theta5
  {
    ExactScalar f1;
    if (e1) {
      f1 = guarded_div(n1s, E0, sE0) + guarded_div(four * e + n1s, E1, sE1) - 1;
    } else {
      f1 = guarded_div(n1s + 1, E1, sE1) + guarded_div(four * e + n1s - 1, E0, sE0) - 1;
    }
    ExactScalar f2, f3;
    if (e1 && e2) {
      f2 = two * a + two * b - guarded_div(two * b + two * g + two * e + n1s + n2s + 1, D1, sD1) +
           1;
      f3 = -two * a + two * b - guarded_div(n2s, D0, sD0) + four * e + two * n1s + 1;
    } else if (e1) {
      f2 = two * a + two * b + guarded_div(two * (b + g) + two * e + n1s + n2s, D0, sD0) - 1;
      f3 = -two * a + two * b + guarded_div(n2s + 1, D1, sD1) + four * e + two * n1s - 1;
    } else if (e2) {
      f2 = two * a + two * b + guarded_div(-two * a + two * g + two * e + n1s + n2s + 1, D1, sD1) -
           1;
      f3 = -two * a + two * b - guarded_div(n2s, D0, sD0) + four * e + two * n1s + 1;
    } else {
      f2 = two * a + two * b - guarded_div(-two * a + two * g + two * e + n1s + n2s, D0, sD0) + 1;
      f3 = -two * a + two * b + guarded_div(n2s + 1, D1, sD1) + four * e + two * n1s - 1;
    }
    out.theta[4] = -ExactScalar(1, 4) * f1 * f2 * f3;
  }

  // theta6
  {
    ExactScalar mid;
    if (e1) {
      mid = two * a - two * b + guarded_div(two * n1s, E0, sE0) - 1;
    } else {
      mid = two * a - two * b + guarded_div(ExactScalar(8) * e + two * n1s - two, E0, sE0) - 1;
    }
    const ExactScalar den = two * E1 * D0 * D0;
    const ExactScalar den_odd = E1 * D0 * D0;
    const std::string sden = "(" + sE1 + ")*(" + sD0 + ")^2";
    const ExactScalar gSlot = -a + g + e + half_sum, dSlot = b + d + e + half_sum;
    const ExactScalar gSlot2 = -a + d + e + half_sum, dSlot2 = b + g + e + half_sum;
    const ExactScalar big = -a + b + g + d + two * e + n1s + n2s / two;
    const ExactScalar ab2 = -a + b + two * e + n1s + n2s / two;
    if (e1 && e2) {
      out.theta[5] = guarded_div(n2s * mid * gSlot * dSlot * big, den, sden);
    } else if (e1) {
      out.theta[5] =
          guarded_div((g + d + n2s / two) * mid * ab2 * gSlot2 * dSlot2, den_odd, sden);
    } else if (e2) {
      out.theta[5] = guarded_div(n2s * mid * gSlot2 * dSlot2 * big, den, sden);
    } else {
      out.theta[5] = guarded_div((g + d + n2s / two) * mid * ab2 * gSlot * dSlot, den_odd, sden);
    }
  }

  // theta7
  {
    const ExactScalar den = E0 * E0;
    const std::string sden = "(" + sE0 + ")^2";
    if (e1) {
      out.theta[6] = sign_pow(static_cast<long>(n2)) *
                     guarded_div(n1s * (-two * a + two * b + four * e + n1s - 1), den, sden);
    } else {
      out.theta[6] =
          sign_pow(static_cast<long>(n2)) *
          guarded_div((four * e + n1s - 1) * (-two * a + two * b + n1s), den, sden);
    }
  }

  // theta8
  {
    const ExactScalar lead_even = n1s / two * (-two * a + two * b + four * e + n1s - 1);
    const ExactScalar lead_odd = (two * e + (n1s - 1) / two) * (two * a - two * b - n1s);
    const ExactScalar big = -a + b + g + d + two * e + n1s + n2s / two;
    const ExactScalar ab2 = -a + b + two * e + n1s + n2s / two;
    const ExactScalar minusform =
        two * a + two * b - guarded_div(-two * a + two * g + two * e + n1s + n2s, D0, sD0) + 1;
    const ExactScalar plusform =
        two * a + two * b + guarded_div(-two * a + two * g + two * e + n1s + n2s + 1, D1, sD1) -
        1;
    const ExactScalar denD1 = E0 * E0 * D1, denD0 = E0 * E0 * D0;
    const std::string sdenD1 = "(" + sE0 + ")^2*(" + sD1 + ")";
    const std::string sdenD0 = "(" + sE0 + ")^2*(" + sD0 + ")";
    if (e1 && e2) {
      out.theta[7] = guarded_div(-lead_even * big * minusform, denD1, sdenD1);
    } else if (e1) {
      out.theta[7] = guarded_div(lead_even * ab2 * plusform, denD0, sdenD0);
    } else if (e2) {
      out.theta[7] = guarded_div(lead_odd * big * plusform, denD0, sdenD0);
    } else {
      out.theta[7] = guarded_div(-lead_odd * ab2 * minusform, denD1, sdenD1);
    }
  }

  // theta9
  {
    const ExactScalar lead_even = n1s / two * (-two * a + two * b + four * e + n1s - 1);
    const ExactScalar lead_odd = (two * e + (n1s - 1) / two) * (-two * a + two * b + n1s);
    const ExactScalar run_even = -two * a + two * b + four * e + two * n1s + n2s - 1;
    const ExactScalar run_odd = run_even + 1;
    const ExactScalar gSlot = -a + g + e + half_sum, dSlot = b + d + e + half_sum;
    const ExactScalar gSlot2 = -a + d + e + half_sum, dSlot2 = b + g + e + half_sum;
    const ExactScalar big = -a + b + g + d + two * e + n1s + n2s / two;
    const ExactScalar big_odd = -a + b + g + d + two * e + n1s + (n2s - 1) / two;
    const ExactScalar den = E0 * E0 * D0 * D0;
    const std::string sden = "(" + sE0 + ")^2*(" + sD0 + ")^2";
    ExactScalar num;
    if (e1 && e2) {
      num = lead_even * run_even * gSlot * dSlot * big;
    } else if (e1) {
      num = lead_even * run_odd * gSlot2 * dSlot2 * big_odd;
    } else if (e2) {
      num = lead_odd * run_even * gSlot2 * dSlot2 * big;
    } else {
      num = lead_odd * run_odd * gSlot * dSlot * big_odd;
    }
    out.theta[8] = sign_pow(static_cast<long>(n2) + 1) * guarded_div(num, den, sden);
  }

  return out;
}

ExactScalar nine_term_residual(const BivFreeParams& params, unsigned n1, unsigned n2,
                               const ExactScalar& z1, const ExactScalar& z2) {
  const NineTermCoeffs th = nine_term_coeffs(params, n1, n2);
  struct Step {
    int dn1, dn2;
  };
  // Term order matches NineTermCoeffs.
  constexpr Step steps[9] = {{1, 0}, {1, -1}, {1, -2}, {0, 1}, {0, 0},
                             {0, -1}, {-1, 2}, {-1, 1}, {-1, 0}};
  ExactScalar rhs(0);
  for (unsigned k = 0; k < 9; ++k) {
    const long m1 = static_cast<long>(n1) + steps[k].dn1;
    const long m2 = static_cast<long>(n2) + steps[k].dn2;
    if (m1 < 0 || m2 < 0) {
      continue;
    }
    rhs += th.theta[k] * biv::eval_def2(params, static_cast<unsigned>(m1),
                                        static_cast<unsigned>(m2), z1, z2);
  }
  const ExactScalar lhs = (z1 - params.alpha * params.alpha + params.beta * params.beta) *
                          biv::eval_def2(params, n1, n2, z1, z2);
  return lhs - rhs;
}

}  // namespace bannai::ops
