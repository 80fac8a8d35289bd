#pragma once

#include <stdexcept>
#include <vector>

#include "bannai/exact.hpp"

namespace bannai {

/// Monomial coefficients (ascending degree, length nodes.size()) of the unique
/// polynomial of degree < nodes.size() through (nodes[i], values[i]). Exact;
/// nodes must be pairwise distinct.
inline std::vector<ExactScalar> interpolate_coefficients(const std::vector<ExactScalar>& nodes,
                                                         const std::vector<ExactScalar>& values) {
  const std::size_t m = nodes.size();
  if (m == 0 || values.size() != m) {
    throw std::invalid_argument("interpolation needs matching nonempty node/value lists");
  }
  // Newton divided differences.
  std::vector<ExactScalar> dd = values;
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
    }
  }
  // Expand the Newton form into monomial coefficients.
  std::vector<ExactScalar> coeffs(m, ExactScalar(0));
  coeffs[0] = dd[m - 1];
  std::size_t degree = 0;
  for (std::size_t i = m - 1; i-- > 0;) {
    // coeffs(x) <- coeffs(x) * (x - nodes[i]) + dd[i]
    ++degree;
    for (std::size_t k = degree; k >= 1; --k) {
      coeffs[k] = coeffs[k - 1] - nodes[i] * coeffs[k];
    }
    coeffs[0] = dd[i] - nodes[i] * coeffs[0];
  }
  return coeffs;
}

} // namespace bannai
