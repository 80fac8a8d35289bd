#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "bannai/bivariate.hpp"
#include "bannai/exact.hpp"
#include "bannai/qlimit.hpp"
#include "bannai/univariate.hpp"

namespace bannai::ser {

// Insertion-ordered JSON so emitted documents keep their documented key
// order and identical inputs produce byte-identical output.
using json = nlohmann::ordered_json;

// Exact scalars travel as canonical strings "p/q" ("p" when the denominator
// is 1); parsing back yields the bit-identical value.
json scalar_json(const ExactScalar& v);
ExactScalar scalar_from_json(const json& j);

// {"grid": [...], "weights": [...], "norms": [...]}, exact strings.
json to_json(const uni::OrthogonalityData& data);
uni::OrthogonalityData ortho_from_json(const json& j);

// {"z1": [[..]], "z2": [..], "w1": [[..]], "w2": [..], "H": {"(n1,n2)": ..}}.
// The truncation degree is implied by the shapes; the normalization table
// carries entries exactly on the simplex n1 + n2 <= N.
json to_json(const biv::BivLattice& lattice);
biv::BivLattice lattice_from_json(const json& j);

// Outcome of one exact verification sweep.
struct ResidualReport {
  std::string op;
  std::vector<std::pair<std::string, std::string>> params;  // name, exact value
  ExactScalar max_residual;
  unsigned long cases = 0;
  std::string worst_case;  // empty when every residual vanished

  bool clean() const { return max_residual.is_zero(); }
};

// {"op": ..., "params": {...}, "max_residual": "0", "cases": K} plus the
// worst offender under "worst" when present.
json to_json(const ResidualReport& report);

// {"check": ..., "t": [...], "error": [...], "order": ..., "pass": ...}
// with the per-t error aggregated as the maximum over cases, plus the full
// per-case detail under "cases".
json to_json(const qlimit::ConvergenceReport& report);

// CSV flattenings; header row first, one record per line, '\n' terminated.
std::string to_csv(const uni::OrthogonalityData& data);
std::string to_csv(const biv::BivLattice& lattice);
std::string to_csv(const ResidualReport& report);
std::string to_csv(const qlimit::ConvergenceReport& report);

}  // namespace bannai::ser
