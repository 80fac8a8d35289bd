#include "bannai/serialize.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

#include "bannai/errors.hpp"

namespace bannai::ser {

namespace {

json scalar_array(const std::vector<ExactScalar>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

std::vector<ExactScalar> scalar_vector(const json& arr, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<ExactScalar> out;
  out.reserve(arr.size());
  for (const auto& item : arr) out.push_back(scalar_from_json(item));
  return out;
}

json scalar_matrix(const std::vector<std::vector<ExactScalar>>& rows) {
  json arr = json::array();
  for (const auto& row : rows) arr.push_back(scalar_array(row));
  return arr;
}

std::vector<std::vector<ExactScalar>> scalar_rows(const json& arr, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + ": expected an array of arrays");
  std::vector<std::vector<ExactScalar>> out;
  out.reserve(arr.size());
  for (const auto& row : arr) out.push_back(scalar_vector(row, what));
  return out;
}

std::string simplex_key(unsigned n1, unsigned n2) {
  return "(" + std::to_string(n1) + "," + std::to_string(n2) + ")";
}

// Shortest decimal that reparses to the same double; deterministic.
std::string double_str(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

}  // namespace

json scalar_json(const ExactScalar& v) { return json(v.str()); }

ExactScalar scalar_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("exact value: expected a \"p/q\" string");
  return ExactScalar::parse(j.get<std::string>());
}

json to_json(const uni::OrthogonalityData& data) {
  json j;
  j["grid"] = scalar_array(data.grid);
  j["weights"] = scalar_array(data.weights);
  j["norms"] = scalar_array(data.norms);
  return j;
}

uni::OrthogonalityData ortho_from_json(const json& j) {
  uni::OrthogonalityData data;
  data.grid = scalar_vector(j.at("grid"), "grid");
  data.weights = scalar_vector(j.at("weights"), "weights");
  data.norms = scalar_vector(j.at("norms"), "norms");
  if (data.grid.size() != data.weights.size() || data.grid.size() != data.norms.size()) {
    throw ParseError("orthogonality table: grid, weights and norms must have equal length");
  }
  return data;
}

json to_json(const biv::BivLattice& lattice) {
  json j;
  j["z1"] = scalar_matrix(lattice.z1);
  j["z2"] = scalar_array(lattice.z2);
  j["w1"] = scalar_matrix(lattice.w1);
  j["w2"] = scalar_array(lattice.w2);
  json h = json::object();
  for (unsigned n1 = 0; n1 < lattice.h.size(); ++n1) {
    for (unsigned n2 = 0; n2 < lattice.h[n1].size(); ++n2) {
      h[simplex_key(n1, n2)] = lattice.h[n1][n2].str();
    }
  }
  j["H"] = std::move(h);
  return j;
}

biv::BivLattice lattice_from_json(const json& j) {
  biv::BivLattice lattice;
  lattice.z1 = scalar_rows(j.at("z1"), "z1");
  lattice.z2 = scalar_vector(j.at("z2"), "z2");
  lattice.w1 = scalar_rows(j.at("w1"), "w1");
  lattice.w2 = scalar_vector(j.at("w2"), "w2");
  if (lattice.z2.empty()) throw ParseError("lattice: empty z2 grid");
  const unsigned N = static_cast<unsigned>(lattice.z2.size()) - 1;
  lattice.N = N;

  const json& h = j.at("H");
  if (!h.is_object()) throw ParseError("H: expected an object keyed \"(n1,n2)\"");
  lattice.h.assign(N + 1, {});
  for (unsigned n1 = 0; n1 <= N; ++n1) {
    lattice.h[n1].assign(N + 1 - n1, ExactScalar());
  }
  unsigned long seen = 0;
  for (const auto& [key, value] : h.items()) {
    unsigned n1 = 0, n2 = 0;
    if (std::sscanf(key.c_str(), "(%u,%u)", &n1, &n2) != 2 || n1 + n2 > N) {
      throw ParseError("H: bad simplex key " + key);
    }
    lattice.h[n1][n2] = scalar_from_json(value);
    ++seen;
  }
  if (seen != static_cast<unsigned long>(N + 1) * (N + 2) / 2) {
    throw ParseError("H: expected one entry per simplex point");
  }
  return lattice;
}

json to_json(const ResidualReport& report) {
  json j;
  j["op"] = report.op;
  json params = json::object();
  for (const auto& [name, value] : report.params) params[name] = value;
  j["params"] = std::move(params);
  j["max_residual"] = report.max_residual.str();
  j["cases"] = report.cases;
  if (!report.worst_case.empty()) j["worst"] = report.worst_case;
  return j;
}

json to_json(const qlimit::ConvergenceReport& report) {
  json j;
  j["check"] = report.check;
  json ts = json::array();
  for (const auto& t : report.ts) ts.push_back(t.str());
  j["t"] = std::move(ts);
  json errors = json::array();
  for (std::size_t k = 0; k < report.ts.size(); ++k) {
    double worst = 0.0;
    for (const auto& c : report.cases) {
      if (k < c.error.size()) worst = std::max(worst, c.error[k]);
    }
    errors.push_back(worst);
  }
  j["error"] = std::move(errors);
  j["order"] = report.min_order();
  j["pass"] = report.pass();
  j["prec"] = static_cast<long>(report.prec);
  json cases = json::array();
  for (const auto& c : report.cases) {
    json cj;
    cj["label"] = c.label;
    cj["error"] = c.error;
    cj["order"] = c.order;
    cj["at_floor"] = c.at_floor;
    cj["max_imag"] = c.max_imag;
    cj["pass"] = c.pass;
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j;
}

std::string to_csv(const uni::OrthogonalityData& data) {
  std::string out = "k,grid,weight,norm\n";
  for (std::size_t k = 0; k < data.grid.size(); ++k) {
    out += std::to_string(k) + "," + data.grid[k].str() + "," + data.weights[k].str() + "," +
           data.norms[k].str() + "\n";
  }
  return out;
}

std::string to_csv(const biv::BivLattice& lattice) {
  std::string out = "table,i,j,value\n";
  const auto row2 = [&out](const char* name, const std::vector<std::vector<ExactScalar>>& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        out += std::string(name) + "," + std::to_string(i) + "," + std::to_string(j) + "," +
               m[i][j].str() + "\n";
      }
    }
  };
  const auto row1 = [&out](const char* name, const std::vector<ExactScalar>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += std::string(name) + "," + std::to_string(i) + ",," + v[i].str() + "\n";
    }
  };
  row2("z1", lattice.z1);
  row1("z2", lattice.z2);
  row2("w1", lattice.w1);
  row1("w2", lattice.w2);
  row2("H", lattice.h);
  return out;
}

std::string to_csv(const ResidualReport& report) {
  std::string out = "key,value\n";
  out += "op," + report.op + "\n";
  for (const auto& [name, value] : report.params) {
    out += "param:" + name + "," + value + "\n";
  }
  out += "max_residual," + report.max_residual.str() + "\n";
  out += "cases," + std::to_string(report.cases) + "\n";
  if (!report.worst_case.empty()) out += "worst," + report.worst_case + "\n";
  return out;
}

std::string to_csv(const qlimit::ConvergenceReport& report) {
  std::string out = "check,case,t,error,order,at_floor,max_imag,pass\n";
  for (const auto& c : report.cases) {
    for (std::size_t k = 0; k < c.error.size() && k < report.ts.size(); ++k) {
      out += report.check + "," + c.label + "," + report.ts[k].str() + "," +
             double_str(c.error[k]) + "," + double_str(c.order) + "," +
             (c.at_floor ? "1" : "0") + "," + double_str(c.max_imag) + "," +
             (c.pass ? "1" : "0") + "\n";
    }
  }
  return out;
}

}  // namespace bannai::ser
