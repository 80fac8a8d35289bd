#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "bannai/bivariate.hpp"
#include "bannai/errors.hpp"
#include "bannai/serialize.hpp"
#include "bannai/univariate.hpp"

using bannai::ExactScalar;
using namespace bannai::ser;

namespace {

ExactScalar Q(const char* s) { return ExactScalar::parse(s); }

}  // namespace

TEST_CASE("scalars travel as canonical strings") {
  CHECK(scalar_json(Q("3/4")) == json("3/4"));
  CHECK(scalar_json(Q("-3/4")) == json("-3/4"));
  CHECK(scalar_json(Q("6/8")) == json("3/4"));  // canonical lowest terms
  CHECK(scalar_json(Q("5")) == json("5"));      // denominator 1 omitted
  CHECK(scalar_json(Q("0")) == json("0"));

  for (const char* s : {"3/4", "-22/7", "0", "12", "-1/1000000000000"}) {
    const ExactScalar v = Q(s);
    CHECK(scalar_from_json(scalar_json(v)) == v);
  }
  CHECK_THROWS_AS(scalar_from_json(json(1.5)), bannai::ParseError);
  CHECK_THROWS_AS(scalar_from_json(json("1/0")), bannai::ParseError);
}

TEST_CASE("univariate orthogonality tables round-trip bit-identically") {
  // Type I truncation at N = 2: r1 - rho1 = 3/2.
  const bannai::uni::UniBIParams p{Q("1/3"), Q("7/5"), Q("1/3") + Q("3/2"), Q("1/5")};
  const auto trunc = bannai::uni::detect_truncation(p, 2);
  REQUIRE(trunc.kind != bannai::uni::TruncationKind::None);
  const auto data = bannai::uni::orthogonality_data(p, trunc);

  const json j = to_json(data);
  CHECK(j.size() == 3);
  CHECK(j.contains("grid"));
  CHECK(j.contains("weights"));
  CHECK(j.contains("norms"));
  CHECK(j["grid"].size() == 3);

  const auto back = ortho_from_json(j);
  CHECK(back.grid == data.grid);
  CHECK(back.weights == data.weights);
  CHECK(back.norms == data.norms);

  // Re-serializing the parsed table reproduces the document byte for byte.
  CHECK(to_json(back).dump() == j.dump());

  const std::string csv = to_csv(data);
  CHECK(csv.substr(0, csv.find('\n')) == "k,grid,weight,norm");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + N + 1 rows
}

TEST_CASE("bivariate lattices round-trip bit-identically") {
  const bannai::biv::BivTruncParams p{Q("1/3"), Q("1/5"), Q("1/7"), Q("2/9"), 3};
  const auto lattice = bannai::biv::build_lattice(p);

  const json j = to_json(lattice);
  CHECK(j.size() == 5);
  CHECK(j["z1"].size() == lattice.z1.size());
  CHECK(j["H"].is_object());
  CHECK(j["H"].size() == 10);  // simplex points for N = 3
  CHECK(j["H"].contains("(0,0)"));
  CHECK(j["H"].contains("(3,0)"));
  CHECK(!j["H"].contains("(3,1)"));

  const auto back = lattice_from_json(j);
  CHECK(back.N == lattice.N);
  CHECK(back.z1 == lattice.z1);
  CHECK(back.z2 == lattice.z2);
  CHECK(back.w1 == lattice.w1);
  CHECK(back.w2 == lattice.w2);
  CHECK(back.h == lattice.h);
  CHECK(to_json(back).dump() == j.dump());

  json broken = j;
  broken["H"].erase("(1,1)");
  CHECK_THROWS_AS(lattice_from_json(broken), bannai::ParseError);

  const std::string csv = to_csv(lattice);
  CHECK(csv.substr(0, csv.find('\n')) == "table,i,j,value");
}

TEST_CASE("residual reports carry the exact worst residual") {
  ResidualReport rep;
  rep.op = "ninerec";
  rep.params = {{"alpha", "1/3"}, {"beta", "2/5"}};
  rep.max_residual = Q("0");
  rep.cases = 42;

  const json j = to_json(rep);
  CHECK(j["op"] == "ninerec");
  CHECK(j["params"]["alpha"] == "1/3");
  CHECK(j["max_residual"] == "0");
  CHECK(j["cases"] == 42);
  CHECK(!j.contains("worst"));

  rep.max_residual = Q("1/7");
  rep.worst_case = "n1=2 n2=1 point 3";
  const json bad = to_json(rep);
  CHECK(bad["max_residual"] == "1/7");
  CHECK(bad["worst"] == "n1=2 n2=1 point 3");

  const std::string csv = to_csv(rep);
  CHECK(csv.find("key,value\n") == 0);
  CHECK(csv.find("param:alpha,1/3\n") != std::string::npos);
  CHECK(csv.find("worst,n1=2 n2=1 point 3\n") != std::string::npos);
}

TEST_CASE("convergence reports serialize with exact t values") {
  const bannai::biv::BivFreeParams f{Q("1/3"), Q("1/5"), Q("2/7"), Q("1/11"), Q("1/13")};
  const auto rep = bannai::qlimit::check_poly_limit(f, 1, 0, Q("1/3"), Q("2/7"),
                                                    {Q("1/64"), Q("1/128")}, 128);

  const json j = to_json(rep);
  CHECK(j["check"] == "poly-limit-free");
  CHECK(j["t"] == json::array({"1/64", "1/128"}));
  CHECK(j["error"].size() == 2);
  CHECK(j["error"][0].get<double>() > j["error"][1].get<double>());
  CHECK(j["order"].get<double>() > 0.9);
  CHECK(j["pass"] == true);
  CHECK(j["prec"] == 128);
  CHECK(j["cases"].size() == 1);
  CHECK(j["cases"][0]["label"] == "P(1,0)");

  // Identical computation, byte-identical document.
  const auto rep2 = bannai::qlimit::check_poly_limit(f, 1, 0, Q("1/3"), Q("2/7"),
                                                     {Q("1/64"), Q("1/128")}, 128);
  CHECK(to_json(rep2).dump(2) == j.dump(2));

  const std::string csv = to_csv(rep);
  CHECK(csv.substr(0, csv.find('\n')) == "check,case,t,error,order,at_floor,max_imag,pass");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
