#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bannai/bivariate.hpp"
#include "bannai/errors.hpp"
#include "bannai/operators.hpp"
#include "bannai/qlimit.hpp"
#include "bannai/serialize.hpp"
#include "bannai/univariate.hpp"

namespace {

using bannai::ExactScalar;
namespace biv = bannai::biv;
namespace ops = bannai::ops;
namespace qlimit = bannai::qlimit;
namespace ser = bannai::ser;
namespace uni = bannai::uni;

constexpr int kExitPass = 0;       // all residuals zero / all gates met
constexpr int kExitFail = 1;       // a residual or convergence gate failed
constexpr int kExitUsage = 2;      // malformed flags, config, or degrees
constexpr int kExitPole = 3;       // a denominator factor vanished
constexpr int kExitPrecision = 4;  // cancellation past the precision budget

struct Options {
  std::vector<std::string> params;
  unsigned N = 0;
  unsigned max_deg = 4;
  std::vector<std::string> ts;
  long precision = 256;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  std::string config;
  int def = 0;
  unsigned n1 = 0;
  unsigned n2 = 0;
  std::string z1 = "1/3";
  std::string z2 = "2/7";
};

// Deterministic off-pole rational points: odd denominators and nonzero
// numerators avoid 0, -1/2 and +-1/4 exactly.
class PointGen {
public:
  explicit PointGen(std::uint64_t seed) : eng_(seed) {}

  ExactScalar point() {
    static constexpr long kDens[] = {3, 5, 7, 11, 13};
    for (;;) {
      const long num = pick(-12, 12);
      if (num == 0) continue;
      return ExactScalar(num, kDens[pick(0, 4)]);
    }
  }

private:
  long pick(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(eng_);
  }

  std::mt19937_64 eng_;
};

using ParamMap = std::map<std::string, ExactScalar>;

ParamMap parse_params(const std::vector<std::string>& assignments) {
  ParamMap map;
  for (const auto& kv : assignments) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw bannai::ParseError("--params expects name=value, got '" + kv + "'");
    }
    map[kv.substr(0, eq)] = ExactScalar::parse(kv.substr(eq + 1));
  }
  return map;
}

// Exactly the named parameters must be assigned.
std::vector<ExactScalar> take_params(const ParamMap& map, const std::vector<std::string>& names) {
  std::string missing;
  for (const auto& name : names) {
    if (!map.count(name)) missing += missing.empty() ? name : ", " + name;
  }
  if (!missing.empty()) throw bannai::ParseError("missing parameters: " + missing);
  if (map.size() != names.size()) {
    std::string extra;
    for (const auto& [name, value] : map) {
      (void)value;
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        extra += extra.empty() ? name : ", " + name;
      }
    }
    throw bannai::ParseError("unknown parameters: " + extra);
  }
  std::vector<ExactScalar> values;
  values.reserve(names.size());
  for (const auto& name : names) values.push_back(map.at(name));
  return values;
}

biv::BivTruncParams trunc_params(const Options& opt) {
  const auto v = take_params(parse_params(opt.params), {"p1", "p2", "p3", "c"});
  return {v[0], v[1], v[2], v[3], opt.N};
}

biv::BivFreeParams free_params(const Options& opt) {
  const auto v =
      take_params(parse_params(opt.params), {"alpha", "beta", "gamma", "delta", "epsilon"});
  return {v[0], v[1], v[2], v[3], v[4]};
}

uni::UniBIParams uni_params(const Options& opt) {
  const auto v = take_params(parse_params(opt.params), {"rho1", "rho2", "r1", "r2"});
  return {v[0], v[1], v[2], v[3]};
}

std::vector<std::pair<std::string, std::string>> param_pairs(const ParamMap& map) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(map.size());
  for (const auto& [name, value] : map) out.emplace_back(name, value.str());
  return out;
}

std::vector<ExactScalar> parse_ts(const Options& opt) {
  std::vector<std::string> raw = opt.ts;
  if (raw.empty()) raw = {"1/1000", "1/10000"};
  std::vector<ExactScalar> ts;
  ts.reserve(raw.size());
  for (const auto& s : raw) ts.push_back(ExactScalar::parse(s));
  if (ts.size() < 2) {
    throw bannai::ParseError("the empirical order needs at least two t values");
  }
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] < ts[i - 1])) {
      throw bannai::ParseError("t values must form a strictly decreasing sequence");
    }
  }
  return ts;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw bannai::ParseError("cannot open output file " + out_path);
  file << text;
}

std::string render(const ser::ResidualReport& report, const std::string& format) {
  return format == "csv" ? ser::to_csv(report) : ser::to_json(report).dump(2) + "\n";
}

std::string render(const qlimit::ConvergenceReport& report, const std::string& format) {
  return format == "csv" ? ser::to_csv(report) : ser::to_json(report).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const Options& opt) {
  if (opt.def != 1 && opt.def != 2) {
    throw bannai::ParseError("--def must be 1 (truncated) or 2 (free)");
  }
  const ExactScalar z1 = ExactScalar::parse(opt.z1);
  const ExactScalar z2 = ExactScalar::parse(opt.z2);
  ExactScalar value;
  if (opt.def == 1) {
    const auto p = trunc_params(opt);
    if (opt.n1 + opt.n2 > p.N) {
      throw bannai::ParseError("degrees must satisfy n1 + n2 <= N for the truncated family");
    }
    value = biv::eval_def1(p, opt.n1, opt.n2, z1, z2);
  } else {
    value = biv::eval_def2(free_params(opt), opt.n1, opt.n2, z1, z2);
  }
  emit(value.str() + "\n", opt.out);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

struct Sweep {
  ExactScalar max_residual;
  unsigned long cases = 0;
  std::string worst;

  void record(const ExactScalar& residual, const std::string& label) {
    ++cases;
    const ExactScalar mag = abs(residual);
    if (max_residual < mag) {
      max_residual = mag;
      worst = label;
    }
  }
};

int finish_verify(const Options& opt, const std::string& op, const ParamMap& params,
                  const Sweep& sweep) {
  ser::ResidualReport report;
  report.op = op;
  report.params = param_pairs(params);
  report.max_residual = sweep.max_residual;
  report.cases = sweep.cases;
  report.worst_case = sweep.worst;
  emit(render(report, opt.format), opt.out);
  return report.clean() ? kExitPass : kExitFail;
}

int verify_ortho(const Options& opt) {
  const auto p = trunc_params(opt);
  const biv::OrthoReport rep = biv::orthogonality_check(p);
  Sweep sweep;
  sweep.cases = rep.pairs;
  sweep.max_residual = rep.max_offdiag;
  if (sweep.max_residual < rep.max_diag_error) sweep.max_residual = rep.max_diag_error;
  if (sweep.max_residual < rep.max_range_error) sweep.max_residual = rep.max_range_error;
  sweep.worst = rep.worst_case;
  return finish_verify(opt, "ortho", parse_params(opt.params), sweep);
}

int verify_ortho_uni(const Options& opt) {
  const auto p = uni_params(opt);
  const auto trunc = uni::detect_truncation(p, opt.N);
  if (trunc.kind == uni::TruncationKind::None) {
    throw bannai::InadmissibleError("parameters realize no truncation at N = " +
                                    std::to_string(opt.N));
  }
  const auto data = uni::orthogonality_data(p, trunc);
  const unsigned N = opt.N;

  std::vector<std::vector<ExactScalar>> values;  // values[k][n] = B_n(x_k)
  values.reserve(N + 1);
  for (unsigned k = 0; k <= N; ++k) {
    values.push_back(uni::eval_recurrence_upto(p, N, data.grid[k]));
  }
  Sweep sweep;
  for (unsigned n = 0; n <= N; ++n) {
    for (unsigned m = 0; m <= n; ++m) {
      ExactScalar gram;
      for (unsigned k = 0; k <= N; ++k) gram += data.weights[k] * values[k][n] * values[k][m];
      if (n == m) gram -= data.norms[n];
      sweep.record(gram, "n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  return finish_verify(opt, "ortho-uni", parse_params(opt.params), sweep);
}

int verify_dunkl(const Options& opt) {
  const auto p = uni_params(opt);
  PointGen gen(opt.seed);
  Sweep sweep;
  for (unsigned n = 0; n <= opt.max_deg; ++n) {
    const ExactScalar lambda = uni::dunkl_eigenvalue(p, n);
    const auto f = [&p, n](const ExactScalar& x) { return uni::eval_recurrence(p, n, x); };
    for (unsigned i = 0; i < n + 2; ++i) {
      const ExactScalar x = gen.point();
      const ExactScalar residual = uni::dunkl_apply(p, f, x) - lambda * f(x);
      sweep.record(residual, "n=" + std::to_string(n) + " x=" + x.str());
    }
  }
  return finish_verify(opt, "dunkl", parse_params(opt.params), sweep);
}

using BivRunner = ExactScalar (*)(const biv::BivFreeParams&, unsigned, unsigned,
                                  const ExactScalar&, const ExactScalar&);

int verify_bivariate(const Options& opt, const std::string& op, BivRunner runner) {
  const auto p = free_params(opt);
  PointGen gen(opt.seed);
  Sweep sweep;
  for (unsigned n1 = 0; n1 <= opt.max_deg; ++n1) {
    for (unsigned n2 = 0; n1 + n2 <= opt.max_deg; ++n2) {
      for (unsigned i = 0; i < 3; ++i) {
        const ExactScalar z1 = gen.point();
        const ExactScalar z2 = gen.point();
        const ExactScalar residual = runner(p, n1, n2, z1, z2);
        sweep.record(residual, "n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) +
                                   " z1=" + z1.str() + " z2=" + z2.str());
      }
    }
  }
  return finish_verify(opt, op, parse_params(opt.params), sweep);
}

ExactScalar l1_residual(const biv::BivFreeParams& p, unsigned n1, unsigned n2,
                        const ExactScalar& z1, const ExactScalar& z2) {
  const auto member = [&p, n1, n2](const ExactScalar& a, const ExactScalar& b) {
    return biv::eval_def2(p, n1, n2, a, b);
  };
  return ops::apply_L1(p, member, z1, z2) - ops::eigenvalue_L1(p, n1) * member(z1, z2);
}

ExactScalar l2_residual(const biv::BivFreeParams& p, unsigned n1, unsigned n2,
                        const ExactScalar& z1, const ExactScalar& z2) {
  const auto member = [&p, n1, n2](const ExactScalar& a, const ExactScalar& b) {
    return biv::eval_def2(p, n1, n2, a, b);
  };
  return ops::apply_L2(p, member, z1, z2) - ops::eigenvalue_L2(p, n1, n2) * member(z1, z2);
}

// ---------------------------------------------------------------------------
// qlimit

int finish_qlimit(const Options& opt, qlimit::ConvergenceReport report) {
  emit(render(report, opt.format), opt.out);
  return report.pass() ? kExitPass : kExitFail;
}

int qlimit_poly(const Options& opt) {
  const auto ts = parse_ts(opt);
  const ExactScalar z1 = ExactScalar::parse(opt.z1);
  const ExactScalar z2 = ExactScalar::parse(opt.z2);
  const ParamMap map = parse_params(opt.params);
  const bool truncated = map.count("p1") > 0;

  qlimit::ConvergenceReport merged;
  merged.ts = ts;
  merged.prec = opt.precision;
  if (truncated) {
    const auto p = trunc_params(opt);
    const unsigned cap = std::min(opt.max_deg, p.N);
    for (unsigned n1 = 0; n1 <= cap; ++n1) {
      for (unsigned n2 = 0; n1 + n2 <= cap; ++n2) {
        auto rep = qlimit::check_poly_limit(p, n1, n2, z1, z2, ts, opt.precision);
        merged.check = rep.check;
        for (auto& c : rep.cases) merged.cases.push_back(std::move(c));
      }
    }
  } else {
    const auto p = free_params(opt);
    for (unsigned n1 = 0; n1 <= opt.max_deg; ++n1) {
      for (unsigned n2 = 0; n1 + n2 <= opt.max_deg; ++n2) {
        auto rep = qlimit::check_poly_limit(p, n1, n2, z1, z2, ts, opt.precision);
        merged.check = rep.check;
        for (auto& c : rep.cases) merged.cases.push_back(std::move(c));
      }
    }
  }
  return finish_qlimit(opt, std::move(merged));
}

int qlimit_operator(const Options& opt) {
  const auto ts = parse_ts(opt);
  const auto p = free_params(opt);
  std::vector<std::pair<unsigned, unsigned>> degrees;
  for (unsigned n1 = 0; n1 <= opt.max_deg; ++n1) {
    for (unsigned n2 = 0; n1 + n2 <= opt.max_deg; ++n2) degrees.emplace_back(n1, n2);
  }
  return finish_qlimit(opt, qlimit::check_operator_limit(p, ExactScalar::parse(opt.z1),
                                                         ExactScalar::parse(opt.z2), degrees,
                                                         ts, opt.precision));
}

int qlimit_recurrence(const Options& opt) {
  const auto ts = parse_ts(opt);
  const auto p = free_params(opt);
  return finish_qlimit(opt, qlimit::check_recurrence_limit(p, opt.n1, opt.n2,
                                                           ExactScalar::parse(opt.z1),
                                                           ExactScalar::parse(opt.z2), ts,
                                                           opt.precision));
}

// ---------------------------------------------------------------------------
// table

int table_uni(const Options& opt) {
  const auto p = uni_params(opt);
  const auto trunc = uni::detect_truncation(p, opt.N);
  if (trunc.kind == uni::TruncationKind::None) {
    throw bannai::InadmissibleError("parameters realize no truncation at N = " +
                                    std::to_string(opt.N));
  }
  const auto data = uni::orthogonality_data(p, trunc);
  emit(opt.format == "csv" ? ser::to_csv(data) : ser::to_json(data).dump(2) + "\n", opt.out);
  return kExitPass;
}

int table_biv(const Options& opt) {
  const auto lattice = biv::build_lattice(trunc_params(opt));
  emit(opt.format == "csv" ? ser::to_csv(lattice) : ser::to_json(lattice).dump(2) + "\n",
       opt.out);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// flag and config plumbing

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--params", opt.params, "rational parameter assignments name=p/q");
  cmd->add_option("--precision", opt.precision, "working precision in bits")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.out, "output path (stdout when omitted)");
  cmd->add_option("--seed", opt.seed, "seed for randomized sweeps");
  cmd->add_option("--config", opt.config, "flat key=value config file");
}

// Flat config: one "key = value" per line, # comments. Flags win; a config
// key is applied only when its flag is absent from the command line.
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& args) {
  std::ifstream file(path);
  if (!file) throw bannai::ParseError("cannot open config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  unsigned lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw bannai::ParseError("config line " + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw bannai::ParseError("config line " + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& arg : args) {
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
        given = true;
        break;
      }
    }
    if (given) continue;  // command line takes precedence
    // Multi-value keys split on whitespace; "params" values keep their own
    // inner '=' (p1=1/3), so each piece becomes one --params=piece token.
    std::istringstream pieces(value);
    std::string piece;
    while (pieces >> piece) tokens.push_back(flag + "=" + piece);
  }
  return tokens;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Bannai-Ito polynomial laboratory"};
  app.require_subcommand(1);

  Options opt;
  int rc = kExitUsage;
  const auto set = [&rc](auto fn) { return [&rc, fn]() { rc = fn(); }; };

  // eval
  CLI::App* eval = app.add_subcommand("eval", "evaluate one family member exactly");
  add_common(eval, opt);
  eval->add_option("--def", opt.def, "family definition: 1 truncated, 2 free")->required();
  eval->add_option("--N", opt.N, "truncation degree (definition 1)");
  eval->add_option("--n1", opt.n1, "first degree");
  eval->add_option("--n2", opt.n2, "second degree");
  eval->add_option("--z1", opt.z1, "first coordinate p/q")->required();
  eval->add_option("--z2", opt.z2, "second coordinate p/q")->required();
  eval->callback(set([&opt]() { return cmd_eval(opt); }));

  // verify
  CLI::App* verify = app.add_subcommand("verify", "exact residual sweeps");
  verify->require_subcommand(1);
  struct VerifySpec {
    const char* name;
    const char* help;
    int (*runner)(const Options&);
    bool wants_N;
  };
  static const VerifySpec kVerify[] = {
      {"ortho", "bivariate orthogonality Gram check", &verify_ortho, true},
      {"ortho-uni", "univariate orthogonality Gram check", &verify_ortho_uni, true},
      {"dunkl", "univariate Dunkl eigenequation", &verify_dunkl, false},
      {"l1", "first bivariate eigenequation",
       [](const Options& o) { return verify_bivariate(o, "l1", &l1_residual); }, false},
      {"l2", "second bivariate eigenequation",
       [](const Options& o) { return verify_bivariate(o, "l2", &l2_residual); }, false},
      {"threerec", "second-variable three-term recurrence",
       [](const Options& o) { return verify_bivariate(o, "threerec", &ops::three_term_step); },
       false},
      {"ninerec", "first-variable nine-term recurrence",
       [](const Options& o) {
         return verify_bivariate(o, "ninerec", &ops::nine_term_residual);
       },
       false},
  };
  for (const auto& spec : kVerify) {
    CLI::App* sub = verify->add_subcommand(spec.name, spec.help);
    add_common(sub, opt);
    if (spec.wants_N) sub->add_option("--N", opt.N, "truncation degree")->required();
    if (!spec.wants_N) sub->add_option("--max-deg", opt.max_deg, "total degree bound");
    auto runner = spec.runner;
    sub->callback(set([&opt, runner]() { return runner(opt); }));
  }

  // qlimit
  CLI::App* ql = app.add_subcommand("qlimit", "deformation limit convergence checks");
  ql->require_subcommand(1);
  {
    CLI::App* sub = ql->add_subcommand("poly", "product limit toward the family");
    add_common(sub, opt);
    sub->add_option("--N", opt.N, "truncation degree (with p1..c parameters)");
    sub->add_option("--max-deg", opt.max_deg, "total degree bound");
    sub->add_option("--t", opt.ts, "deformation steps, strictly decreasing");
    sub->add_option("--z1", opt.z1, "first coordinate p/q");
    sub->add_option("--z2", opt.z2, "second coordinate p/q");
    sub->callback(set([&opt]() { return qlimit_poly(opt); }));
  }
  {
    CLI::App* sub = ql->add_subcommand("operator", "operator coefficient limits");
    add_common(sub, opt);
    sub->add_option("--max-deg", opt.max_deg, "total degree bound for eigenvalues");
    sub->add_option("--t", opt.ts, "deformation steps, strictly decreasing");
    sub->add_option("--z1", opt.z1, "first coordinate p/q");
    sub->add_option("--z2", opt.z2, "second coordinate p/q");
    sub->callback(set([&opt]() { return qlimit_operator(opt); }));
  }
  {
    CLI::App* sub = ql->add_subcommand("recurrence", "recurrence coefficient limits");
    add_common(sub, opt);
    sub->add_option("--n1", opt.n1, "first degree");
    sub->add_option("--n2", opt.n2, "second degree");
    sub->add_option("--t", opt.ts, "deformation steps, strictly decreasing");
    sub->add_option("--z1", opt.z1, "first coordinate p/q");
    sub->add_option("--z2", opt.z2, "second coordinate p/q");
    sub->callback(set([&opt]() { return qlimit_recurrence(opt); }));
  }

  // table
  CLI::App* table = app.add_subcommand("table", "grid, weight and norm tables");
  table->require_subcommand(1);
  {
    CLI::App* sub = table->add_subcommand("uni", "univariate orthogonality table");
    add_common(sub, opt);
    sub->add_option("--N", opt.N, "truncation degree")->required();
    sub->callback(set([&opt]() { return table_uni(opt); }));
  }
  {
    CLI::App* sub = table->add_subcommand("biv", "bivariate orthogonality lattice");
    add_common(sub, opt);
    sub->add_option("--N", opt.N, "truncation degree")->required();
    sub->callback(set([&opt]() { return table_biv(opt); }));
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Apply the flat config (if any) by appending tokens for keys the
    // command line does not set, then parse once: flags > config > defaults.
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
      }
      if (!path.empty()) {
        const auto extra = config_tokens(path, args);
        args.insert(args.end(), extra.begin(), extra.end());
        break;
      }
    }
    if (args.empty()) args = {"--help"};
    std::reverse(args.begin(), args.end());  // CLI11's vector overload pops from the back
    app.parse(args);
    return rc;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return kExitUsage;
  } catch (const bannai::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const bannai::DegreeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const bannai::InadmissibleError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const bannai::PrecisionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPrecision;
  } catch (const bannai::PoleError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPole;
  } catch (const bannai::NormalizationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPole;
  } catch (const bannai::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
}
