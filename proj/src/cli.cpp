#include "quatlas/cli.hpp"

#include "quatlas/io.hpp"
#include "quatlas/report.hpp"
#include "quatlas/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace quatlas {

using nlohmann::json;

// ------------------------------------------------------------------ config

void Config::validate() const {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (!(tol > 0.0 && tol < 1e-2)) throw ConfigError("tol must lie in (0, 1e-2)");
  if (format != "text" && format != "csv" && format != "json")
    throw ConfigError("format must be text, csv or json");
  static const char* suites[] = {"projectors", "dimensions", "roundtrip", "oracles",
                                 "formulas",   "theorems",   "tables",    "all"};
  if (std::find(std::begin(suites), std::end(suites), suite) == std::end(suites))
    throw ConfigError("unknown suite: " + suite);
  if (diff && *diff < 1) throw ConfigError("diff must name a dimension parameter n >= 1");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v, const std::string& origin) {
  std::istringstream is(v);
  T x{};
  is >> x;
  if (!is || !(is >> std::ws).eof())
    throw ConfigError(origin + ": bad value for " + key + ": '" + v + "'");
  return x;
}

void set_key(Config& c, const std::string& key, const std::string& v, const std::string& origin) {
  if (key == "n")
    c.n = parse_number<int>(key, v, origin);
  else if (key == "tol")
    c.tol = parse_number<double>(key, v, origin);
  else if (key == "seed")
    c.seed = parse_number<std::uint64_t>(key, v, origin);
  else if (key == "format")
    c.format = v;
  else if (key == "suite")
    c.suite = v;
  else if (key == "diff")
    c.diff = parse_number<int>(key, v, origin);
  else if (key == "out")
    c.out = v;
  else
    throw ConfigError(origin + ": unknown key '" + key + "'");
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front())
    return v.substr(1, v.size() - 2);
  return v;
}

}  // namespace

void apply_config_text(Config& c, const std::string& text, const std::string& origin) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    set_key(c, trim(line.substr(0, eq)), unquote(trim(line.substr(eq + 1))), where);
  }
}

void apply_environment(Config& c) {
  static const std::pair<const char*, const char*> vars[] = {
      {"QUATLAS_N", "n"},         {"QUATLAS_TOL", "tol"},   {"QUATLAS_SEED", "seed"},
      {"QUATLAS_FORMAT", "format"}, {"QUATLAS_SUITE", "suite"}, {"QUATLAS_DIFF", "diff"},
      {"QUATLAS_OUT", "out"}};
  for (auto [var, key] : vars)
    if (const char* v = std::getenv(var)) set_key(c, key, v, var);
}

// ---------------------------------------------------------- classification

Classification classify_triple(int n, const TorsionTriple& t, double tol) {
  const QuatFrame f(n);
  const ParamSpace ps(f);
  double scale = 1.0;
  for (const Tensor& x : t.nabla_omega) {
    if (x.dim() != f.dim() || x.order() != 3)
      throw std::invalid_argument("tensor shape does not match n");
    scale = std::max(scale, x.max_abs());
  }
  const RelationReport rel = check_relations(f, t);
  const TorsionParams p = extract_params(f, t);
  double residual = rel.max();
  for (const Tensor& a : p.alpha) residual = std::max(residual, alpha_residual(f, a));
  try {
    const TorsionTriple back = reconstruct(f, p, std::max(1e-8, tol * scale));
    for (Structure a : kStructures) residual = std::max(residual, max_abs_diff(back[a], t[a]));
  } catch (const std::invalid_argument&) {
    // alpha_residual above already carries the size of the violation
  }
  if (residual > tol * scale) {
    std::ostringstream os;
    os << "torsion is not admissible: residual " << residual << " exceeds " << tol * scale << " ("
       << rel.describe() << ")";
    throw AdmissibilityError(os.str(), residual);
  }

  Classification c;
  c.n = n;
  c.admissibility_residual = residual;
  for (Structure a : kStructures) {
    const int k = index_of(a);
    const GHProjectorSet g(f, a);
    c.masks.m[k] = gh_type(g, t[a], tol);
    c.lee[k] = (lee_form(f, t[a], a).array() + 0.0).matrix();  // no "-0" in output
    c.lambda_norm[k] = p.lam(a).norm();
    c.eta_norm[k] = extract_eta(p.alp(a)).norm();
    c.alpha_norm[k] = p.alp(a).norm();
  }
  if (n >= 2) {
    const IsotypicDecomposition iso = alpha_isotypic(ps);
    for (int k = 0; k < 3; ++k) {
      const AlphaComponents ac = alpha_components(ps, iso, p.alpha[k]);
      c.alpha_module_norm[k] = {ac.lambda3.norm(), ac.k.norm(), ac.e.norm()};
    }
    c.quat = quat_type(ps, iso, p, tol);
  }
  return c;
}

// ---------------------------------------------------------------- emitters

namespace {

json vec_json(const OneForm& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string csv_quote(const std::string& s) {
  std::string o = "\"";
  for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return o + "\"";
}

void emit_classification(std::ostream& os, const Classification& c, const std::string& format) {
  const char* names[3] = {"I", "J", "K"};
  if (format == "json") {
    json j;
    j["schema"] = 1;
    j["n"] = c.n;
    j["masks"] = c.masks.hex();
    j["admissibility_residual"] = c.admissibility_residual;
    for (int k = 0; k < 3; ++k) {
      json s;
      s["mask"] = c.masks.m[k];
      s["lee_form"] = vec_json(c.lee[k]);
      s["lambda_norm"] = c.lambda_norm[k];
      s["eta_norm"] = c.eta_norm[k];
      s["alpha_norm"] = c.alpha_norm[k];
      if (c.quat)
        s["alpha_module_norms"] = {{kLambda3, c.alpha_module_norm[k][0]},
                                   {kKMod, c.alpha_module_norm[k][1]},
                                   {kEMod, c.alpha_module_norm[k][2]}};
      j["structures"][names[k]] = s;
    }
    if (c.quat) {
      j["quat_s3h"] = c.quat->s3h;
      j["quat_h"] = c.quat->h;
    } else {
      j["quat_s3h"] = nullptr;
      j["quat_h"] = nullptr;
    }
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    os << "n,structure,mask,lambda_norm,eta_norm,alpha_norm,quat_s3h,quat_h\n";
    for (int k = 0; k < 3; ++k) {
      os << c.n << ',' << names[k] << ',' << std::hex << std::uppercase << int(c.masks.m[k])
         << std::dec << ',' << c.lambda_norm[k] << ',' << c.eta_norm[k] << ',' << c.alpha_norm[k]
         << ',';
      if (c.quat) os << int(c.quat->s3h) << ',' << int(c.quat->h);
      else os << ',';
      os << '\n';
    }
  } else {
    os << "n = " << c.n << "\nGray-Hervella masks (I J K): " << c.masks.hex()
       << "\nadmissibility residual: " << c.admissibility_residual << '\n';
    for (int k = 0; k < 3; ++k) {
      os << names[k] << ": mask " << std::hex << std::uppercase << int(c.masks.m[k]) << std::dec
         << ", |lambda| " << c.lambda_norm[k] << ", |eta| " << c.eta_norm[k] << ", |alpha| "
         << c.alpha_norm[k];
      if (c.quat)
        os << " (" << kLambda3 << ' ' << c.alpha_module_norm[k][0] << ", " << kKMod << ' '
           << c.alpha_module_norm[k][1] << ", " << kEMod << ' ' << c.alpha_module_norm[k][2] << ')';
      os << "\n   Lee form: " << c.lee[k].transpose() << '\n';
    }
    if (c.quat) os << "quaternionic type (S3H H): " << c.quat->digits() << '\n';
    else os << "quaternionic type: not defined for n = 1\n";
  }
}

struct SuiteRun {
  std::string suite;
  ClauseResult clause;
};

void emit_verify(std::ostream& os, int n, const std::vector<SuiteRun>& runs,
                 const std::string& format) {
  bool all = std::all_of(runs.begin(), runs.end(), [](const SuiteRun& r) { return r.clause.passed; });
  if (format == "json") {
    json j;
    j["schema"] = 1;
    j["n"] = n;
    j["passed"] = all;
    j["clauses"] = json::array();
    for (const auto& r : runs)
      j["clauses"].push_back({{"suite", r.suite},
                              {"name", r.clause.name},
                              {"passed", r.clause.passed},
                              {"detail", r.clause.detail}});
    os << j.dump(2) << '\n';
  } else if (format == "csv") {
    os << "n,suite,name,passed,detail\n";
    for (const auto& r : runs)
      os << n << ',' << r.suite << ',' << csv_quote(r.clause.name) << ','
         << (r.clause.passed ? 1 : 0) << ',' << csv_quote(r.clause.detail) << '\n';
  } else {
    for (const auto& r : runs)
      os << (r.clause.passed ? "PASS " : "FAIL ") << r.clause.name << ": " << r.clause.detail << '\n';
    const auto failed = std::count_if(runs.begin(), runs.end(),
                                      [](const SuiteRun& r) { return !r.clause.passed; });
    os << runs.size() << " checks, " << failed << " failed\n";
  }
}

void emit_counts(std::ostream& os, const CountsReport& c, const std::string& format) {
  if (format == "json")
    os << counts_json(c).dump(2) << '\n';
  else if (format == "csv")
    write_counts_csv(os, c);
  else
    write_counts_text(os, c);
}

void emit_rows(std::ostream& os, const std::vector<ReductionResult>& rows, const std::string& format) {
  if (format == "json")
    os << results_json(rows).dump(2) << '\n';
  else if (format == "csv")
    write_results_csv(os, rows);
  else
    write_results_text(os, rows);
}

// Writes to --out when given, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::vector<SuiteRun> run_suites(const Config& c) {
  std::vector<SuiteRun> runs;
  auto add = [&](const std::string& s, const std::vector<ClauseResult>& cs) {
    for (const auto& x : cs) runs.push_back({s, x});
  };
  const bool all = c.suite == "all";
  auto want = [&](const char* s) { return all || c.suite == s; };
  const int draws_oracle = c.n <= 2 ? 100 : 10;
  if (want("projectors")) add("projectors", suite_projectors(c.n));
  if (want("dimensions")) add("dimensions", suite_dimensions(c.n));
  if (want("roundtrip")) add("roundtrip", suite_roundtrip(c.n, c.seed));
  if (want("oracles") && (c.n >= 2 || !all)) add("oracles", suite_oracles(c.n, c.seed, draws_oracle));
  if (want("formulas") && (c.n >= 2 || !all)) add("formulas", suite_formulas(c.n, c.seed));
  if (want("theorems") || want("tables")) {
    try {
      const Engine e(c.n, c.tol);
      if (want("theorems")) add("theorems", verify_theorems(e));
      if (want("tables")) add("tables", suite_tables(e, e.enumerate(), c.seed));
    } catch (const std::exception& ex) {
      runs.push_back({"engine", {"engine construction", false, ex.what()}});
    }
  }
  return runs;
}

TorsionTriple sample_triple(int n, const std::string& kind, std::uint64_t seed) {
  const QuatFrame f(n);
  if (kind == "zero") return reconstruct(f, TorsionParams::zero(f));
  const ParamSpace ps(f);
  std::mt19937_64 rng(seed);
  TorsionTriple t = reconstruct(f, ps.random(rng));
  const double eps = 1e-3;
  if (kind == "random") return t;
  if (kind == "break-skew") {
    t.nabla_omega[0](0, 1, 2) += eps;
  } else if (kind == "break-type") {
    // a (1,1) piece in the last two slots
    t.nabla_omega[0] += outer(OneForm(OneForm::Unit(f.dim(), 0)), kaehler_form(f, Structure::I)) * eps;
  } else if (kind == "break-compat") {
    t.nabla_omega[0] *= 1.0 + eps;
  } else {
    throw ConfigError("unknown sample kind: " + kind);
  }
  return t;
}

}  // namespace

// -------------------------------------------------------------------- main

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intrinsic torsion types of almost hyper-Hermitian structures"};
  app.require_subcommand(1);
  app.fallthrough();

  int n = 0;
  double tol = 0;
  std::uint64_t seed = 0;
  std::string format, suite, out_path, config_path;
  int diff = 0;
  auto* o_n = app.add_option("--n", n, "quaternionic dimension (real dimension 4n)");
  auto* o_tol = app.add_option("--tol", tol, "relative tolerance");
  auto* o_seed = app.add_option("--seed", seed, "seed for random draws");
  auto* o_format = app.add_option("--format", format, "text | csv | json");
  auto* o_suite = app.add_option("--suite", suite, "verification suite");
  auto* o_diff = app.add_option("--diff", diff, "only rows that differ from this n");
  auto* o_out = app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--config", config_path, "key = value configuration file");

  auto* tables = app.add_subcommand("tables", "enumerate all constraint cells");
  auto* counts_cmd = app.add_subcommand("counts", "summary counts of the enumeration");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* classify = app.add_subcommand("classify", "classify an explicit torsion triple");
  std::string input;
  classify->add_option("file", input, "JSON triple")->required();
  auto* sample = app.add_subcommand("sample", "write a sample triple as JSON");
  std::string kind = "random";
  sample->add_option("--kind", kind, "random | zero | break-skew | break-type | break-compat");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  Config c;
  try {
    apply_environment(c);
    if (config_path.empty())
      if (const char* v = std::getenv("QUATLAS_CONFIG")) config_path = v;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      apply_config_text(c, ss.str(), config_path);
    }
    if (o_n->count()) c.n = n;
    if (o_tol->count()) c.tol = tol;
    if (o_seed->count()) c.seed = seed;
    if (o_format->count()) c.format = format;
    if (o_suite->count()) c.suite = suite;
    if (o_diff->count()) c.diff = diff;
    if (o_out->count()) c.out = out_path;
    c.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*tables || *counts_cmd) {
      const Engine e(c.n, c.tol);
      std::vector<ReductionResult> rows = e.enumerate();
      if (c.diff && *tables) rows = diff_results(rows, Engine(*c.diff, c.tol).enumerate());
      Sink sink(c.out, out);
      if (*tables)
        emit_rows(sink.stream(), rows, c.format);
      else
        emit_counts(sink.stream(), counts(rows), c.format);
      return kExitOk;
    }
    if (*verify) {
      const auto runs = run_suites(c);
      Sink sink(c.out, out);
      emit_verify(sink.stream(), c.n, runs, c.format);
      int failed = 0;
      for (const auto& r : runs)
        if (!r.clause.passed) {
          ++failed;
          err << "failed: [" << r.suite << "] " << r.clause.name << ": " << r.clause.detail << '\n';
        }
      return failed ? kExitVerifyFailed : kExitOk;
    }
    if (*classify) {
      TripleFile tf;
      try {
        tf = read_triple_file(input);
      } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return kExitSchema;
      }
      try {
        const Classification cl = classify_triple(tf.n, tf.triple, c.tol);
        Sink sink(c.out, out);
        emit_classification(sink.stream(), cl, c.format);
      } catch (const AdmissibilityError& e) {
        err << "inadmissible: " << e.what() << '\n';
        out << "admissibility residual " << e.residual << '\n';
        return kExitAdmissibility;
      }
      return kExitOk;
    }
    if (*sample) {
      const TorsionTriple t = sample_triple(c.n, kind, c.seed);
      Sink sink(c.out, out);
      sink.stream() << triple_to_json(c.n, t).dump() << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace quatlas
