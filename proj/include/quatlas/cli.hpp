#pragma once

#include "quatlas/classifier.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatlas {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Torsion whose defining identities fail by more than the tolerance.
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitSchema = 3,
  kExitAdmissibility = 4,
};

struct Config {
  int n = 3;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string format = "text";  // text | csv | json
  std::string suite = "all";    // projectors | dimensions | roundtrip | oracles | formulas | theorems | tables | all
  std::optional<int> diff;      // compare tables against this n
  std::string out;              // empty: stdout

  /// Throws ConfigError.
  void validate() const;
};

/// Applies `key = value` lines ('#' starts a comment).  Unknown keys and bad
/// values throw ConfigError.
void apply_config_text(Config& c, const std::string& text, const std::string& origin);
/// Reads QUATLAS_N, QUATLAS_TOL, QUATLAS_SEED, QUATLAS_FORMAT, QUATLAS_SUITE,
/// QUATLAS_DIFF and QUATLAS_OUT.
void apply_environment(Config& c);

struct Classification {
  int n = 0;
  TypeTriple masks;
  double admissibility_residual = 0.0;
  std::array<OneForm, 3> lee;
  std::array<double, 3> lambda_norm{}, eta_norm{}, alpha_norm{};
  // per structure: Lambda^3_0E, K, E parts of alpha (n >= 2)
  std::array<std::array<double, 3>, 3> alpha_module_norm{};
  std::optional<QuatType> quat;
};

/// Raw Gray-Hervella and quaternionic types of one explicit triple.  Throws
/// AdmissibilityError when the triple violates the defining identities by
/// more than tol (relative to its largest entry, floored at 1).
Classification classify_triple(int n, const TorsionTriple& t, double tol);

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quatlas
