#pragma once

#include "quatlas/torsion.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace quatlas {

/// Input that parses but does not have the expected shape.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TripleFile {
  int n = 0;
  TorsionTriple triple;
};

// Document layout:
//   {"n": int, "nabla_omega_I": T, "nabla_omega_J": T, "nabla_omega_K": T}
// with T a row-major nested array of shape (4n, 4n, 4n).  Unknown keys are
// ignored; "schema", when present, must be 1.
TripleFile triple_from_json(const nlohmann::json& doc);
nlohmann::json triple_to_json(int n, const TorsionTriple& t);

/// Throws SchemaError for malformed JSON as well as for shape violations and
/// std::runtime_error when the file cannot be opened.
TripleFile read_triple_file(const std::string& path);
void write_triple_file(const std::string& path, int n, const TorsionTriple& t);

}  // namespace quatlas
