#pragma once

#include "quatlas/classifier.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <vector>

namespace quatlas {

// Record columns, in this order:
//   n, input, reduced, quat_s3h, quat_h
// Triples are three hex digits (I, J, K).  The two quaternionic columns are
// omitted entirely when n = 1.
void write_results_csv(std::ostream& os, const std::vector<ReductionResult>& rows);
nlohmann::json results_json(const std::vector<ReductionResult>& rows);
// Grid view: one line per (m_I, m_J), K increasing.  An unreduced cell shows
// its quaternionic digits, a reduced one the reduced triple.
void write_results_text(std::ostream& os, const std::vector<ReductionResult>& rows);

nlohmann::json counts_json(const CountsReport& c);
void write_counts_csv(std::ostream& os, const CountsReport& c);
void write_counts_text(std::ostream& os, const CountsReport& c);

// Golden tables use the CSV layout above; empty quat fields mean "not recorded".
struct GoldenRow {
  int n = 0;
  TypeTriple input, reduced;
  std::optional<QuatType> quat;
};
/// Throws SchemaError on malformed lines.
std::vector<GoldenRow> read_golden_csv(std::istream& is);

struct GoldenMismatch {
  GoldenRow expected;
  std::optional<ReductionResult> got;  // empty when the cell was not computed
  std::string describe() const;
};
std::vector<GoldenMismatch> compare_golden(const std::vector<ReductionResult>& rows,
                                           const std::vector<GoldenRow>& golden);

}  // namespace quatlas
