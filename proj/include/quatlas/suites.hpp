#pragma once

#include "quatlas/classifier.hpp"

#include <cstdint>
#include <vector>

namespace quatlas {

// Each suite returns one ClauseResult per check.  None of them throw on a
// numerical failure; exceptions from construction (bad n, convention
// errors) are turned into failed clauses as well.

/// Idempotency, mutual annihilation, completeness, ranks of P1..P4 for I, J, K.
std::vector<ClauseResult> suite_projectors(int n);

/// alpha-space dimension and the sp(n) isotypic dimensions.
std::vector<ClauseResult> suite_dimensions(int n);

/// params -> triple -> params on random draws, plus the defining identities.
std::vector<ClauseResult> suite_roundtrip(int n, std::uint64_t seed, int draws = 200);

/// Independent computations of the same object compared on random draws:
/// E-parts, the H / S3H split of nabla Omega, the two routes to nabla Omega,
/// the Xi contraction.  n >= 2.
std::vector<ClauseResult> suite_oracles(int n, std::uint64_t seed, int draws = 100);

/// Closed-form component displays against projector compositions.  n >= 2.
std::vector<ClauseResult> suite_formulas(int n, std::uint64_t seed, int draws = 20);

/// Counts against the published values, relabeling invariance and
/// monotonicity of a full enumeration.
std::vector<ClauseResult> suite_tables(const Engine& e, const std::vector<ReductionResult>& rows,
                                       std::uint64_t seed);

/// Published counts for n = 1, 2, 3 (distinct count uses the reduced-triple
/// reading); false when n has no reference.
bool reference_counts(int n, CountsReport& out);

}  // namespace quatlas
