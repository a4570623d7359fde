#pragma once

#include "quatlas/gray_hervella.hpp"
#include "quatlas/quat_form.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace quatlas {

/// Gray-Hervella masks for (I, J, K); W_i contributes 2^(i-1).
struct TypeTriple {
  std::array<std::uint8_t, 3> m{};

  TypeTriple() = default;
  TypeTriple(unsigned a, unsigned b, unsigned c)
      : m{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c)} {}

  TypeTriple canonical() const;
  bool is_canonical() const { return m[0] <= m[1] && m[1] <= m[2]; }
  /// Componentwise subset.
  bool subset_of(const TypeTriple& o) const;
  std::string hex() const;  // e.g. "0EE"
  static TypeTriple parse(const std::string& hex);

  auto operator<=>(const TypeTriple&) const = default;
};

struct ReductionResult {
  TypeTriple input;
  TypeTriple reduced;
  std::optional<QuatType> quat;  // absent for n = 1
  int n = 0;
  int subspace_dim = 0;
  bool common_lee = false;  // Lee forms agree identically on the subspace
};

struct CountsReport {
  int n = 0;
  int total = 0;
  int hyperkahler = 0;
  int lck = 0;
  int distinct_reduced = 0;            // distinct reduced triples (up to order)
  int distinct_reduced_with_quat = 0;  // distinct (reduced triple, quaternionic type)
  int unreduced = 0;                   // cells whose reduction equals the input
};

/// Numerical health of the decisions taken during an enumeration.
struct MarginReport {
  double kernel_zero_max = 0.0;    // largest eigenvalue accepted as zero (relative)
  double kernel_nonzero_min = 1.0; // smallest eigenvalue rejected (relative)
  double presence_zero_max = 0.0;  // largest squared norm declared absent (relative)
  double presence_nonzero_min = 1.0;
};

/// Everything needed to classify constraint cells at one n.  Linear maps
/// act on parameter vectors (layout documented in torsion.hpp).
class Engine {
 public:
  explicit Engine(int n, double tol = 1e-8);

  int n() const { return frame_.n(); }
  double tol() const { return tol_; }
  const QuatFrame& frame() const { return frame_; }
  const ParamSpace& params() const { return ps_; }
  const GHProjectorSet& projectors(Structure a) const { return gh_[index_of(a)]; }
  /// Empty decomposition when n = 1.
  const IsotypicDecomposition& alpha_iso() const { return iso_; }
  bool has_quat() const { return n() >= 2; }

  /// nabla omega_A as a function of parameters (D x dp).
  const Eigen::MatrixXd& reconstruct_matrix(Structure a) const { return recon_[index_of(a)]; }
  /// P_i nabla omega_A in the projector-space coordinates.
  Eigen::MatrixXd gh_component_map(Structure a, int i) const;
  /// For module bit v in {4,2,1}: S3H-type (stacked differences) or H-type map.
  Eigen::MatrixXd quat_component_map(bool s3h, int module_bit) const;
  /// (theta_I - theta_J, theta_J - theta_K).
  Eigen::MatrixXd lee_difference_map() const;
  Eigen::MatrixXd lee_form_map(Structure a) const;

  SubspaceBasis constraint_subspace(const TypeTriple& t) const;
  ReductionResult generic_reduction(const TypeTriple& t) const;
  /// Presence analysis on an arbitrary subspace of parameter space.
  ReductionResult reduce_subspace(const SubspaceBasis& q, const TypeTriple& input) const;

  /// Whether the map vanishes identically on the subspace (relative tol).
  bool vanishes_on(const Eigen::MatrixXd& map, const SubspaceBasis& q) const;

  std::vector<TypeTriple> canonical_cells() const;
  std::vector<ReductionResult> enumerate() const;

  /// Random-sample check of a reduction: draws `samples` random elements of
  /// the constraint subspace and recomputes masks tensorially; majority must
  /// agree with the exact decision.
  bool cross_check(const ReductionResult& r, std::mt19937_64& rng, int samples = 3) const;

  const MarginReport& margins() const { return margins_; }
  /// Largest off-block-diagonal entry of the component Grams in the adapted
  /// basis (relative); block structure is an exact consequence of
  /// Sp(n)-equivariance.
  double block_leak() const { return block_leak_; }

 private:
  struct Block {
    std::string label;
    Eigen::MatrixXd basis;  // dp x b, orthonormal, adapted
  };
  struct Component {
    std::string name;
    std::vector<Eigen::MatrixXd> gram;  // per block
    double scale = 0.0;                 // lambda_max of the full Gram
  };

  void build_components();
  Component make_component(const std::string& name, const Eigen::MatrixXd& map);
  std::vector<Eigen::MatrixXd> block_kernel(const TypeTriple& t) const;
  bool present(const Component& c, const std::vector<Eigen::MatrixXd>& q) const;

  double tol_;
  QuatFrame frame_;
  ParamSpace ps_;
  std::array<GHProjectorSet, 3> gh_;
  IsotypicDecomposition iso_;
  std::array<Eigen::MatrixXd, 3> recon_;
  std::vector<Block> blocks_;
  std::vector<Component> gh_comp_;     // index 4*A + (i-1)
  std::vector<Component> quat_comp_;   // S3H bits 4,2,1 then H bits 4,2,1
  Component lee_comp_;
  double kernel_scale_ = 0.0;
  double block_leak_ = 0.0;
  mutable MarginReport margins_;
};

CountsReport counts(const std::vector<ReductionResult>& results);

/// Cells of `low` whose outcome differs from the same cell in `high`
/// (reduced triple differs, or quaternionic digits differ once the
/// Lambda^3_0E bit is masked out of the high-dimensional digits).
std::vector<ReductionResult> diff_results(const std::vector<ReductionResult>& low,
                                          const std::vector<ReductionResult>& high);

struct ClauseResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Machine checks of the classification theorems at the engine's n.
std::vector<ClauseResult> verify_theorems(const Engine& e);

/// Kernel equality of two linear maps on the same domain.
bool same_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double rel_tol = 1e-9);

/// Relabel a result by a permutation of (I, J, K): position k of the output
/// takes structure perm[k] of the input.
TypeTriple permute(const TypeTriple& t, const std::array<int, 3>& perm);

}  // namespace quatlas
