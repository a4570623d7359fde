#pragma once

#include "quatlas/torsion.hpp"

#include <string>
#include <vector>

namespace quatlas {

enum class LieAlgebra { sp_n, sp_1 };

struct LieAlgebraBasis {
  LieAlgebra kind;
  std::vector<Eigen::MatrixXd> elements;  // Frobenius-orthonormal

  std::string label() const { return kind == LieAlgebra::sp_n ? "sp(n)" : "sp(1)"; }
  /// Distance of all commutators from the span (0 for a subalgebra).
  double closure_residual() const;
};

/// Metric-skew matrices commuting with I, J, K; n(2n+1) elements.
LieAlgebraBasis spn_basis(const QuatFrame& frame);
/// I, J, K scaled to unit Frobenius norm.
LieAlgebraBasis sp1_basis(const QuatFrame& frame);

/// Sum_a rho(S_a)^2 restricted to an invariant subspace of order-r tensors,
/// as a matrix in the subspace's coordinates.  Throws std::invalid_argument
/// when the subspace is not invariant (residual > 1e-10).
Eigen::MatrixXd casimir(const LieAlgebraBasis& g, const SubspaceBasis& space, int dim, int order);

/// Matrix of rho(S) on an invariant subspace.
Eigen::MatrixXd action_matrix(const Eigen::MatrixXd& s, const SubspaceBasis& space, int dim,
                              int order);

struct IsotypicComponent {
  std::string label;
  double eigenvalue = 0.0;   // of the Casimir
  Eigen::MatrixXd basis;     // orthonormal, in the ambient coordinates of the decomposed space
  int dim() const { return int(basis.cols()); }
  Eigen::MatrixXd projector() const { return basis * basis.transpose(); }
};

struct IsotypicDecomposition {
  std::vector<IsotypicComponent> components;

  const IsotypicComponent* find(const std::string& label) const;
  int total_dim() const;
  /// Idempotency, orthogonality and completeness (relative to the identity on
  /// the given ambient dimension).
  double algebra_residual(int ambient) const;
};

/// Clusters Casimir eigenvalues (normalized by the largest magnitude) with a
/// relative gap of 1e-6; throws std::runtime_error when an eigengap is
/// ambiguous.  Components are returned in ascending eigenvalue order,
/// unlabeled, with bases in the coordinates the Casimir matrix is written in.
IsotypicDecomposition cluster_casimir(const Eigen::MatrixXd& casimir_matrix,
                                      double rel_gap = 1e-6);

inline constexpr const char* kLambda3 = "Lambda3_0E";
inline constexpr const char* kKMod = "K";
inline constexpr const char* kEMod = "E";
inline constexpr const char* kS3H = "S3H";
inline constexpr const char* kH = "H";

/// Real dimensions of Lambda^3_0 E * H, K * H and E * H inside one alpha-space.
struct AlphaModuleDims {
  int lambda3, k, e;
};
AlphaModuleDims alpha_module_dims(int n);

/// Decomposition of the alpha space into Lambda^3_0E H, K H and E H, labelled
/// by dimension.  Bases are given in alpha-space coordinates.  n >= 2.
IsotypicDecomposition alpha_isotypic(const ParamSpace& ps);

struct AlphaComponents {
  Tensor lambda3, k, e;
};
AlphaComponents alpha_components(const ParamSpace& ps, const IsotypicDecomposition& iso,
                                 const Tensor& alpha);

/// H / S3H split of an sp(1)-invariant subspace of order-r tensors where only
/// S^3H and H occur.  Labels by dimension (S3H twice H) and checks the 15:3
/// Casimir ratio.  Bases are given in ambient tensor coordinates.
IsotypicDecomposition sp1_split_S2H_types(const QuatFrame& frame, const SubspaceBasis& space,
                                          int order);

/// Direct sp(n) isotypic decomposition of an invariant subspace of order-r
/// tensors, labelled by the expected module dimensions (pairs label -> dim).
IsotypicDecomposition spn_isotypic(const QuatFrame& frame, const SubspaceBasis& space, int order,
                                   const std::vector<std::pair<std::string, int>>& expected);

/// Max over basis elements of |[C, rho(S_a)]| on the given space.
double equivariance_residual(const LieAlgebraBasis& g, const SubspaceBasis& space, int dim,
                             int order, const Eigen::MatrixXd& op);

}  // namespace quatlas
