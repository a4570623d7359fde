#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace quatlas {

/// Orthonormal column basis of a subspace of R^ambient.
struct SubspaceBasis {
  Eigen::MatrixXd columns;   // ambient x dim
  double tolerance = 1e-8;   // threshold used when the basis was extracted
  double margin = 0.0;       // smallest discarded eigenvalue / largest kept one (diagnostic)

  int ambient() const { return int(columns.rows()); }
  int dim() const { return int(columns.cols()); }
  Eigen::MatrixXd projector() const { return columns * columns.transpose(); }
  double orthonormality_error() const;
};

/// Linear constraint x[p] = sign * x[q] between coordinates.
struct SignedTie {
  int p;
  int q;
  int sign;  // +1 or -1
};

/// Exact solution space of a system of signed ties: every coordinate orbit
/// either collapses to zero (sign conflict) or contributes one +-1 vector.
/// Columns are normalized.
Eigen::MatrixXd signed_tie_nullspace(int num_vars, const std::vector<SignedTie>& ties);

/// Tie list imposing b(..., E X, ...) relations is built by callers; this
/// helper decodes a signed permutation matrix (throws otherwise):
/// E e_j = sign[j] e_{target[j]}.
struct SignedPermutation {
  std::vector<int> target;
  std::vector<int> sign;
};
SignedPermutation as_signed_permutation(const Eigen::MatrixXd& e);

/// Orthonormal basis of the column span, rank decided relative to the largest
/// singular value.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

/// Orthonormal basis of the kernel of a symmetric positive semidefinite
/// matrix: eigenvectors with eigenvalue <= rel_tol * scale.  scale <= 0 means
/// "use the largest eigenvalue".
SubspaceBasis psd_kernel(const Eigen::MatrixXd& gram, double rel_tol, double scale = -1.0);

/// Kernel of an arbitrary matrix via its Gram.
SubspaceBasis kernel(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

/// Descending singular values.  Values-only BDCSVD is inaccurate on some of
/// our rank-deficient operators, so this goes through a two-sided Jacobi SVD.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);
int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

/// Dense matrix of a linear map given on coordinate vectors.
Eigen::MatrixXd operator_matrix(int in_dim,
                                const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f);

/// Largest eigenvalue of a symmetric matrix.
double lambda_max(const Eigen::MatrixXd& sym);

}  // namespace quatlas
