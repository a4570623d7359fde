#pragma once

#include "quatlas/torsion.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

namespace quatlas {

/// Raised when projector algebra fails: a sign or normalization convention
/// is inconsistent.
class ConventionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GHConstants {
  double k1, k2, k3, k12, k4;
  static GHConstants for_n(int n);  // n >= 2
};

/*
 * The four Gray-Hervella projectors of one structure, realized on the space
 * of order-3 tensors that are skew and of type {2,0} in their last two slots
 * (real dimension 4n * 2n(2n-1)).
 *
 *   P1+P2 = (1 - A_(1) A_(2)) / 2
 *   P1    = alternation of (P1+P2)
 *   P4    = explicit Lee-form formula
 *   P3    = 1 - (P1+P2) - P4
 */
class GHProjectorSet {
 public:
  GHProjectorSet(const QuatFrame& frame, Structure a);

  Structure structure() const { return a_; }
  const SubspaceBasis& space() const { return space_; }
  int space_dim() const { return space_.dim(); }
  /// i in 1..4, matrix in space coordinates.
  const Eigen::MatrixXd& matrix(int i) const;

  Eigen::VectorXd coords(const Tensor& t) const;
  Tensor tensor(const Eigen::VectorXd& c) const;
  Tensor apply(int i, const Tensor& t) const;

  std::array<int, 4> ranks() const;
  /// max over idempotency, mutual annihilation, completeness and symmetry.
  double algebra_residual() const;

 private:
  int dim_;
  Structure a_;
  SubspaceBasis space_;
  std::array<Eigen::MatrixXd, 4> p_;
};

GHProjectorSet build_projectors(const QuatFrame& frame, Structure a);

/// (1 - A_(1) A_(2)) t / 2
Tensor w12_part(const QuatFrame& frame, Structure a, const Tensor& t);
/// Lee-form formula for the W4 part:
/// (-e_i (x) e_i ^ d*w + e_i (x) Ae_i ^ A d*w) / (2(2n-1)).
Tensor w4_formula(const QuatFrame& frame, Structure a, const Tensor& t);

/// d*w(X) = -sum_i nabla w(e_i, e_i, X).
OneForm coderivative(const Tensor& nabla_omega);
/// theta_A = A d*w_A / (2n-1).
OneForm lee_form(const QuatFrame& frame, const Tensor& nabla_omega, Structure a);

/// Bit i-1 set iff |P_i t| > tol |t|.
std::uint8_t gh_type(const GHProjectorSet& p, const Tensor& t, double tol = 1e-8);

/// d omega = 3 * alternation of nabla omega.
Tensor exterior_derivative(const Tensor& nabla_omega);
/// (3,0)+(0,3) bidegree part of a 3-form with respect to A.
Tensor bidegree_30(const QuatFrame& frame, Structure a, const Tensor& phi);

// Closed-form displays for the components of nabla omega_A in terms of the
// parameters.  Each returns the component itself.
Tensor predict_w1w2(const QuatFrame& frame, const TorsionParams& p, Structure a);
Tensor predict_w3w4(const QuatFrame& frame, const TorsionParams& p, Structure a);
/// W4 part through lambda^+ and eta^+.
Tensor predict_w4(const QuatFrame& frame, const TorsionParams& p, Structure a);

struct EParts {
  Tensor w12, w1, w2, w3;
};
/// E-isotypic parts of the W1+W2, W1, W2 and W3 components (n >= 2).
EParts predict_E_parts(const QuatFrame& frame, const TorsionParams& p, Structure a);

/// lambda^-_A = B lambda_B - C lambda_C, similarly eta^-, and the + versions.
OneForm lambda_minus(const QuatFrame& frame, const TorsionParams& p, Structure a);
OneForm lambda_plus(const QuatFrame& frame, const TorsionParams& p, Structure a);
OneForm eta_minus(const QuatFrame& frame, const TorsionParams& p, Structure a);
OneForm eta_plus(const QuatFrame& frame, const TorsionParams& p, Structure a);

}  // namespace quatlas
