#pragma once

#include "quatlas/frame.hpp"
#include "quatlas/linalg.hpp"

#include <array>
#include <random>
#include <string>

namespace quatlas {

// Admissible torsion is parametrized by one-forms lambda_A and order-3
// tensors alpha_A (symmetric, trace-free and Sp(1)-invariant in the last two
// slots).  Parameter vectors are laid out as
//   [lambda_I | lambda_J | lambda_K | a_I | a_J | a_K]
// where a_A are coordinates in the orthonormal alpha-space basis.

/// Orthonormal basis of symmetric, trace-free 2-tensors invariant under I, J, K
/// (columns are flattened N x N arrays).
Eigen::MatrixXd invariant_traceless_symmetric(const QuatFrame& frame);

/// Orthonormal basis of 2-forms of type {2,0} for structure A:
/// w(AX, AY) = -w(X, Y).
Eigen::MatrixXd two_zero_forms(const QuatFrame& frame, Structure a);

/// Basis of order-3 tensors e_x (x) s_k for a basis s of 2-tensors.
Eigen::MatrixXd spread_first_slot(int dim, const Eigen::MatrixXd& two_tensor_basis);

SubspaceBasis alpha_space_basis(const QuatFrame& frame);

/// Max-norm violation of the alpha-tensor conditions.
double alpha_residual(const QuatFrame& frame, const Tensor& alpha);

struct TorsionParams {
  std::array<OneForm, 3> lambda;
  std::array<Tensor, 3> alpha;

  static TorsionParams zero(const QuatFrame& frame);
  const OneForm& lam(Structure a) const { return lambda[index_of(a)]; }
  const Tensor& alp(Structure a) const { return alpha[index_of(a)]; }
};

struct TorsionTriple {
  std::array<Tensor, 3> nabla_omega;
  const Tensor& operator[](Structure a) const { return nabla_omega[index_of(a)]; }
  Tensor& operator[](Structure a) { return nabla_omega[index_of(a)]; }
};

/// Cached per-n data for moving between tensors and parameter vectors.
class ParamSpace {
 public:
  explicit ParamSpace(const QuatFrame& frame);

  const QuatFrame& frame() const { return frame_; }
  const SubspaceBasis& alpha_basis() const { return alpha_; }
  int alpha_dim() const { return alpha_.dim(); }
  int dim() const { return 3 * frame_.dim() + 3 * alpha_dim(); }
  int lambda_offset(Structure a) const { return index_of(a) * frame_.dim(); }
  int alpha_offset(Structure a) const { return 3 * frame_.dim() + index_of(a) * alpha_dim(); }

  Eigen::VectorXd to_vector(const TorsionParams& p) const;
  TorsionParams from_vector(const Eigen::VectorXd& v) const;

  Tensor alpha_tensor(const Eigen::VectorXd& coords) const;
  Eigen::VectorXd alpha_coords(const Tensor& alpha) const;

  TorsionParams random(std::mt19937_64& rng) const;
  Eigen::VectorXd random_vector(std::mt19937_64& rng) const;

 private:
  QuatFrame frame_;
  SubspaceBasis alpha_;
};

/// nabla omega_A = lambda_C (x) omega_B - lambda_B (x) omega_C + B_(2) alpha_C - C_(2) alpha_B
/// with (A, B, C) cyclic.  Throws std::invalid_argument when an alpha is not
/// admissible.
TorsionTriple reconstruct(const QuatFrame& frame, const TorsionParams& params, double tol = 1e-8);

/// lambda_A(X) = <nabla_X omega_B, omega_C> / 4n.
OneForm extract_lambda(const QuatFrame& frame, const TorsionTriple& t, Structure a);
/// Second expression -<nabla_X omega_C, omega_B> / 4n.
OneForm extract_lambda_alt(const QuatFrame& frame, const TorsionTriple& t, Structure a);

/// alpha_A = -lambda_A (x) g + (B_(2) - B_(3)) nabla omega_C / 2.
Tensor extract_alpha(const QuatFrame& frame, const TorsionTriple& t, Structure a);
/// alpha_A = -lambda_A (x) g + (C_(3) - C_(2)) nabla omega_B / 2.
Tensor extract_alpha_alt(const QuatFrame& frame, const TorsionTriple& t, Structure a);

TorsionParams extract_params(const QuatFrame& frame, const TorsionTriple& t);

/// eta(X) = sum_i alpha(e_i, e_i, X).
OneForm extract_eta(const Tensor& alpha);

/// The E-type alpha tensor generated by a one-form:
/// (4n e_i (x) (eta v e_i)^H - eta (x) g) / ((2n+1)(n-1)), with
/// 4 (a v b)^H = a v b + Ia v Ib + Ja v Jb + Ka v Kb.
Tensor alpha_from_eta(const QuatFrame& frame, const OneForm& eta);
/// alpha |-> alpha^(E).  Requires n >= 2.
Tensor alpha_E_part(const QuatFrame& frame, const Tensor& alpha);

struct RelationReport {
  std::array<double, 3> skew{};       // nabla omega_A skew in last two slots
  std::array<double, 3> type20{};     // nabla omega_A(X, AY, AZ) = -nabla omega_A(X, Y, Z)
  std::array<double, 3> compat{};     // nabla omega_A(X,Y,Z) = nabla omega_B(X,CY,Z) - nabla omega_C(X,Y,BZ)
  double three_term = 0.0;            // sum over cyclic (A,B,C) of nabla omega_A(X, BY, CZ)
  double max() const;
  std::string describe() const;
};

RelationReport check_relations(const QuatFrame& frame, const TorsionTriple& t);

}  // namespace quatlas
