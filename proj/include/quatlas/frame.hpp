#pragma once

#include "quatlas/tensor.hpp"

#include <array>
#include <string>

namespace quatlas {

enum class Structure { I = 0, J = 1, K = 2 };

inline constexpr std::array<Structure, 3> kStructures{Structure::I, Structure::J, Structure::K};

inline constexpr int index_of(Structure a) { return static_cast<int>(a); }
inline constexpr Structure structure_at(int k) { return static_cast<Structure>(((k % 3) + 3) % 3); }
// cyclic successor: I -> J -> K -> I
inline constexpr Structure next(Structure a) { return structure_at(index_of(a) + 1); }
inline constexpr Structure prev(Structure a) { return structure_at(index_of(a) + 2); }
char label(Structure a);

/// Flat model of H^n on R^{4n}.  Coordinates come in blocks (x, y, z, w) on
/// which I, J, K act as left multiplication by the quaternion units i, j, k.
/// Every structure matrix is a signed permutation matrix.
class QuatFrame {
 public:
  explicit QuatFrame(int n);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return 4 * n_; }
  const Eigen::MatrixXd& matrix(Structure a) const { return mats_[index_of(a)]; }
  const Eigen::MatrixXd& I() const { return mats_[0]; }
  const Eigen::MatrixXd& J() const { return mats_[1]; }
  const Eigen::MatrixXd& K() const { return mats_[2]; }
  Eigen::MatrixXd metric() const { return Eigen::MatrixXd::Identity(dim(), dim()); }

 private:
  int n_;
  std::array<Eigen::MatrixXd, 3> mats_;
};

QuatFrame build_frame(int n);

/// omega_A(X, Y) = <X, A Y>.
Tensor kaehler_form(const QuatFrame& frame, Structure a);
Tensor metric_tensor(const QuatFrame& frame);

/// (E_(i) b)(..., X_i, ...) = -b(..., E X_i, ...), slot 0-based.
/// Works for any endomorphism E, so it doubles as the derivation action of a
/// Lie algebra element on one slot.
Tensor slot_act(const Eigen::MatrixXd& e, int slot, const Tensor& b);
Tensor slot_act(const QuatFrame& frame, Structure a, int slot, const Tensor& b);

/// (A b)(X_1..X_s) = (-1)^s b(A X_1, ..., A X_s).
Tensor full_act(const QuatFrame& frame, Structure a, const Tensor& b);

/// Sum over slots of slot_act: the natural action of a skew endomorphism.
Tensor derivation_act(const Eigen::MatrixXd& e, const Tensor& b);

/// One-form action (A eta)(X) = -eta(A X).
OneForm act(const QuatFrame& frame, Structure a, const OneForm& eta);
OneForm act(const Eigen::MatrixXd& e, const OneForm& eta);

/// Projection-normalized alternation of the trailing k slots (k = 3 or 4);
/// leading slots are spectators.
Tensor alternate_trailing(const Tensor& b, int k);
Tensor alternate3(const Tensor& b);
Tensor alternate4(const Tensor& b);

/// a ^ b = a (x) b - b (x) a.
Tensor wedge11(const OneForm& a, const OneForm& b);
/// theta ^ w for a 2-form w as the cyclic sum theta(X)w(Y,Z) + theta(Y)w(Z,X) + theta(Z)w(X,Y).
Tensor wedge12(const OneForm& theta, const Tensor& w);

/// Shuffle product of two 2-forms (no factorials); when beta has order 3 the
/// first slot is a spectator.  Both arguments must be skew in their trailing
/// pair.
Tensor wedge22(const Tensor& beta, const Tensor& omega, double tol = 1e-9);

/// a v b = (a (x) b + b (x) a) / 2.
Tensor vee(const OneForm& a, const OneForm& b);

}  // namespace quatlas
