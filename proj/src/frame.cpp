#include "quatlas/frame.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace quatlas {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Matrix4d unit(Structure a) {
  Eigen::Matrix4d m;
  switch (a) {
    case Structure::I:
      m << 0, -1, 0, 0,  //
          1, 0, 0, 0,    //
          0, 0, 0, -1,   //
          0, 0, 1, 0;
      break;
    case Structure::J:
      m << 0, 0, -1, 0,  //
          0, 0, 0, 1,    //
          1, 0, 0, 0,    //
          0, -1, 0, 0;
      break;
    case Structure::K:
      m << 0, 0, 0, -1,  //
          0, 0, -1, 0,   //
          0, 1, 0, 0,    //
          1, 0, 0, 0;
      break;
  }
  return m;
}

int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
  Tensor out(a.dim(), a.order() + b.order());
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Eigen::Map<Eigen::VectorXd> seg(out.data() + i * nb, Eigen::Index(nb));
    seg = a[i] * b.vec();
  }
  return out;
}

}  // namespace

char label(Structure a) { return "IJK"[index_of(a)]; }

QuatFrame::QuatFrame(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("quaternionic dimension n must be at least 1");
  for (Structure a : kStructures) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (int b = 0; b < n; ++b) m.block<4, 4>(4 * b, 4 * b) = unit(a);
    mats_[index_of(a)] = std::move(m);
  }
}

QuatFrame build_frame(int n) { return QuatFrame(n); }

Tensor kaehler_form(const QuatFrame& frame, Structure a) {
  // <e_i, A e_j> = A(i, j)
  return Tensor::from_matrix(frame.matrix(a));
}

Tensor metric_tensor(const QuatFrame& frame) { return Tensor::from_matrix(frame.metric()); }

Tensor slot_act(const Eigen::MatrixXd& e, int slot, const Tensor& b) {
  if (slot < 0 || slot >= b.order()) {
    std::ostringstream os;
    os << "slot index " << slot << " out of range for tensor of order " << b.order();
    throw std::out_of_range(os.str());
  }
  const int N = b.dim();
  if (e.rows() != N || e.cols() != N) throw std::invalid_argument("slot_act: matrix size");
  const std::size_t inner = b.stride(slot);
  const std::size_t outer_count = b.size() / (inner * N);
  Tensor out(N, b.order());
  const Eigen::MatrixXd et = -e.transpose();
  for (std::size_t o = 0; o < outer_count; ++o) {
    const std::size_t off = o * N * inner;
    Eigen::Map<const RowMat> src(b.data() + off, N, Eigen::Index(inner));
    Eigen::Map<RowMat> dst(out.data() + off, N, Eigen::Index(inner));
    dst.noalias() = et * src;
  }
  return out;
}

Tensor slot_act(const QuatFrame& frame, Structure a, int slot, const Tensor& b) {
  return slot_act(frame.matrix(a), slot, b);
}

Tensor full_act(const QuatFrame& frame, Structure a, const Tensor& b) {
  Tensor out = b;
  for (int s = 0; s < b.order(); ++s) out = slot_act(frame.matrix(a), s, out);
  return out;
}

Tensor derivation_act(const Eigen::MatrixXd& e, const Tensor& b) {
  Tensor out(b.dim(), b.order());
  for (int s = 0; s < b.order(); ++s) out += slot_act(e, s, b);
  return out;
}

OneForm act(const Eigen::MatrixXd& e, const OneForm& eta) { return -(e.transpose() * eta); }

OneForm act(const QuatFrame& frame, Structure a, const OneForm& eta) {
  return act(frame.matrix(a), eta);
}

Tensor alternate_trailing(const Tensor& b, int k) {
  if (k < 1 || b.order() < k) {
    std::ostringstream os;
    os << "alternation of " << k << " trailing slots needs order >= " << k << ", got "
       << b.order();
    throw std::invalid_argument(os.str());
  }
  const int lead = b.order() - k;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  Tensor out(b.dim(), b.order());
  int count = 0;
  do {
    std::vector<int> perm(b.order());
    std::iota(perm.begin(), perm.begin() + lead, 0);
    for (int q = 0; q < k; ++q) perm[lead + q] = lead + p[q];
    Tensor t = permute_slots(b, perm);
    if (permutation_sign(p) > 0)
      out += t;
    else
      out -= t;
    ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  out *= 1.0 / count;
  return out;
}

Tensor alternate3(const Tensor& b) { return alternate_trailing(b, 3); }
Tensor alternate4(const Tensor& b) { return alternate_trailing(b, 4); }

Tensor wedge11(const OneForm& a, const OneForm& b) { return outer(a, b) - outer(b, a); }

Tensor wedge12(const OneForm& theta, const Tensor& w) {
  if (w.order() != 2) throw std::invalid_argument("wedge12: 2-form expected");
  Tensor t = outer(theta, w);  // theta(X) w(Y,Z)
  return t + permute_slots(t, {1, 2, 0}) + permute_slots(t, {2, 0, 1});
}

Tensor wedge22(const Tensor& beta, const Tensor& omega, double tol) {
  if (omega.order() != 2 || (beta.order() != 2 && beta.order() != 3))
    throw std::invalid_argument("wedge22: expects a 2-form (optionally with one leading slot) and a 2-form");
  if (beta.dim() != omega.dim()) throw std::invalid_argument("wedge22: dimension mismatch");
  const int lead = beta.order() - 2;
  const double scale = std::max({1.0, beta.max_abs(), omega.max_abs()});
  if (beta.symmetry_residual({lead, lead + 1, PairSymmetry::skew}) > tol * scale ||
      omega.symmetry_residual({0, 1, PairSymmetry::skew}) > tol * scale)
    throw std::invalid_argument("wedge22: arguments must be skew in their trailing pair");

  static const std::array<std::pair<std::array<int, 4>, int>, 6> shuffles{{
      {{0, 1, 2, 3}, +1},
      {{0, 2, 1, 3}, -1},
      {{0, 3, 1, 2}, +1},
      {{1, 2, 0, 3}, +1},
      {{1, 3, 0, 2}, -1},
      {{2, 3, 0, 1}, +1},
  }};
  // T(x; a, b, c, d) = beta(x; a, b) omega(c, d)
  Tensor t = tensor_product(beta, omega);
  Tensor out(beta.dim(), lead + 4);
  for (const auto& [pos, sign] : shuffles) {
    // out(y0..y3) += sign * T(y_pos0, y_pos1, y_pos2, y_pos3)
    std::vector<int> perm(lead + 4);
    if (lead) perm[0] = 0;
    for (int q = 0; q < 4; ++q) perm[lead + q] = lead + pos[q];
    Tensor p = permute_slots(t, perm);
    if (sign > 0)
      out += p;
    else
      out -= p;
  }
  return out;
}

Tensor vee(const OneForm& a, const OneForm& b) { return (outer(a, b) + outer(b, a)) * 0.5; }

}  // namespace quatlas
