#include "quatlas/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace quatlas {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Ties for b(E Y, E Z) = sign * b(Y, Z) on flattened 2-tensors.
void add_invariance_ties(const Eigen::MatrixXd& e, int sign, std::vector<SignedTie>& ties) {
  const SignedPermutation sp = as_signed_permutation(e);
  const int N = int(e.rows());
  // b(E e_k, E e_l) = s_k s_l b(pi k, pi l)
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l)
      ties.push_back({sp.target[k] * N + sp.target[l], k * N + l, sign * sp.sign[k] * sp.sign[l]});
}

void add_pair_ties(int N, int sign, std::vector<SignedTie>& ties) {
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) ties.push_back({k * N + l, l * N + k, sign});
}

}  // namespace

Eigen::MatrixXd invariant_traceless_symmetric(const QuatFrame& frame) {
  const int N = frame.dim();
  std::vector<SignedTie> ties;
  add_pair_ties(N, +1, ties);
  for (Structure b : kStructures) add_invariance_ties(frame.matrix(b), +1, ties);
  Eigen::MatrixXd inv = signed_tie_nullspace(N * N, ties);
  // remove the metric direction (trace functional = inner product with g)
  Eigen::VectorXd g = Eigen::VectorXd::Zero(N * N);
  for (int i = 0; i < N; ++i) g(i * N + i) = 1.0;
  g.normalize();
  Eigen::MatrixXd rest = inv - g * (g.transpose() * inv);
  return orthonormal_span(rest, 1e-10);
}

Eigen::MatrixXd two_zero_forms(const QuatFrame& frame, Structure a) {
  const int N = frame.dim();
  std::vector<SignedTie> ties;
  add_pair_ties(N, -1, ties);
  add_invariance_ties(frame.matrix(a), -1, ties);
  return signed_tie_nullspace(N * N, ties);
}

Eigen::MatrixXd spread_first_slot(int dim, const Eigen::MatrixXd& s) {
  const int m = int(s.cols());
  const int nn = int(s.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(Eigen::Index(dim) * nn, Eigen::Index(dim) * m);
  for (int x = 0; x < dim; ++x) out.block(Eigen::Index(x) * nn, Eigen::Index(x) * m, nn, m) = s;
  return out;
}

SubspaceBasis alpha_space_basis(const QuatFrame& frame) {
  SubspaceBasis b;
  b.tolerance = 1e-10;
  if (frame.n() == 1) {
    b.columns = Eigen::MatrixXd(Eigen::Index(frame.dim()) * frame.dim() * frame.dim(), 0);
    return b;
  }
  b.columns = spread_first_slot(frame.dim(), invariant_traceless_symmetric(frame));
  return b;
}

double alpha_residual(const QuatFrame& frame, const Tensor& alpha) {
  if (alpha.order() != 3 || alpha.dim() != frame.dim())
    throw std::invalid_argument("alpha tensor must have order 3 over R^{4n}");
  double r = alpha.symmetry_residual({1, 2, PairSymmetry::symmetric});
  const int N = frame.dim();
  for (int x = 0; x < N; ++x) {
    double tr = 0;
    for (int i = 0; i < N; ++i) tr += alpha(x, i, i);
    r = std::max(r, std::abs(tr));
  }
  for (Structure b : kStructures)
    r = std::max(r, max_abs_diff(slot_act(frame, b, 1, slot_act(frame, b, 2, alpha)), alpha));
  return r;
}

TorsionParams TorsionParams::zero(const QuatFrame& frame) {
  TorsionParams p;
  for (int k = 0; k < 3; ++k) {
    p.lambda[k] = OneForm::Zero(frame.dim());
    p.alpha[k] = Tensor(frame.dim(), 3);
  }
  return p;
}

ParamSpace::ParamSpace(const QuatFrame& frame) : frame_(frame), alpha_(alpha_space_basis(frame)) {}

Eigen::VectorXd ParamSpace::to_vector(const TorsionParams& p) const {
  Eigen::VectorXd v(dim());
  const int N = frame_.dim();
  for (Structure a : kStructures) {
    v.segment(lambda_offset(a), N) = p.lam(a);
    if (alpha_dim()) v.segment(alpha_offset(a), alpha_dim()) = alpha_coords(p.alp(a));
  }
  return v;
}

TorsionParams ParamSpace::from_vector(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) throw std::invalid_argument("parameter vector has wrong length");
  TorsionParams p;
  const int N = frame_.dim();
  for (Structure a : kStructures) {
    p.lambda[index_of(a)] = v.segment(lambda_offset(a), N);
    p.alpha[index_of(a)] = alpha_dim() ? alpha_tensor(v.segment(alpha_offset(a), alpha_dim()))
                                       : Tensor(N, 3);
  }
  return p;
}

Tensor ParamSpace::alpha_tensor(const Eigen::VectorXd& coords) const {
  return Tensor::from_coefficients(frame_.dim(), 3, alpha_.columns * coords);
}

Eigen::VectorXd ParamSpace::alpha_coords(const Tensor& alpha) const {
  return alpha_.columns.transpose() * alpha.vec();
}

Eigen::VectorXd ParamSpace::random_vector(std::mt19937_64& rng) const {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd v(dim());
  for (int k = 0; k < v.size(); ++k) v(k) = nd(rng);
  return v;
}

TorsionParams ParamSpace::random(std::mt19937_64& rng) const {
  return from_vector(random_vector(rng));
}

TorsionTriple reconstruct(const QuatFrame& frame, const TorsionParams& p, double tol) {
  for (Structure a : kStructures) {
    const Tensor& al = p.alp(a);
    double scale = std::max(1.0, al.max_abs());
    double r = alpha_residual(frame, al);
    if (r > tol * scale) {
      std::ostringstream os;
      os << "alpha_" << label(a) << " is not admissible (residual " << r << ")";
      throw std::invalid_argument(os.str());
    }
    if (p.lam(a).size() != frame.dim()) throw std::invalid_argument("lambda has wrong length");
  }
  TorsionTriple t;
  for (Structure a : kStructures) {
    Structure b = next(a), c = prev(a);
    Tensor v = outer(p.lam(c), kaehler_form(frame, b)) - outer(p.lam(b), kaehler_form(frame, c));
    v += slot_act(frame, b, 1, p.alp(c));
    v -= slot_act(frame, c, 1, p.alp(b));
    t[a] = std::move(v);
  }
  return t;
}

namespace {
OneForm contract_last_two(const Tensor& t, const Tensor& w) {
  const int N = t.dim();
  Eigen::Map<const RowMat> m(t.data(), N, Eigen::Index(N) * N);
  return m * w.vec();
}
}  // namespace

OneForm extract_lambda(const QuatFrame& frame, const TorsionTriple& t, Structure a) {
  return contract_last_two(t[next(a)], kaehler_form(frame, prev(a))) / (4.0 * frame.n());
}

OneForm extract_lambda_alt(const QuatFrame& frame, const TorsionTriple& t, Structure a) {
  return -contract_last_two(t[prev(a)], kaehler_form(frame, next(a))) / (4.0 * frame.n());
}

Tensor extract_alpha(const QuatFrame& frame, const TorsionTriple& t, Structure a) {
  Structure b = next(a), c = prev(a);
  Tensor half = (slot_act(frame, b, 1, t[c]) - slot_act(frame, b, 2, t[c])) * 0.5;
  return half - outer(extract_lambda(frame, t, a), metric_tensor(frame));
}

Tensor extract_alpha_alt(const QuatFrame& frame, const TorsionTriple& t, Structure a) {
  Structure b = next(a), c = prev(a);
  Tensor half = (slot_act(frame, c, 2, t[b]) - slot_act(frame, c, 1, t[b])) * 0.5;
  return half - outer(extract_lambda(frame, t, a), metric_tensor(frame));
}

TorsionParams extract_params(const QuatFrame& frame, const TorsionTriple& t) {
  TorsionParams p;
  for (Structure a : kStructures) {
    p.lambda[index_of(a)] = extract_lambda(frame, t, a);
    p.alpha[index_of(a)] = extract_alpha(frame, t, a);
  }
  return p;
}

OneForm extract_eta(const Tensor& alpha) {
  if (alpha.order() != 3) throw std::invalid_argument("extract_eta: order-3 tensor expected");
  const int N = alpha.dim();
  OneForm eta = OneForm::Zero(N);
  for (int i = 0; i < N; ++i)
    for (int x = 0; x < N; ++x) eta(x) += alpha(i, i, x);
  return eta;
}

Tensor alpha_from_eta(const QuatFrame& frame, const OneForm& eta) {
  const int n = frame.n();
  if (n < 2) throw std::domain_error("the E-part of alpha is only defined for n >= 2");
  const int N = frame.dim();
  Tensor out(N, 3);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(N, N);
  for (int i = 0; i < N; ++i) {
    OneForm ei = id.col(i);
    Tensor s = vee(eta, ei);
    for (Structure a : kStructures) s += vee(act(frame, a, eta), act(frame, a, ei));
    // 4n e_i (x) (eta v e_i)^H = n e_i (x) s
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) out(i, y, z) += n * s(y, z);
  }
  out -= outer(eta, metric_tensor(frame));
  out *= 1.0 / ((2.0 * n + 1.0) * (n - 1.0));
  return out;
}

Tensor alpha_E_part(const QuatFrame& frame, const Tensor& alpha) {
  return alpha_from_eta(frame, extract_eta(alpha));
}

double RelationReport::max() const {
  double r = three_term;
  for (int k = 0; k < 3; ++k) r = std::max({r, skew[k], type20[k], compat[k]});
  return r;
}

std::string RelationReport::describe() const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  for (Structure a : kStructures) {
    int k = index_of(a);
    os << label(a) << ": skew " << skew[k] << ", type " << type20[k] << ", compat " << compat[k]
       << "; ";
  }
  os << "three-term " << three_term;
  return os.str();
}

RelationReport check_relations(const QuatFrame& frame, const TorsionTriple& t) {
  RelationReport r;
  for (Structure a : kStructures) {
    const Tensor& x = t[a];
    if (x.order() != 3 || x.dim() != frame.dim())
      throw std::invalid_argument("torsion components must be order-3 tensors over R^{4n}");
  }
  Tensor three(frame.dim(), 3);
  for (Structure a : kStructures) {
    const int k = index_of(a);
    Structure b = next(a), c = prev(a);
    const Tensor& x = t[a];
    r.skew[k] = x.symmetry_residual({1, 2, PairSymmetry::skew});
    r.type20[k] = (slot_act(frame, a, 1, slot_act(frame, a, 2, x)) + x).max_abs();
    r.compat[k] = (x + slot_act(frame, c, 1, t[b]) - slot_act(frame, b, 2, t[c])).max_abs();
    three += slot_act(frame, b, 1, slot_act(frame, c, 2, x));
  }
  r.three_term = three.max_abs();
  return r;
}

}  // namespace quatlas
