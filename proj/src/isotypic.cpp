#include "quatlas/isotypic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace quatlas {

double LieAlgebraBasis::closure_residual() const {
  const int m = int(elements.size());
  if (m == 0) return 0.0;
  const Eigen::Index nn = elements[0].size();
  Eigen::MatrixXd span(nn, m);
  for (int a = 0; a < m; ++a) span.col(a) = elements[a].reshaped();
  Eigen::MatrixXd q = orthonormal_span(span);
  double r = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Eigen::MatrixXd c = elements[a] * elements[b] - elements[b] * elements[a];
      Eigen::VectorXd v = c.reshaped();
      r = std::max(r, (v - q * (q.transpose() * v)).cwiseAbs().maxCoeff());
    }
  return r;
}

LieAlgebraBasis spn_basis(const QuatFrame& frame) {
  const int N = frame.dim();
  std::vector<SignedTie> ties;
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) ties.push_back({k * N + l, l * N + k, -1});
  // S = A S A^T  <=>  S(pi k, pi l) = s_k s_l S(k, l)
  for (Structure a : kStructures) {
    SignedPermutation sp = as_signed_permutation(frame.matrix(a));
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l)
        ties.push_back({sp.target[k] * N + sp.target[l], k * N + l, sp.sign[k] * sp.sign[l]});
  }
  Eigen::MatrixXd ns = signed_tie_nullspace(N * N, ties);
  LieAlgebraBasis g{LieAlgebra::sp_n, {}};
  for (int c = 0; c < ns.cols(); ++c) {
    // row-major flattening: entry (i, j) at i*N + j
    Eigen::MatrixXd s(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) s(i, j) = ns(i * N + j, c);
    g.elements.push_back(std::move(s));
  }
  return g;
}

LieAlgebraBasis sp1_basis(const QuatFrame& frame) {
  LieAlgebraBasis g{LieAlgebra::sp_1, {}};
  const double s = 1.0 / std::sqrt(double(frame.dim()));
  for (Structure a : kStructures) g.elements.push_back(frame.matrix(a) * s);
  return g;
}

Eigen::MatrixXd action_matrix(const Eigen::MatrixXd& s, const SubspaceBasis& space, int dim,
                              int order) {
  const int d = space.dim();
  Eigen::MatrixXd y(space.ambient(), d);
  for (int c = 0; c < d; ++c) {
    Tensor t = Tensor::from_coefficients(dim, order, space.columns.col(c));
    y.col(c) = derivation_act(s, t).vec();
  }
  Eigen::MatrixXd x = space.columns.transpose() * y;
  const double leak = d ? (y - space.columns * x).cwiseAbs().maxCoeff() : 0.0;
  if (leak > 1e-10) {
    std::ostringstream os;
    os << "subspace is not invariant under the Lie algebra action (residual " << leak << ")";
    throw std::invalid_argument(os.str());
  }
  return x;
}

Eigen::MatrixXd casimir(const LieAlgebraBasis& g, const SubspaceBasis& space, int dim, int order) {
  const int d = space.dim();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  for (const auto& s : g.elements) {
    Eigen::MatrixXd x = action_matrix(s, space, dim, order);
    c.noalias() += x * x;
  }
  return (c + c.transpose()) * 0.5;
}

double equivariance_residual(const LieAlgebraBasis& g, const SubspaceBasis& space, int dim,
                             int order, const Eigen::MatrixXd& op) {
  double r = 0.0;
  for (const auto& s : g.elements) {
    Eigen::MatrixXd x = action_matrix(s, space, dim, order);
    if (x.size()) r = std::max(r, (op * x - x * op).cwiseAbs().maxCoeff());
  }
  return r;
}

const IsotypicComponent* IsotypicDecomposition::find(const std::string& label) const {
  for (const auto& c : components)
    if (c.label == label) return &c;
  return nullptr;
}

int IsotypicDecomposition::total_dim() const {
  int s = 0;
  for (const auto& c : components) s += c.dim();
  return s;
}

double IsotypicDecomposition::algebra_residual(int ambient) const {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(ambient, ambient);
  double r = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    Eigen::MatrixXd p = components[i].projector();
    sum += p;
    r = std::max(r, (p * p - p).cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < components.size(); ++j)
      if (j != i) r = std::max(r, (p * components[j].projector()).cwiseAbs().maxCoeff());
  }
  return r;
}

IsotypicDecomposition cluster_casimir(const Eigen::MatrixXd& cm, double rel_gap) {
  IsotypicDecomposition out;
  const int d = int(cm.rows());
  if (d == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm);
  const auto& w = es.eigenvalues();
  const double scale = std::max(w.cwiseAbs().maxCoeff(), 1e-300);
  int start = 0;
  for (int k = 1; k <= d; ++k) {
    const bool split = k == d || (w(k) - w(k - 1)) / scale > rel_gap;
    if (k < d) {
      const double gap = (w(k) - w(k - 1)) / scale;
      if (gap > rel_gap && gap < 1e3 * rel_gap)
        throw std::runtime_error("Casimir eigenvalue clustering is ambiguous");
    }
    if (!split) continue;
    IsotypicComponent c;
    c.eigenvalue = w.segment(start, k - start).mean();
    c.basis = es.eigenvectors().middleCols(start, k - start);
    out.components.push_back(std::move(c));
    start = k;
  }
  return out;
}

AlphaModuleDims alpha_module_dims(int n) {
  const int m = 2 * n;
  const int c3 = m * (m - 1) * (m - 2) / 6;
  const int l3 = 2 * (c3 - m);
  const int e = 4 * n;
  const int total = 4 * n * (2 * n * n - n - 1);
  return {l3, total - l3 - e, e};
}

namespace {

void label_by_dims(IsotypicDecomposition& iso,
                   const std::vector<std::pair<std::string, int>>& expected) {
  std::vector<std::pair<std::string, int>> want;
  for (const auto& e : expected)
    if (e.second > 0) want.push_back(e);
  if (want.size() != iso.components.size()) {
    std::ostringstream os;
    os << "found " << iso.components.size() << " Casimir eigenspaces, expected " << want.size();
    throw std::runtime_error(os.str());
  }
  for (auto& c : iso.components) {
    auto it = std::find_if(want.begin(), want.end(),
                           [&](const auto& e) { return e.second == c.dim(); });
    if (it == want.end()) {
      std::ostringstream os;
      os << "no module of dimension " << c.dim() << " expected";
      throw std::runtime_error(os.str());
    }
    c.label = it->first;
    want.erase(it);
  }
}

}  // namespace

IsotypicDecomposition alpha_isotypic(const ParamSpace& ps) {
  const QuatFrame& f = ps.frame();
  if (f.n() < 2) throw std::domain_error("alpha_isotypic needs n >= 2");
  Eigen::MatrixXd cm = casimir(spn_basis(f), ps.alpha_basis(), f.dim(), 3);
  IsotypicDecomposition iso = cluster_casimir(cm);
  AlphaModuleDims d = alpha_module_dims(f.n());
  label_by_dims(iso, {{kLambda3, d.lambda3}, {kKMod, d.k}, {kEMod, d.e}});
  return iso;
}

AlphaComponents alpha_components(const ParamSpace& ps, const IsotypicDecomposition& iso,
                                 const Tensor& alpha) {
  const Eigen::VectorXd a = ps.alpha_coords(alpha);
  auto part = [&](const char* lab) {
    const IsotypicComponent* c = iso.find(lab);
    if (!c) return Tensor(ps.frame().dim(), 3);
    return ps.alpha_tensor(c->basis * (c->basis.transpose() * a));
  };
  return {part(kLambda3), part(kKMod), part(kEMod)};
}

IsotypicDecomposition sp1_split_S2H_types(const QuatFrame& frame, const SubspaceBasis& space,
                                          int order) {
  Eigen::MatrixXd cm = casimir(sp1_basis(frame), space, frame.dim(), order);
  IsotypicDecomposition iso = cluster_casimir(cm);
  if (iso.components.size() != 2)
    throw std::runtime_error("sp(1) split expects exactly the S3H and H eigenspaces");
  // ascending order: the more negative eigenvalue is S3H (k(k+2) = 15 vs 3)
  IsotypicComponent& s3 = iso.components[0];
  IsotypicComponent& h = iso.components[1];
  if (s3.dim() != 2 * h.dim())
    throw std::runtime_error("sp(1) split: S3H part is not twice the H part");
  const double ratio = s3.eigenvalue / h.eigenvalue;
  if (std::abs(ratio - 5.0) > 1e-8)
    throw std::runtime_error("sp(1) split: Casimir ratio differs from 15:3");
  s3.label = kS3H;
  h.label = kH;
  for (auto& c : iso.components) c.basis = space.columns * c.basis;
  return iso;
}

IsotypicDecomposition spn_isotypic(const QuatFrame& frame, const SubspaceBasis& space, int order,
                                   const std::vector<std::pair<std::string, int>>& expected) {
  Eigen::MatrixXd cm = casimir(spn_basis(frame), space, frame.dim(), order);
  IsotypicDecomposition iso = cluster_casimir(cm);
  label_by_dims(iso, expected);
  for (auto& c : iso.components) c.basis = space.columns * c.basis;
  return iso;
}

}  // namespace quatlas
