#include "quatlas/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace quatlas {

double SubspaceBasis::orthonormality_error() const {
  if (columns.cols() == 0) return 0.0;
  Eigen::MatrixXd g = columns.transpose() * columns;
  g -= Eigen::MatrixXd::Identity(g.rows(), g.cols());
  return g.cwiseAbs().maxCoeff();
}

namespace {

// union-find with parity: value(x) = parity(x) * value(root(x))
struct ParityDsu {
  std::vector<int> parent, parity;
  explicit ParityDsu(int n) : parent(n), parity(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  std::pair<int, int> find(int x) {
    int sign = 1;
    int r = x;
    while (parent[r] != r) {
      sign *= parity[r];
      r = parent[r];
    }
    // path compression
    int s = sign;
    while (parent[x] != x) {
      int nx = parent[x];
      int ps = parity[x];
      parent[x] = r;
      parity[x] = s;
      s *= ps;
      x = nx;
    }
    return {r, sign};
  }
};

}  // namespace

Eigen::MatrixXd signed_tie_nullspace(int num_vars, const std::vector<SignedTie>& ties) {
  ParityDsu dsu(num_vars);
  std::vector<char> dead(num_vars, 0);
  for (const auto& t : ties) {
    auto [rp, sp] = dsu.find(t.p);
    auto [rq, sq] = dsu.find(t.q);
    // x_p = sign x_q  with x_p = sp x_rp, x_q = sq x_rq
    if (rp == rq) {
      if (sp != t.sign * sq) dead[rp] = 1;  // x_r = -x_r
      continue;
    }
    dsu.parent[rp] = rq;
    dsu.parity[rp] = sp * t.sign * sq;
    if (dead[rp]) dead[rq] = 1;
  }
  std::vector<int> col_of(num_vars, -1);
  int cols = 0;
  for (int v = 0; v < num_vars; ++v) {
    auto [r, s] = dsu.find(v);
    (void)s;
    if (!dead[r] && col_of[r] < 0) col_of[r] = cols++;
  }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(num_vars, cols);
  for (int v = 0; v < num_vars; ++v) {
    auto [r, s] = dsu.find(v);
    if (!dead[r]) basis(v, col_of[r]) = s;
  }
  for (int c = 0; c < cols; ++c) basis.col(c).normalize();
  return basis;
}

SignedPermutation as_signed_permutation(const Eigen::MatrixXd& e) {
  const int n = int(e.cols());
  SignedPermutation sp{std::vector<int>(n, -1), std::vector<int>(n, 0)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < e.rows(); ++i) {
      double v = e(i, j);
      if (v == 0.0) continue;
      if ((v != 1.0 && v != -1.0) || sp.target[j] >= 0)
        throw std::invalid_argument("matrix is not a signed permutation");
      sp.target[j] = i;
      sp.sign[j] = v > 0 ? 1 : -1;
    }
    if (sp.target[j] < 0) throw std::invalid_argument("matrix is not a signed permutation");
  }
  return sp;
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  const double top = s.size() ? s(0) : 0.0;
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * top && top > 0) ++r;
  return svd.matrixU().leftCols(r);
}

SubspaceBasis psd_kernel(const Eigen::MatrixXd& gram, double rel_tol, double scale) {
  SubspaceBasis out;
  out.tolerance = rel_tol;
  const int d = int(gram.rows());
  if (d == 0) {
    out.columns = Eigen::MatrixXd(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const auto& w = es.eigenvalues();  // ascending
  if (scale <= 0) scale = std::max(w(d - 1), 0.0);
  const double cut = rel_tol * scale;
  int k = 0;
  while (k < d && w(k) <= cut) ++k;
  out.columns = es.eigenvectors().leftCols(k);
  double zero_max = k ? std::max(w(k - 1), 0.0) : 0.0;
  double nonzero_min = k < d ? w(k) : 0.0;
  out.margin = (k < d && scale > 0) ? nonzero_min / scale : 1.0;
  (void)zero_max;
  return out;
}

SubspaceBasis kernel(const Eigen::MatrixXd& m, double rel_tol) {
  SubspaceBasis out;
  out.tolerance = rel_tol;
  const int c = int(m.cols());
  if (c == 0) {
    out.columns = Eigen::MatrixXd(0, 0);
    return out;
  }
  if (m.rows() == 0) {
    out.columns = Eigen::MatrixXd::Identity(c, c);
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  int r = 0;
  for (int k = 0; k < s.size(); ++k)
    if (top > 0 && s(k) > rel_tol * top) ++r;
  out.columns = svd.matrixV().rightCols(c - r);
  out.margin = (r > 0 && top > 0) ? s(r - 1) / top : 1.0;
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<Eigen::MatrixXd, Eigen::ColPivHouseholderQRPreconditioner>(m)
      .singularValues();
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd s = singular_values(m);
  const double top = s(0);
  int r = 0;
  for (int k = 0; k < s.size(); ++k)
    if (top > 0 && s(k) > rel_tol * top) ++r;
  return r;
}

Eigen::MatrixXd operator_matrix(int in_dim,
                                const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f) {
  Eigen::MatrixXd out;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(in_dim);
  for (int k = 0; k < in_dim; ++k) {
    e(k) = 1.0;
    Eigen::VectorXd col = f(e);
    if (k == 0) out.resize(col.size(), in_dim);
    out.col(k) = col;
    e(k) = 0.0;
  }
  return out;
}

double lambda_max(const Eigen::MatrixXd& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(sym.rows() - 1);
}

}  // namespace quatlas
