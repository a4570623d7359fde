#include "quatlas/tensor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace quatlas {

namespace {
std::size_t ipow(int base, int e) {
  std::size_t r = 1;
  for (int k = 0; k < e; ++k) r *= std::size_t(base);
  return r;
}
}  // namespace

Tensor::Tensor(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1) throw std::invalid_argument("tensor dimension must be positive");
  if (order < 0) throw std::invalid_argument("tensor order must be non-negative");
  data_.assign(ipow(dim, order), 0.0);
}

Tensor Tensor::from_coefficients(int dim, int order,
                                 const Eigen::Ref<const Eigen::VectorXd>& v) {
  Tensor t(dim, order);
  if (std::size_t(v.size()) != t.size())
    throw std::invalid_argument("coefficient vector has wrong length for tensor shape");
  t.vec() = v;
  return t;
}

Tensor Tensor::from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("from_matrix: square matrix expected");
  Tensor t(int(m.rows()), 2);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

Eigen::MatrixXd Tensor::as_matrix() const {
  if (order_ != 2) throw std::invalid_argument("as_matrix: order-2 tensor expected");
  Eigen::MatrixXd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

std::size_t Tensor::stride(int slot) const {
  if (slot < 0 || slot >= order_) throw std::out_of_range("slot index out of range");
  return ipow(dim_, order_ - 1 - slot);
}

double Tensor::symmetry_residual(SlotSymmetry s) const {
  if (s.first < 0 || s.second < 0 || s.first >= order_ || s.second >= order_ ||
      s.first == s.second)
    throw std::out_of_range("symmetry declaration refers to invalid slots");
  std::vector<int> perm(order_);
  for (int k = 0; k < order_; ++k) perm[k] = k;
  std::swap(perm[s.first], perm[s.second]);
  Tensor swapped = permute_slots(*this, perm);
  double sign = s.kind == PairSymmetry::symmetric ? 1.0 : -1.0;
  double r = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k)
    r = std::max(r, std::abs(data_[k] - sign * swapped.data_[k]));
  return r;
}

Tensor& Tensor::declare(SlotSymmetry s, double tol) {
  double r = symmetry_residual(s);
  if (r > tol) {
    std::ostringstream os;
    os << "declared " << (s.kind == PairSymmetry::skew ? "skew" : "symmetric")
       << " slots (" << s.first << "," << s.second << ") violated, residual " << r;
    throw std::invalid_argument(os.str());
  }
  syms_.push_back(s);
  return *this;
}

double Tensor::max_abs() const {
  double r = 0.0;
  for (double v : data_) r = std::max(r, std::abs(v));
  return r;
}

double Tensor::norm() const { return vec().norm(); }

void Tensor::check_same_shape(const Tensor& o, const char* what) const {
  if (o.dim_ != dim_ || o.order_ != order_)
    throw std::invalid_argument(std::string(what) + ": shape mismatch " + shape_string(*this) +
                                " vs " + shape_string(o));
}

Tensor& Tensor::operator+=(const Tensor& o) {
  check_same_shape(o, "tensor +");
  vec() += o.vec();
  syms_.clear();
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  check_same_shape(o, "tensor -");
  vec() -= o.vec();
  syms_.clear();
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  vec() *= s;
  return *this;
}

double tensor_inner(const Tensor& a, const Tensor& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("tensor_inner: order mismatch");
  if (a.dim() != b.dim()) throw std::invalid_argument("tensor_inner: dimension mismatch");
  return a.vec().dot(b.vec());
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  return (a.vec() - b.vec()).lpNorm<Eigen::Infinity>();
}

Tensor permute_slots(const Tensor& b, const std::vector<int>& perm) {
  const int r = b.order();
  const int N = b.dim();
  if (int(perm.size()) != r) throw std::invalid_argument("permute_slots: permutation length");
  Tensor out(N, r);
  std::vector<std::size_t> src_stride(r);
  for (int j = 0; j < r; ++j) src_stride[perm[j]] = b.stride(j);
  std::vector<int> idx(r, 0);
  const std::size_t total = out.size();
  std::size_t src = 0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    out[flat] = b[src];
    // odometer increment over out's multi-index
    for (int k = r - 1; k >= 0; --k) {
      if (++idx[k] < N) {
        src += src_stride[k];
        break;
      }
      idx[k] = 0;
      src -= src_stride[k] * std::size_t(N - 1);
    }
  }
  return out;
}

Tensor outer(const OneForm& theta, const Tensor& b) {
  if (theta.size() != b.dim()) throw std::invalid_argument("outer: dimension mismatch");
  Tensor out(b.dim(), b.order() + 1);
  const std::size_t blk = b.size();
  for (int x = 0; x < b.dim(); ++x) {
    Eigen::Map<Eigen::VectorXd> seg(out.data() + x * blk, Eigen::Index(blk));
    seg = theta(x) * b.vec();
  }
  return out;
}

Tensor outer(const OneForm& a, const OneForm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("outer: dimension mismatch");
  Tensor out(int(a.size()), 2);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) out(i, j) = a(i) * b(j);
  return out;
}

std::string shape_string(const Tensor& b) {
  std::ostringstream os;
  os << "(dim " << b.dim() << ", order " << b.order() << ")";
  return os.str();
}

}  // namespace quatlas
