#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace quatlas {

using OneForm = Eigen::VectorXd;

enum class PairSymmetry { symmetric, skew };

// A declared relation between two slots (0-based).
struct SlotSymmetry {
  int first;
  int second;
  PairSymmetry kind;
};

/// Dense covariant tensor of order r over R^dim, row-major storage:
/// entry (i0,...,i_{r-1}) lives at ((i0*dim + i1)*dim + ...) .
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int order);

  static Tensor from_coefficients(int dim, int order,
                                  const Eigen::Ref<const Eigen::VectorXd>& v);
  static Tensor from_matrix(const Eigen::MatrixXd& m);  // order 2

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  double& operator()(int i, int j) { return data_[std::size_t(i) * dim_ + j]; }
  double operator()(int i, int j) const { return data_[std::size_t(i) * dim_ + j]; }
  double& operator()(int i, int j, int k) {
    return data_[(std::size_t(i) * dim_ + j) * dim_ + k];
  }
  double operator()(int i, int j, int k) const {
    return data_[(std::size_t(i) * dim_ + j) * dim_ + k];
  }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  Eigen::Map<Eigen::VectorXd> vec() {
    return {data_.data(), Eigen::Index(data_.size())};
  }
  Eigen::Map<const Eigen::VectorXd> vec() const {
    return {data_.data(), Eigen::Index(data_.size())};
  }

  // Order-2 view as a dim x dim matrix (row = first slot).
  Eigen::MatrixXd as_matrix() const;

  // Stride of a slot in the flat storage.
  std::size_t stride(int slot) const;

  const std::vector<SlotSymmetry>& symmetries() const noexcept { return syms_; }
  // Validates and records the relation; throws std::invalid_argument when it
  // fails by more than tol (absolute, max-norm).
  Tensor& declare(SlotSymmetry s, double tol = 1e-10);
  double symmetry_residual(SlotSymmetry s) const;

  double max_abs() const;
  double norm() const;  // sqrt(<b,b>)

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(double s);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator-(Tensor a) { return a *= -1.0; }

 private:
  void check_same_shape(const Tensor& o, const char* what) const;

  int dim_ = 0;
  int order_ = 0;
  std::vector<double> data_;
  std::vector<SlotSymmetry> syms_;
};

double tensor_inner(const Tensor& a, const Tensor& b);
double max_abs_diff(const Tensor& a, const Tensor& b);

// out(x_0,...,x_{r-1}) = b(x_{perm[0]},...,x_{perm[r-1]})
Tensor permute_slots(const Tensor& b, const std::vector<int>& perm);

// theta (x) b : prepend a slot.
Tensor outer(const OneForm& theta, const Tensor& b);
Tensor outer(const OneForm& a, const OneForm& b);

std::string shape_string(const Tensor& b);

}  // namespace quatlas
