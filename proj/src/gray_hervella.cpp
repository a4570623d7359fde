#include "quatlas/gray_hervella.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace quatlas {

GHConstants GHConstants::for_n(int n) {
  if (n < 2) throw std::domain_error("E-part constants need n >= 2");
  const double k12 = -1.0 / ((2.0 * n + 1.0) * (n - 1.0));
  return {-1.0 / (n - 1.0), 1.0 / (2.0 * n + 1.0), k12, k12, 1.0};
}

Tensor w12_part(const QuatFrame& frame, Structure a, const Tensor& t) {
  return (t - slot_act(frame, a, 0, slot_act(frame, a, 1, t))) * 0.5;
}

namespace {

// sum_i e_i (x) (E e_i ^ theta); E = identity when null
Tensor ei_wedge(const Eigen::MatrixXd* e, const OneForm& theta) {
  const int N = int(theta.size());
  Tensor out(N, 3);
  for (int i = 0; i < N; ++i) {
    OneForm v = e ? OneForm(e->col(i)) : OneForm(OneForm::Unit(N, i));
    Tensor w = wedge11(v, theta);
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) out(i, y, z) = w(y, z);
  }
  return out;
}

}  // namespace

Tensor w4_formula(const QuatFrame& frame, Structure a, const Tensor& t) {
  const OneForm th = coderivative(t);
  const OneForm ath = act(frame, a, th);
  Tensor out = ei_wedge(&frame.matrix(a), ath) - ei_wedge(nullptr, th);
  out *= 1.0 / (2.0 * (2.0 * frame.n() - 1.0));
  return out;
}

GHProjectorSet::GHProjectorSet(const QuatFrame& frame, Structure a) : dim_(frame.dim()), a_(a) {
  space_.columns = spread_first_slot(frame.dim(), two_zero_forms(frame, a));
  space_.tolerance = 0.0;
  const int m = space_.dim();
  const int N = frame.dim();
  Eigen::MatrixXd p12(m, m), p1(m, m), p4(m, m);
  for (int c = 0; c < m; ++c) {
    Tensor t = Tensor::from_coefficients(N, 3, space_.columns.col(c));
    Tensor q = w12_part(frame, a, t);
    p12.col(c) = space_.columns.transpose() * q.vec();
    p1.col(c) = space_.columns.transpose() * alternate3(q).vec();
    p4.col(c) = space_.columns.transpose() * w4_formula(frame, a, t).vec();
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  p_[0] = p1;
  p_[1] = p12 - p1;
  p_[2] = id - p12 - p4;
  p_[3] = p4;
  double r = algebra_residual();
  if (r > 1e-9) {
    std::ostringstream os;
    os << "Gray-Hervella projector algebra fails for " << label(a) << " (residual " << r << ")";
    throw ConventionError(os.str());
  }
}

GHProjectorSet build_projectors(const QuatFrame& frame, Structure a) {
  return GHProjectorSet(frame, a);
}

const Eigen::MatrixXd& GHProjectorSet::matrix(int i) const {
  if (i < 1 || i > 4) throw std::out_of_range("Gray-Hervella index must be 1..4");
  return p_[i - 1];
}

Eigen::VectorXd GHProjectorSet::coords(const Tensor& t) const {
  return space_.columns.transpose() * t.vec();
}

Tensor GHProjectorSet::tensor(const Eigen::VectorXd& c) const {
  return Tensor::from_coefficients(dim_, 3, space_.columns * c);
}

Tensor GHProjectorSet::apply(int i, const Tensor& t) const { return tensor(matrix(i) * coords(t)); }

std::array<int, 4> GHProjectorSet::ranks() const {
  std::array<int, 4> r{};
  // orthogonal projectors: rank = trace
  for (int i = 0; i < 4; ++i) r[i] = int(std::lround(p_[i].trace()));
  return r;
}

double GHProjectorSet::algebra_residual() const {
  const int m = space_.dim();
  double r = 0.0;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < 4; ++i) {
    sum += p_[i];
    r = std::max(r, (p_[i] * p_[i] - p_[i]).cwiseAbs().maxCoeff());
    r = std::max(r, (p_[i] - p_[i].transpose()).cwiseAbs().maxCoeff());
    for (int j = 0; j < 4; ++j)
      if (j != i) r = std::max(r, (p_[i] * p_[j]).cwiseAbs().maxCoeff());
  }
  r = std::max(r, (sum - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
  return r;
}

OneForm coderivative(const Tensor& t) {
  if (t.order() != 3) throw std::invalid_argument("coderivative: order-3 tensor expected");
  OneForm th = -extract_eta(t);  // extract_eta sums over the first two slots
  return th;
}

OneForm lee_form(const QuatFrame& frame, const Tensor& t, Structure a) {
  return act(frame, a, coderivative(t)) / (2.0 * frame.n() - 1.0);
}

std::uint8_t gh_type(const GHProjectorSet& p, const Tensor& t, double tol) {
  const double nrm = t.norm();
  if (nrm == 0.0) return 0;
  const Eigen::VectorXd c = p.coords(t);
  std::uint8_t mask = 0;
  for (int i = 1; i <= 4; ++i)
    if ((p.matrix(i) * c).norm() > tol * nrm) mask |= std::uint8_t(1u << (i - 1));
  return mask;
}

Tensor exterior_derivative(const Tensor& t) { return alternate3(t) * 3.0; }

Tensor bidegree_30(const QuatFrame& frame, Structure a, const Tensor& phi) {
  // phi(X, AY, AZ) = slot(1) slot(2) phi, etc.
  Tensor yz = slot_act(frame, a, 1, slot_act(frame, a, 2, phi));
  Tensor xz = slot_act(frame, a, 0, slot_act(frame, a, 2, phi));
  Tensor xy = slot_act(frame, a, 0, slot_act(frame, a, 1, phi));
  return (phi - yz - xz - xy) * 0.25;
}

OneForm lambda_minus(const QuatFrame& f, const TorsionParams& p, Structure a) {
  return act(f, next(a), p.lam(next(a))) - act(f, prev(a), p.lam(prev(a)));
}
OneForm lambda_plus(const QuatFrame& f, const TorsionParams& p, Structure a) {
  return act(f, next(a), p.lam(next(a))) + act(f, prev(a), p.lam(prev(a)));
}
OneForm eta_minus(const QuatFrame& f, const TorsionParams& p, Structure a) {
  return act(f, next(a), extract_eta(p.alp(next(a)))) -
         act(f, prev(a), extract_eta(p.alp(prev(a))));
}
OneForm eta_plus(const QuatFrame& f, const TorsionParams& p, Structure a) {
  return act(f, next(a), extract_eta(p.alp(next(a)))) +
         act(f, prev(a), extract_eta(p.alp(prev(a))));
}

namespace {

// C(mu) (x) omega_B  and  B(mu) (x) omega_C
Tensor c_mu_omega_b(const QuatFrame& f, Structure a, const OneForm& mu) {
  return outer(act(f, prev(a), mu), kaehler_form(f, next(a)));
}
Tensor b_mu_omega_c(const QuatFrame& f, Structure a, const OneForm& mu) {
  return outer(act(f, next(a), mu), kaehler_form(f, prev(a)));
}

}  // namespace

Tensor predict_w1w2(const QuatFrame& f, const TorsionParams& p, Structure a) {
  const Structure b = next(a), c = prev(a);
  const OneForm lm = lambda_minus(f, p, a);
  Tensor ab = slot_act(f, b, 0, p.alp(b)) - slot_act(f, c, 0, p.alp(c));
  Tensor mixed = slot_act(f, b, 0, slot_act(f, c, 1, ab)) + slot_act(f, c, 0, slot_act(f, b, 1, ab));
  return (c_mu_omega_b(f, a, lm) + b_mu_omega_c(f, a, lm) + mixed) * 0.5;
}

Tensor predict_w3w4(const QuatFrame& f, const TorsionParams& p, Structure a) {
  const Structure b = next(a), c = prev(a);
  const OneForm lp = lambda_plus(f, p, a);
  Tensor ab = slot_act(f, b, 0, p.alp(b)) + slot_act(f, c, 0, p.alp(c));
  Tensor mixed = slot_act(f, b, 0, slot_act(f, c, 1, ab)) - slot_act(f, c, 0, slot_act(f, b, 1, ab));
  return (b_mu_omega_c(f, a, lp) - c_mu_omega_b(f, a, lp) + mixed) * 0.5;
}

Tensor predict_w4(const QuatFrame& f, const TorsionParams& p, Structure a) {
  const OneForm mu = lambda_plus(f, p, a) + eta_plus(f, p, a);  // k4 = 1
  Tensor out = ei_wedge(nullptr, act(f, a, mu)) + ei_wedge(&f.matrix(a), mu);
  out *= 1.0 / (2.0 * (2.0 * f.n() - 1.0));
  return out;
}

EParts predict_E_parts(const QuatFrame& f, const TorsionParams& p, Structure a) {
  const GHConstants k = GHConstants::for_n(f.n());
  const Structure b = next(a), c = prev(a);
  const double n = f.n();
  const OneForm lm = lambda_minus(f, p, a), em = eta_minus(f, p, a);
  const OneForm lp = lambda_plus(f, p, a), ep = eta_plus(f, p, a);
  const Eigen::MatrixXd& mb = f.matrix(b);
  const Eigen::MatrixXd& mc = f.matrix(c);
  EParts out;

  // 2 W12^E
  {
    OneForm mu = lm + k.k12 * em;
    Tensor t = c_mu_omega_b(f, a, mu) + b_mu_omega_c(f, a, mu);
    t -= (ei_wedge(&mb, act(f, c, em)) + ei_wedge(&mc, act(f, b, em))) * (n * k.k12);
    out.w12 = t * 0.5;
  }
  // 6 W1^E
  {
    OneForm mu = lm + k.k1 * em;
    Tensor t = wedge12(act(f, c, mu), kaehler_form(f, b)) + wedge12(act(f, b, mu), kaehler_form(f, c));
    out.w1 = t * (1.0 / 6.0);
  }
  // 6 W2^E
  {
    OneForm mu = lm + k.k2 * em;
    Tensor t = (c_mu_omega_b(f, a, mu) + b_mu_omega_c(f, a, mu)) * 2.0;
    t += ei_wedge(&mb, act(f, c, mu)) + ei_wedge(&mc, act(f, b, mu));
    out.w2 = t * (1.0 / 6.0);
  }
  // 2 W3^E
  {
    OneForm mu = lp + k.k3 * ep;
    Tensor t = b_mu_omega_c(f, a, mu) - c_mu_omega_b(f, a, mu);
    t -= (ei_wedge(nullptr, act(f, a, mu)) + ei_wedge(&f.matrix(a), mu)) * (1.0 / (2.0 * n - 1.0));
    out.w3 = t * 0.5;
  }
  return out;
}

}  // namespace quatlas
