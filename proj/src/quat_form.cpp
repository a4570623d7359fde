#include "quatlas/quat_form.hpp"

#include <cmath>
#include <stdexcept>

namespace quatlas {

std::string QuatType::digits() const {
  std::string s;
  s += char('0' + s3h);
  s += char('0' + h);
  return s;
}

Tensor fundamental_form(const QuatFrame& frame) {
  Tensor out(frame.dim(), 4);
  for (Structure a : kStructures) {
    Tensor w = kaehler_form(frame, a);
    out += wedge22(w, w);
  }
  return out;
}

Tensor nabla_Omega(const QuatFrame& frame, const TorsionTriple& t) {
  Tensor out(frame.dim(), 5);
  for (Structure a : kStructures) out += wedge22(t[a], kaehler_form(frame, a));
  return out * 2.0;
}

Tensor nabla_Omega(const QuatFrame& frame, const TorsionParams& p) {
  Tensor out(frame.dim(), 5);
  for (Structure a : kStructures) {
    const Structure b = next(a), c = prev(a);
    Tensor beta = slot_act(frame, b, 1, p.alp(c)) - slot_act(frame, c, 1, p.alp(b));
    out += wedge22(beta, kaehler_form(frame, a));
  }
  return out * 2.0;
}

OmegaSplit split_h_s3h(const QuatFrame& frame, const Tensor& d) {
  if (d.order() != 5) throw std::invalid_argument("split_h_s3h: order-5 tensor expected");
  Tensor x(frame.dim(), 5);
  for (Structure a : kStructures)
    x += alternate4(slot_act(frame, a, 0, slot_act(frame, a, 1, d)));
  x *= 4.0;
  return {(d * 4.0 - x) * (1.0 / 6.0), (d * 2.0 + x) * (1.0 / 6.0)};
}

QuatDeterminants quat_determinants(const QuatFrame& f, const std::array<Tensor, 3>& al) {
  Tensor i1 = slot_act(f, Structure::I, 0, al[0]);
  Tensor j1 = slot_act(f, Structure::J, 0, al[1]);
  Tensor k1 = slot_act(f, Structure::K, 0, al[2]);
  return {i1 + j1 + k1, i1 - j1, j1 - k1};
}

QuatType quat_type(const ParamSpace& ps, const IsotypicDecomposition& iso,
                   const TorsionParams& p, double tol) {
  const QuatFrame& f = ps.frame();
  if (f.n() < 2)
    throw std::domain_error("quaternionic type is not determined by nabla Omega when n = 1");
  double total = 0.0;
  for (const Tensor& a : p.alpha) total += a.vec().squaredNorm();
  total = std::sqrt(total);
  QuatType q;
  if (total == 0.0) return q;
  std::array<AlphaComponents, 3> comps;
  for (int k = 0; k < 3; ++k) comps[k] = alpha_components(ps, iso, p.alpha[k]);
  struct Sel {
    std::uint8_t bit;
    Tensor AlphaComponents::*member;
  };
  for (Sel s : {Sel{4, &AlphaComponents::lambda3}, Sel{2, &AlphaComponents::k},
                Sel{1, &AlphaComponents::e}}) {
    std::array<Tensor, 3> v{comps[0].*s.member, comps[1].*s.member, comps[2].*s.member};
    QuatDeterminants d = quat_determinants(f, v);
    if (d.h.norm() > tol * total) q.h |= s.bit;
    if (std::hypot(d.s3h_first.norm(), d.s3h_second.norm()) > tol * total) q.s3h |= s.bit;
  }
  return q;
}

Tensor xi_tensor(const QuatFrame& f, const std::array<Tensor, 3>& beta) {
  Tensor out(f.dim(), 5);
  for (Structure a : kStructures) {
    const Structure b = next(a), c = prev(a);
    Tensor t = slot_act(f, c, 1, beta[index_of(b)]) - slot_act(f, b, 1, beta[index_of(c)]);
    out += wedge22(t, kaehler_form(f, a));
  }
  return out;
}

Tensor xi_contraction(const QuatFrame& f, const std::array<Tensor, 3>& beta) {
  const Tensor xi = xi_tensor(f, beta);
  const int N = f.dim();
  const Eigen::MatrixXd& mi = f.I();
  Tensor out(N, 3);
  // Xi(X,Y,Z,e_i,I e_i) = sum_j Xi(x,y,z,i,j) I(j,i)
  const std::size_t blk = std::size_t(N) * N;
  for (std::size_t o = 0; o < out.size(); ++o) {
    const double* p = xi.data() + o * blk;
    double s = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) s += p[i * N + j] * mi(j, i);
    out[o] = s;
  }
  return out;
}

double xi_contraction_check(const QuatFrame& f, const std::array<Tensor, 3>& beta) {
  Tensor lhs = xi_contraction(f, beta);
  // b_J(X, KY, Z) = -K_(2) b_J
  Tensor rhs = slot_act(f, Structure::J, 1, beta[2]) - slot_act(f, Structure::K, 1, beta[1]);
  rhs *= 4.0 * f.n();
  return max_abs_diff(lhs, rhs);
}

SubspaceBasis nabla_Omega_space(const ParamSpace& ps) {
  const QuatFrame& f = ps.frame();
  if (f.n() > 2)
    throw std::domain_error("the direct nabla Omega space is only built for n <= 2");
  const int da = ps.alpha_dim();
  const int N = f.dim();
  Eigen::MatrixXd img(Eigen::Index(N) * N * N * N * N, 3 * da);
  for (int col = 0; col < 3 * da; ++col) {
    TorsionParams p = TorsionParams::zero(f);
    Eigen::VectorXd e = Eigen::VectorXd::Unit(da, col % da);
    p.alpha[col / da] = ps.alpha_tensor(e);
    img.col(col) = nabla_Omega(f, p).vec();
  }
  SubspaceBasis b;
  b.columns = orthonormal_span(img, 1e-10);
  b.tolerance = 1e-10;
  return b;
}

}  // namespace quatlas
