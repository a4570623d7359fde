#include <doctest.h>

#include "quatlas/frame.hpp"
#include "quatlas/linalg.hpp"

#include <random>

using namespace quatlas;

namespace {

Tensor random_tensor(int dim, int order, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Tensor t(dim, order);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = nd(rng);
  return t;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("quaternion relations hold for every n") {
    for (int n = 1; n <= 3; ++n) {
      QuatFrame f(n);
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(f.dim(), f.dim());
      CHECK((f.I() * f.J() - f.K()).norm() == 0.0);
      CHECK((f.J() * f.I() + f.K()).norm() == 0.0);
      for (Structure a : kStructures) {
        CHECK((f.matrix(a) * f.matrix(a) + id).norm() == 0.0);
        CHECK((f.matrix(a).transpose() * f.matrix(a) - id).norm() == 0.0);
      }
    }
    CHECK_THROWS_AS(QuatFrame(0), std::invalid_argument);
  }

  TEST_CASE("Kaehler form equals g(X, AY)") {
    QuatFrame f(2);
    for (Structure a : kStructures) {
      Tensor w = kaehler_form(f, a);
      CHECK(w.symmetry_residual({0, 1, PairSymmetry::skew}) == 0.0);
      CHECK((w.as_matrix() - f.matrix(a)).norm() == 0.0);
    }
  }

  TEST_CASE("slot action: one-form rule and slot range") {
    QuatFrame f(1);
    std::mt19937_64 rng(3);
    Tensor t = random_tensor(4, 1, rng);
    OneForm eta = t.vec();
    Tensor acted = slot_act(f, Structure::J, 0, t);
    CHECK((acted.vec() - act(f, Structure::J, eta)).norm() < 1e-15);
    CHECK_THROWS_AS(slot_act(f, Structure::I, 3, random_tensor(4, 3, rng)), std::out_of_range);
  }

  TEST_CASE("metric and Kaehler forms are invariant under their own structure") {
    QuatFrame f(2);
    Tensor g = metric_tensor(f);
    for (Structure a : kStructures) {
      CHECK(max_abs_diff(full_act(f, a, g), g) < 1e-15);
      Tensor w = kaehler_form(f, a);
      CHECK(max_abs_diff(full_act(f, a, w), w) < 1e-15);
      // the other two forms change sign
      CHECK(max_abs_diff(full_act(f, next(a), w), -w) < 1e-15);
    }
  }

  TEST_CASE("permute_slots composes like index relabeling") {
    std::mt19937_64 rng(5);
    Tensor b = random_tensor(3, 3, rng);
    Tensor p = permute_slots(b, {1, 2, 0});
    CHECK(p(0, 1, 2) == doctest::Approx(b(1, 2, 0)));
    CHECK(p(2, 0, 1) == doctest::Approx(b(0, 1, 2)));
    Tensor back = permute_slots(permute_slots(b, {1, 2, 0}), {2, 0, 1});
    CHECK(max_abs_diff(back, b) == 0.0);
  }

  TEST_CASE("declared symmetries are validated") {
    std::mt19937_64 rng(7);
    Tensor b = random_tensor(4, 2, rng);
    CHECK_THROWS_AS(b.declare({0, 1, PairSymmetry::symmetric}), std::invalid_argument);
    Tensor s = b + permute_slots(b, {1, 0});
    CHECK_NOTHROW(s.declare({0, 1, PairSymmetry::symmetric}));
    CHECK(s.symmetries().size() == 1);
    CHECK_THROWS_AS(tensor_inner(b, random_tensor(4, 3, rng)), std::invalid_argument);
  }

  TEST_CASE("alternation is a projection") {
    std::mt19937_64 rng(11);
    Tensor b = random_tensor(4, 4, rng);
    Tensor a = alternate4(b);
    CHECK(max_abs_diff(alternate4(a), a) < 1e-14);
    CHECK(a.symmetry_residual({0, 3, PairSymmetry::skew}) < 1e-14);
    Tensor a3 = alternate3(random_tensor(4, 3, rng));
    CHECK(max_abs_diff(alternate3(a3), a3) < 1e-14);
    CHECK_THROWS(alternate_trailing(random_tensor(4, 2, rng), 3));
  }

  TEST_CASE("wedge products") {
    QuatFrame f(1);
    OneForm e0 = OneForm::Unit(4, 0), e1 = OneForm::Unit(4, 1);
    Tensor w = wedge11(e0, e1);
    CHECK(w(0, 1) == 1.0);
    CHECK(w(1, 0) == -1.0);
    // omega ^ omega is a top form in dimension four: 2 * vol for each structure
    Tensor om = kaehler_form(f, Structure::I);
    Tensor ww = wedge22(om, om);
    CHECK(ww.size() == 256);
    CHECK(std::abs(ww.data()[0 * 64 + 1 * 16 + 2 * 4 + 3]) == doctest::Approx(2.0));
    CHECK(alternate4(ww).norm() == doctest::Approx(ww.norm()));
    Tensor sym = vee(e0, e1);
    CHECK_THROWS(wedge22(sym, om));
  }

  TEST_CASE("fundamental four-form has constant norm") {
    // regression value: |sum_A w_A ^ w_A|^2 over all index tuples, n = 1
    QuatFrame f(1);
    Tensor om(4, 4);
    for (Structure a : kStructures) om += wedge22(kaehler_form(f, a), kaehler_form(f, a));
    CHECK(om.norm() * om.norm() == doctest::Approx(864.0));
  }
}

TEST_SUITE("linalg") {
  TEST_CASE("signed tie nullspace") {
    // x0 = x1, x1 = -x2, x3 free, x4 = -x4 (forced zero)
    Eigen::MatrixXd b = signed_tie_nullspace(5, {{0, 1, 1}, {1, 2, -1}, {4, 4, -1}});
    CHECK(b.cols() == 2);
    CHECK((b.transpose() * b - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-15);
    for (int c = 0; c < b.cols(); ++c) {
      CHECK(b(0, c) == doctest::Approx(b(1, c)));
      CHECK(b(1, c) == doctest::Approx(-b(2, c)));
      CHECK(b(4, c) == 0.0);
    }
  }

  TEST_CASE("signed permutations are recognized") {
    QuatFrame f(1);
    SignedPermutation sp = as_signed_permutation(f.I());
    CHECK(sp.target.size() == 4);
    Eigen::MatrixXd m = Eigen::MatrixXd::Ones(2, 2);
    CHECK_THROWS(as_signed_permutation(m));
  }

  TEST_CASE("rank and kernel on a rank-deficient product") {
    // values-only bidiagonal SVD produced a spurious singular value on this kind
    // of operator; singular_values must not
    QuatFrame f(1);
    Eigen::MatrixXd op = operator_matrix(16, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
      Tensor t = Tensor::from_coefficients(4, 2, v);
      return (slot_act(f, Structure::J, 0, slot_act(f, Structure::K, 1, t)) +
              slot_act(f, Structure::K, 0, slot_act(f, Structure::J, 1, t))).vec();
    });
    CHECK(numeric_rank(op) == 8);
    Eigen::VectorXd s = singular_values(op);
    for (int i = 0; i < s.size(); ++i) CHECK((std::abs(s(i) - 2.0) < 1e-12 || s(i) < 1e-12));
    SubspaceBasis ker = kernel(op);
    CHECK(ker.dim() == 8);
    CHECK((op * ker.columns).norm() < 1e-12);
    CHECK(ker.orthonormality_error() < 1e-12);
  }

  TEST_CASE("psd kernel respects the external scale") {
    Eigen::MatrixXd g = Eigen::VectorXd::LinSpaced(4, 0.0, 3.0).asDiagonal();
    CHECK(psd_kernel(g, 1e-8).dim() == 1);
    CHECK(psd_kernel(g, 0.5, 4.0).dim() == 3);  // cut 2 keeps 0, 1, 2
    CHECK(lambda_max(g) == doctest::Approx(3.0));
  }
}
