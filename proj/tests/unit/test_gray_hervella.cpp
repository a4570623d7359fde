#include <doctest.h>

#include "quatlas/gray_hervella.hpp"

using namespace quatlas;

TEST_SUITE("gray_hervella") {
  TEST_CASE("projector ranks and algebra") {
    const std::array<int, 4> r1{0, 4, 0, 4}, r2{8, 40, 40, 8};
    for (Structure a : kStructures) {
      GHProjectorSet p1(QuatFrame(1), a), p2(QuatFrame(2), a);
      CHECK(p1.ranks() == r1);
      CHECK(p2.ranks() == r2);
      CHECK(p1.algebra_residual() < 1e-12);
      CHECK(p2.algebra_residual() < 1e-12);
      CHECK(p2.space_dim() == 8 * 12);
    }
  }

  TEST_CASE("constants") {
    GHConstants c = GHConstants::for_n(2);
    CHECK(c.k1 == doctest::Approx(-1.0));
    CHECK(c.k2 == doctest::Approx(0.2));
    CHECK(c.k12 == doctest::Approx(-0.2));
    CHECK(c.k3 == doctest::Approx(c.k12));
    CHECK(c.k4 == doctest::Approx(1.0));
    CHECK_THROWS(GHConstants::for_n(1));
  }

  TEST_CASE("closed-form components agree with the projectors") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(23);
    TorsionParams p = ps.random(rng);
    TorsionTriple t = reconstruct(f, p);
    for (Structure a : kStructures) {
      GHProjectorSet g(f, a);
      const Tensor& x = t[a];
      CHECK(max_abs_diff(predict_w1w2(f, p, a), g.apply(1, x) + g.apply(2, x)) < 1e-12);
      CHECK(max_abs_diff(predict_w3w4(f, p, a), g.apply(3, x) + g.apply(4, x)) < 1e-12);
      CHECK(max_abs_diff(predict_w4(f, p, a), g.apply(4, x)) < 1e-12);
      CHECK(max_abs_diff(w4_formula(f, a, x), g.apply(4, x)) < 1e-12);
      CHECK(max_abs_diff(w12_part(f, a, x), g.apply(1, x) + g.apply(2, x)) < 1e-12);
      CHECK(gh_type(g, x) == 0xF);
    }
  }

  TEST_CASE("W1 is the (3,0)+(0,3) part of d omega") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(29);
    TorsionTriple t = reconstruct(f, ps.random(rng));
    for (Structure a : kStructures) {
      GHProjectorSet g(f, a);
      Tensor w1 = g.apply(1, t[a]);
      // W1 is totally skew, so its exterior derivative is 3 w1
      CHECK(max_abs_diff(bidegree_30(f, a, exterior_derivative(t[a])), exterior_derivative(w1)) < 1e-12);
    }
  }

  TEST_CASE("Lee form of a pure W4 tensor reproduces it") {
    QuatFrame f(2);
    TorsionParams p = TorsionParams::zero(f);
    p.lambda[1] = OneForm::Unit(8, 3);  // only a lambda: mixes W2 and W4 for I
    TorsionTriple t = reconstruct(f, p);
    GHProjectorSet g(f, Structure::I);
    Tensor w4 = g.apply(4, t[Structure::I]);
    OneForm theta = lee_form(f, t[Structure::I], Structure::I);
    CHECK((lee_form(f, w4, Structure::I) - theta).norm() < 1e-12);
    CHECK(gh_type(g, w4) == 8);
    CHECK(gh_type(g, Tensor(8, 3)) == 0);
  }

  TEST_CASE("lambda/eta plus and minus combinations") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(31);
    TorsionParams p = ps.random(rng);
    TorsionTriple t = reconstruct(f, p);
    for (Structure a : kStructures) {
      // A d* omega_A = lambda+ + eta+
      OneForm lhs = act(f, a, coderivative(t[a]));
      CHECK((lhs - lambda_plus(f, p, a) - eta_plus(f, p, a)).norm() < 1e-12);
      CHECK((lambda_plus(f, p, a) - lambda_minus(f, p, a)).norm() > 0.0);
      CHECK(eta_minus(f, p, a).size() == 8);
    }
  }
}
