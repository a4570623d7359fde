#include <doctest.h>

#include "quatlas/quat_form.hpp"

using namespace quatlas;

TEST_SUITE("quat_form") {
  TEST_CASE("nabla Omega: both routes agree and the split reassembles") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 5; ++k) {
      TorsionParams p = ps.random(rng);
      TorsionTriple t = reconstruct(f, p);
      Tensor d = nabla_Omega(f, t);
      CHECK(max_abs_diff(d, nabla_Omega(f, p)) < 1e-12);
      OmegaSplit s = split_h_s3h(f, d);
      CHECK(max_abs_diff(s.h + s.s3h, d) < 1e-12);
      // splitting a part again returns it
      CHECK(max_abs_diff(split_h_s3h(f, s.h).h, s.h) < 1e-12);
      CHECK(split_h_s3h(f, s.s3h).h.max_abs() < 1e-12);
    }
    CHECK_THROWS_AS(split_h_s3h(f, Tensor(8, 3)), std::invalid_argument);
  }

  TEST_CASE("lambdas do not enter nabla Omega") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(8);
    TorsionParams p = ps.random(rng);
    for (auto& a : p.alpha) a = Tensor(8, 3);
    CHECK(nabla_Omega(f, reconstruct(f, p)).max_abs() < 1e-12);
  }

  TEST_CASE("fundamental form is parallel for the zero triple and Sp(1)-invariant") {
    QuatFrame f(2);
    Tensor om = fundamental_form(f);
    for (Structure a : kStructures) {
      const Eigen::MatrixXd x = f.matrix(a);
      CHECK(derivation_act(x, om).max_abs() < 1e-12);
    }
  }

  TEST_CASE("quaternionic types") {
    QuatFrame f(2);
    ParamSpace ps(f);
    IsotypicDecomposition iso = alpha_isotypic(ps);
    CHECK(quat_type(ps, iso, TorsionParams::zero(f)) == QuatType{});
    std::mt19937_64 rng(12);
    QuatType q = quat_type(ps, iso, ps.random(rng));
    // no Lambda^3_0E in dimension eight
    CHECK(q.digits() == "33");
    QuatFrame f1(1);
    ParamSpace ps1(f1);
    CHECK_THROWS_AS(quat_type(ps1, IsotypicDecomposition{}, TorsionParams::zero(f1)), std::domain_error);
  }

  TEST_CASE("generic quaternionic type at n = 3") {
    QuatFrame f(3);
    ParamSpace ps(f);
    IsotypicDecomposition iso = alpha_isotypic(ps);
    std::mt19937_64 rng(13);
    CHECK(quat_type(ps, iso, ps.random(rng)).digits() == "77");
  }

  TEST_CASE("Xi contraction uses the coefficient 4n") {
    for (int n : {2, 3}) {
      QuatFrame f(n);
      ParamSpace ps(f);
      std::mt19937_64 rng(14);
      TorsionParams p = ps.random(rng);
      CHECK(xi_contraction_check(f, p.alpha) < 1e-10);
      std::array<Tensor, 3> zero{Tensor(f.dim(), 3), Tensor(f.dim(), 3), Tensor(f.dim(), 3)};
      CHECK(xi_contraction_check(f, zero) == 0.0);
    }
  }

  TEST_CASE("sp(1) Casimir split of the nabla Omega span, n = 2") {
    QuatFrame f(2);
    ParamSpace ps(f);
    SubspaceBasis space = nabla_Omega_space(ps);
    IsotypicDecomposition iso = sp1_split_S2H_types(f, space, 5);
    const int h = iso.find(kH)->dim(), s = iso.find(kS3H)->dim();
    CHECK(s == 2 * h);
    CHECK(s + h == space.dim());
    CHECK_THROWS_AS(nabla_Omega_space(ParamSpace(QuatFrame(3))), std::domain_error);
  }
}
