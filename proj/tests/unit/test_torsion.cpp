#include <doctest.h>

#include "quatlas/torsion.hpp"

using namespace quatlas;

TEST_SUITE("torsion") {
  TEST_CASE("alpha space dimensions") {
    CHECK(ParamSpace(QuatFrame(1)).alpha_dim() == 0);
    CHECK(ParamSpace(QuatFrame(2)).alpha_dim() == 40);
    CHECK(ParamSpace(QuatFrame(3)).alpha_dim() == 168);
    CHECK(ParamSpace(QuatFrame(3)).dim() == 540);
  }

  TEST_CASE("alpha basis elements satisfy the defining conditions") {
    QuatFrame f(2);
    ParamSpace ps(f);
    CHECK(ps.alpha_basis().orthonormality_error() < 1e-12);
    for (int c = 0; c < ps.alpha_dim(); ++c)
      CHECK(alpha_residual(f, ps.alpha_tensor(Eigen::VectorXd::Unit(ps.alpha_dim(), c))) < 1e-14);
  }

  TEST_CASE("reconstruction and extraction are inverse") {
    for (int n : {1, 2}) {
      QuatFrame f(n);
      ParamSpace ps(f);
      std::mt19937_64 rng(42 + n);
      for (int k = 0; k < 20; ++k) {
        TorsionParams p = ps.random(rng);
        TorsionTriple t = reconstruct(f, p);
        TorsionParams q = extract_params(f, t);
        CHECK((ps.to_vector(q) - ps.to_vector(p)).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK(check_relations(f, t).max() < 1e-12);
        for (Structure a : kStructures) {
          CHECK((extract_lambda_alt(f, t, a) - p.lam(a)).norm() < 1e-12);
          CHECK(max_abs_diff(extract_alpha_alt(f, t, a), p.alp(a)) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("zero parameters give zero torsion") {
    QuatFrame f(2);
    TorsionTriple t = reconstruct(f, TorsionParams::zero(f));
    for (const Tensor& x : t.nabla_omega) CHECK(x.max_abs() == 0.0);
  }

  TEST_CASE("inadmissible alpha is rejected") {
    QuatFrame f(2);
    TorsionParams p = TorsionParams::zero(f);
    p.alpha[0](0, 0, 1) = 1.0;  // not symmetric, not invariant
    CHECK(alpha_residual(f, p.alpha[0]) > 0.5);
    CHECK_THROWS_AS(reconstruct(f, p), std::invalid_argument);
  }

  TEST_CASE("relations detect a broken triple") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(9);
    TorsionTriple t = reconstruct(f, ps.random(rng));
    t.nabla_omega[1] *= 1.01;
    RelationReport r = check_relations(f, t);
    CHECK(r.skew[1] < 1e-12);
    CHECK(r.type20[1] < 1e-12);
    CHECK(r.max() > 1e-3);
    CHECK(!r.describe().empty());
  }

  TEST_CASE("eta and the E-part formula") {
    QuatFrame f(2);
    ParamSpace ps(f);
    std::mt19937_64 rng(17);
    TorsionParams p = ps.random(rng);
    for (const Tensor& a : p.alpha) {
      Tensor e = alpha_E_part(f, a);
      // the E-part carries the whole trace and is idempotent
      CHECK((extract_eta(e) - extract_eta(a)).norm() < 1e-12);
      CHECK(max_abs_diff(alpha_E_part(f, e), e) < 1e-12);
      CHECK(max_abs_diff(alpha_from_eta(f, extract_eta(a)), e) < 1e-12);
    }
    CHECK_THROWS_AS(alpha_from_eta(QuatFrame(1), OneForm::Zero(4)), std::domain_error);
  }

  TEST_CASE("parameter vector length is checked") {
    ParamSpace ps(QuatFrame(1));
    CHECK_THROWS_AS(ps.from_vector(Eigen::VectorXd::Zero(3)), std::invalid_argument);
  }
}
