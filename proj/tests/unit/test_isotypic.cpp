#include <doctest.h>

#include "quatlas/isotypic.hpp"

using namespace quatlas;

TEST_SUITE("isotypic") {
  TEST_CASE("Lie algebra bases") {
    for (int n : {1, 2, 3}) {
      QuatFrame f(n);
      LieAlgebraBasis spn = spn_basis(f), sp1 = sp1_basis(f);
      CHECK(int(spn.elements.size()) == n * (2 * n + 1));
      CHECK(sp1.elements.size() == 3);
      CHECK(spn.closure_residual() < 1e-12);
      CHECK(sp1.closure_residual() < 1e-12);
      for (const auto& x : spn.elements)
        for (const auto& y : sp1.elements) CHECK((x * y - y * x).norm() < 1e-12);
    }
  }

  TEST_CASE("alpha decomposition, n = 2 and n = 3") {
    struct Case {
      int n, l3, k, e;
    };
    for (Case c : {Case{2, 0, 32, 8}, Case{3, 28, 128, 12}}) {
      ParamSpace ps{QuatFrame(c.n)};
      IsotypicDecomposition iso = alpha_isotypic(ps);
      auto dim = [&](const char* l) { return iso.find(l) ? iso.find(l)->dim() : 0; };
      CHECK(dim(kLambda3) == c.l3);
      CHECK(dim(kKMod) == c.k);
      CHECK(dim(kEMod) == c.e);
      CHECK(iso.total_dim() == ps.alpha_dim());
      CHECK(iso.algebra_residual(ps.alpha_dim()) < 1e-10);
      AlphaModuleDims d = alpha_module_dims(c.n);
      CHECK(d.lambda3 == c.l3);
    }
  }

  TEST_CASE("Casimir eigenvalues at n = 2") {
    ParamSpace ps{QuatFrame(2)};
    IsotypicDecomposition iso = alpha_isotypic(ps);
    CHECK(iso.find(kKMod)->eigenvalue == doctest::Approx(-3.75));
    CHECK(iso.find(kEMod)->eigenvalue == doctest::Approx(-1.25));
  }

  TEST_CASE("components of an alpha add up") {
    QuatFrame f(3);
    ParamSpace ps(f);
    IsotypicDecomposition iso = alpha_isotypic(ps);
    std::mt19937_64 rng(2);
    TorsionParams p = ps.random(rng);
    AlphaComponents c = alpha_components(ps, iso, p.alpha[0]);
    CHECK(max_abs_diff(c.lambda3 + c.k + c.e, p.alpha[0]) < 1e-12);
    CHECK(std::abs(tensor_inner(c.k, c.e)) < 1e-12);
    CHECK(max_abs_diff(c.e, alpha_E_part(f, p.alpha[0])) < 1e-12);
  }

  TEST_CASE("clustering refuses an ambiguous gap") {
    Eigen::MatrixXd m = Eigen::Vector3d(-1.0, -1.0 + 1e-5, -2.0).asDiagonal();
    CHECK_THROWS_AS(cluster_casimir(m), std::runtime_error);
    Eigen::MatrixXd ok = Eigen::Vector3d(-1.0, -1.0, -2.0).asDiagonal();
    CHECK(cluster_casimir(ok).components.size() == 2);
  }

  TEST_CASE("non-invariant subspace is rejected") {
    QuatFrame f(1);
    SubspaceBasis b;
    b.columns = Eigen::VectorXd::Unit(16, 1);
    CHECK_THROWS_AS(casimir(sp1_basis(f), b, 4, 2), std::invalid_argument);
  }

  TEST_CASE("E-part projector is sp(n) equivariant") {
    QuatFrame f(2);
    ParamSpace ps(f);
    IsotypicDecomposition iso = alpha_isotypic(ps);
    SubspaceBasis space = ps.alpha_basis();
    Eigen::MatrixXd pe = iso.find(kEMod)->projector();
    CHECK(equivariance_residual(spn_basis(f), space, f.dim(), 3, pe) < 1e-10);
  }
}
