#include <doctest.h>

#include "sepkit/checks/independent.hpp"
#include "sepkit/ppt.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"
#include "support.hpp"

using namespace sepkit;

TEST_CASE("isotropic qubit pairs") {
  const PptReport half = ppt_verdict(isotropic(2, 0.5));
  CHECK(half.verdict == PptVerdict::Entangled);
  REQUIRE(half.min_eigenvalues.size() == 2);
  CHECK(half.min_eigenvalues[1] == doctest::Approx(-0.125).epsilon(1e-12));
  const PptReport third = ppt_verdict(isotropic(2, 1.0 / 3.0));
  CHECK(third.verdict == PptVerdict::Separable);
  CHECK(std::abs(third.min_eigenvalues[1]) <= 1e-12);
}

TEST_CASE("minimum eigenvalues agree with the Jacobi reference") {
  Rng rng = make_rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const DimensionSpec dims = test::random_dims(rng);
    const Density rho = random_density(dims, rng);
    const PptReport r = ppt_verdict(rho);
    const std::vector<int> f(dims.factors().begin(), dims.factors().end());
    for (int k = 0; k < dims.count(); ++k) {
      const double ref = checks::jacobi_min_eigenvalue(checks::brute_partial_transpose(rho.matrix(), f, k));
      CHECK(r.min_eigenvalues[k] == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("dims rule for conclusive positivity") {
  CHECK(ppt_verdict(maximally_mixed(DimensionSpec{2, 3})).verdict == PptVerdict::Separable);
  CHECK(ppt_verdict(maximally_mixed(DimensionSpec{3, 2})).verdict == PptVerdict::Separable);
  CHECK(ppt_verdict(maximally_mixed(DimensionSpec{3, 3})).verdict == PptVerdict::PptIndeterminate);
  CHECK(ppt_verdict(maximally_mixed(DimensionSpec{3})).verdict == PptVerdict::Separable);
  const Density weak_ghz = mix(0.1, ghz(3), maximally_mixed(DimensionSpec::uniform(2, 3)));
  CHECK(ppt_verdict(weak_ghz).verdict == PptVerdict::PptIndeterminate);
  CHECK(ppt_verdict(ghz(3)).verdict == PptVerdict::Entangled);
}

TEST_CASE("thread count does not change the report") {
  Rng rng = make_rng(32);
  const Density rho = random_density(DimensionSpec{2, 2, 3}, rng);
  const PptReport a = ppt_verdict(rho, 1e-10, 1), b = ppt_verdict(rho, 1e-10, 3);
  CHECK(a.min_eigenvalues == b.min_eigenvalues);
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("property: verdict and partial-transpose spectra are local-unitary invariant") {
  Rng rng = make_rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const DimensionSpec dims = test::random_dims(rng);
    const Density rho = random_density(dims, rng);
    const ComplexMatrix u = random_local_unitary(dims, rng);
    const Density rotated(dims, hermitize(ComplexMatrix(u * rho.matrix() * u.adjoint())));
    const PptReport a = ppt_verdict(rho), b = ppt_verdict(rotated);
    CHECK(a.verdict == b.verdict);
    for (int k = 0; k < dims.count(); ++k) {
      const auto ea = spectral(partial_transpose(rho, k)).eigenvalues;
      const auto eb = spectral(partial_transpose(rotated, k)).eigenvalues;
      CHECK((ea - eb).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("property: the isotropic verdict flips at s = 1/3") {
  double lo = 0, hi = 1;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ppt_verdict(isotropic(2, mid)).verdict == PptVerdict::Separable ? lo : hi) = mid;
  }
  CHECK(std::abs(lo - 1.0 / 3.0) <= 1e-9);
  CHECK(std::abs(hi - 1.0 / 3.0) <= 1e-9);
}
