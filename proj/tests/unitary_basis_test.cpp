#include <doctest.h>

#include <numbers>

#include "sepkit/checks/independent.hpp"
#include "sepkit/ppt.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"
#include "sepkit/unitary_basis.hpp"
#include "support.hpp"

using namespace sepkit;
using sepkit::test::max_abs_diff;

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_CASE("single qubit basis is I, Z, X, XZ") {
  const UnitaryBasis b = build_basis(DimensionSpec{2});
  REQUIRE(b.size() == 4);
  CHECK(b[0].index.is_identity());
  CHECK(max_abs_diff(b[0].matrix, ComplexMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs_diff(b[1].matrix, pauli_z()) < 1e-15);
  CHECK(max_abs_diff(b[2].matrix, pauli_x()) < 1e-15);
  CHECK(max_abs_diff(b[3].matrix, ComplexMatrix(pauli_x() * pauli_z())) < 1e-15);
}

TEST_CASE("qutrit Weyl operators satisfy X^3 = Z^3 = I") {
  const ComplexMatrix x = weyl_operator(3, 1, 0), z = weyl_operator(3, 0, 1);
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  CHECK(max_abs_diff(x * x * x, id) < 1e-14);
  CHECK(max_abs_diff(z * z * z, id) < 1e-14);
  // Z X = w X Z
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  CHECK(max_abs_diff(z * x, w * x * z) < 1e-14);
  CHECK(build_basis(DimensionSpec{3}).size() == 9);
}

TEST_CASE("basis elements are trace-orthogonal with separable spectral projections") {
  for (const DimensionSpec& dims : {DimensionSpec{2, 2}, DimensionSpec{3}, DimensionSpec{2, 3}, DimensionSpec{2, 2, 2}}) {
    const UnitaryBasis b = build_basis(dims);
    const int n = dims.total();
    REQUIRE(b.size() == static_cast<std::size_t>(n) * n);
    CHECK(b[0].index.is_identity());
    double ortho = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        const Complex t = (b[i].matrix.adjoint() * b[j].matrix).trace();
        ortho = std::max(ortho, std::abs(t - Complex(i == j ? n : 0)));
      }
    CHECK(ortho <= 1e-10);
    for (const auto& e : b) {
      ComplexMatrix sum = ComplexMatrix::Zero(n, n), rebuilt = ComplexMatrix::Zero(n, n);
      REQUIRE(e.projections.size() == static_cast<std::size_t>(n));
      for (const auto& p : e.projections) {
        CHECK(std::abs(std::abs(p.eigenvalue) - 1) <= 1e-12);
        const ComplexMatrix proj = p.ket.projector();
        sum += proj;
        rebuilt += p.eigenvalue * proj;
      }
      CHECK(max_abs_diff(sum, ComplexMatrix::Identity(n, n)) <= 1e-10);
      CHECK(max_abs_diff(rebuilt, e.matrix) <= 1e-10);
    }
  }
}

TEST_CASE("cached basis is shared and matches a fresh build") {
  const DimensionSpec dims{2, 3};
  const auto a = cached_basis(dims), b = cached_basis(dims);
  CHECK(a.get() == b.get());
  const UnitaryBasis fresh = build_basis(dims);
  for (std::size_t i = 0; i < fresh.size(); ++i) CHECK(max_abs_diff((*a)[i].matrix, fresh[i].matrix) == 0.0);
}

TEST_CASE("coefficients of reference states") {
  const DimensionSpec dims{2, 2};
  const auto d0 = coefficients(maximally_mixed(dims));
  CHECK(std::abs(d0.values[0] - Complex(1)) <= 1e-12);
  CHECK(d0.off_identity_l1 <= 1e-12);
  CHECK(coefficients(max_entangled(2)).off_identity_l1 == doctest::Approx(3.0).epsilon(1e-12));
  for (double s : {0.0, 0.1, 1.0 / 3.0, 0.7})
    CHECK(coefficients(isotropic(2, s)).off_identity_l1 == doctest::Approx(3 * s).epsilon(1e-12));
  const UnitaryBasis wrong = build_basis(DimensionSpec{4});
  CHECK_THROWS_AS(coefficients(max_entangled(2), wrong), DimensionError);
}

TEST_CASE("property: coefficient expansion round-trips for random densities") {
  Rng rng = make_rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const DimensionSpec dims = test::random_dims(rng);
    const Density rho = random_density(dims, rng);
    const auto basis = cached_basis(dims);
    const CoefficientVector c = coefficients(rho, *basis);
    CHECK(std::abs(c.values[0] - Complex(1)) <= 1e-12);
    for (const Complex& s : c.values) CHECK(std::abs(s) <= 1 + 1e-12);
    CHECK((reconstruct(c, *basis) - rho.matrix()).norm() <= 1e-10);
  }
}

TEST_CASE("property: l1 norm scales linearly along the segment to D0") {
  Rng rng = make_rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Density rho = random_density(DimensionSpec{2, 3}, rng);
    const double l1 = coefficients(rho).off_identity_l1;
    for (double s : {0.1, 0.5, 0.9})
      CHECK(coefficients(mix(s, rho, maximally_mixed(rho.dims()))).off_identity_l1 ==
            doctest::Approx(s * l1).epsilon(1e-12));
  }
}

TEST_CASE("l1 certificate on the isotropic family") {
  auto at = [](double s) { return prop41_certify(isotropic(2, s)); };
  CHECK(at(1.0 / 3.0).verdict == CertificateVerdict::CertifiedSeparable);
  CHECK(at(1.0 / 3.0).off_identity_l1 == doctest::Approx(1.0));
  CHECK(at(0.4).verdict == CertificateVerdict::Inconclusive);
  CHECK(at(0.4).off_identity_l1 == doctest::Approx(1.2));
  CHECK(prop41_certify(maximally_mixed(DimensionSpec{3, 2})).verdict == CertificateVerdict::CertifiedSeparable);
}

TEST_CASE("explicit decomposition") {
  SUBCASE("D0 is a single term") {
    const auto terms = prop41_decompose(maximally_mixed(DimensionSpec{2, 2}));
    REQUIRE(terms.size() == 1);
    CHECK(std::holds_alternative<MaximallyMixed>(terms[0].component));
    CHECK(terms[0].weight == doctest::Approx(1.0));
  }
  SUBCASE("rho(0.2) has D0 weight 0.4") {
    const auto terms = prop41_decompose(isotropic(2, 0.2));
    double d0_weight = 0;
    for (const auto& t : terms)
      if (std::holds_alternative<MaximallyMixed>(t.component)) d0_weight += t.weight;
    CHECK(d0_weight == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("rho(1/3) reconstructs") {
    const Density rho = isotropic(2, 1.0 / 3.0);
    const auto terms = prop41_decompose(rho);
    for (const auto& t : terms) CHECK(t.weight >= 0);
    CHECK(frobenius_distance(assemble(terms, rho.dims()), rho.matrix()) <= 1e-10);
  }
  SUBCASE("uncertified input is refused") {
    CHECK_THROWS_AS(prop41_decompose(isotropic(2, 0.4)), PreconditionError);
  }
}

TEST_CASE("property: certified decompositions are convex, reconstruct and pass PPT") {
  Rng rng = make_rng(23);
  int certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const DimensionSpec dims = test::random_dims(rng);
    const Density sigma = random_density(dims, rng);
    std::uniform_real_distribution<double> u(0, 0.6);
    const Density rho = mix(u(rng), sigma, maximally_mixed(dims));
    if (prop41_certify(rho).verdict != CertificateVerdict::CertifiedSeparable) continue;
    ++certified;
    const auto terms = prop41_decompose(rho);
    double total = 0;
    for (const auto& t : terms) {
      CHECK(t.weight >= 0);
      CHECK(t.weight <= 1);
      total += t.weight;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix sum = assemble(terms, dims);
    CHECK((sum - rho.matrix()).norm() <= 1e-9);
    CHECK(ppt_verdict(Density(dims, sum)).verdict != PptVerdict::Entangled);
  }
  CHECK(certified > 50);
}

TEST_CASE("ball certificate is strict at 1/(N^2 - 1)") {
  const DimensionSpec dims{2, 2};
  CHECK(ball_certify(dims, 1.0 / 16));
  CHECK_FALSE(ball_certify(dims, 1.0 / 15));
  CHECK(ball_certify(dims, 0.0));
  CHECK(ball_certify(1.0 / 16, max_entangled(2)));
}

TEST_CASE("eigenvalue certificate threshold") {
  CHECK(eigen_certify_threshold(4) == doctest::Approx(7.0 / 30.0).epsilon(1e-15));
  CHECK(eigen_certify(maximally_mixed(DimensionSpec{2, 2})));
  CHECK_FALSE(eigen_certify(max_entangled(2)));
  // (1 - s)/4 >= 7/30 iff s <= 1/15
  CHECK(eigen_certify(isotropic(2, 1.0 / 15 - 1e-9)));
  CHECK_FALSE(eigen_certify(isotropic(2, 1.0 / 15 + 1e-9)));
}

TEST_CASE("property: eigenvalue certificate implies the l1 certificate") {
  Rng rng = make_rng(24);
  int hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const DimensionSpec dims = test::random_dims(rng);
    std::uniform_real_distribution<double> u(0, 0.2);
    const Density rho = mix(u(rng), random_density(dims, rng), maximally_mixed(dims));
    if (!eigen_certify(rho)) continue;
    ++hits;
    CHECK(prop41_certify(rho).verdict == CertificateVerdict::CertifiedSeparable);
  }
  CHECK(hits > 50);
}
