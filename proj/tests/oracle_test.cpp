#include <doctest.h>

#include "sepkit/closed_forms.hpp"
#include "sepkit/oracle.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"
#include "sepkit/unitary_basis.hpp"
#include "support.hpp"

using namespace sepkit;
using sepkit::test::max_abs_diff;

namespace {

void check_invariants(const Density& rho, const OracleResult& r, double tolerance) {
  CHECK(r.distance == doctest::Approx(frobenius_distance(rho, r.tau)).epsilon(1e-12));
  double total = 0;
  ComplexMatrix sum = ComplexMatrix::Zero(rho.size(), rho.size());
  for (const Atom& a : r.atoms) {
    CHECK(a.weight >= 0);
    total += a.weight;
    sum += a.weight * a.ket.projector();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs_diff(sum, r.tau.matrix()) <= 1e-10);
  if (r.converged) CHECK(r.gap <= tolerance);
}

}  // namespace

TEST_CASE("product-state search on simple objectives") {
  Rng rng = make_rng(71);
  SUBCASE("diagonal objective picks the largest entry") {
    ComplexMatrix h = ComplexMatrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) h(i, i) = i == 4 ? 2.0 : 0.1 * i;
    const ProductStateResult r = best_product_state(h, DimensionSpec{2, 3}, 8, 1);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::norm(r.ket.ket()(4)) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("maximally entangled overlap is 1/d") {
    for (int d = 2; d <= 4; ++d) {
      const ProductStateResult r = best_product_state(max_entangled(d).matrix(), DimensionSpec{d, d}, 8, 2);
      CHECK(r.value == doctest::Approx(1.0 / d).epsilon(1e-10));
    }
  }
  SUBCASE("value is the expectation of the returned ket") {
    const ComplexMatrix h = random_hermitian(8, rng);
    const ProductStateResult r = best_product_state(h, DimensionSpec{2, 2, 2}, 8, 3);
    const ComplexVector v = r.ket.ket();
    CHECK(r.value == doctest::Approx(std::real(v.dot(h * v))).epsilon(1e-12));
    const ProductStateResult warm = best_product_state(h, DimensionSpec{2, 2, 2}, 0, 3, &r.ket);
    CHECK(warm.value >= r.value - 1e-12);
  }
  SUBCASE("thread count does not change the result") {
    const ComplexMatrix h = random_hermitian(9, rng);
    const auto a = best_product_state(h, DimensionSpec{3, 3}, 8, 4, nullptr, 1);
    const auto b = best_product_state(h, DimensionSpec{3, 3}, 8, 4, nullptr, 4);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("the maximally mixed state stops at iteration zero") {
  const Density d0 = maximally_mixed(DimensionSpec{2, 3});
  const OracleResult r = gilbert_nearest(d0);
  CHECK(r.iterations == 0);
  CHECK(r.converged);
  CHECK(r.distance <= 1e-15);
  CHECK(r.atoms.size() == 6);
  check_invariants(d0, r, 1e-6);
}

TEST_CASE("oracle reproduces closed-form measures") {
  for (int d = 2; d <= 4; ++d) {
    const NearestResult nr = nearest_max_entangled(d);
    OracleOptions o;
    o.seed = d;
    o.record_history = true;
    const OracleResult r = gilbert_nearest(nr.rho, o);
    CHECK(r.converged);
    CHECK(std::abs(r.distance - nr.measure) <= 1e-3);
    CHECK(r.distance >= nr.measure - 1e-9);
    // distance^2 - m^2 <= 2 gap
    CHECK(r.distance * r.distance - nr.measure * nr.measure <= 2 * r.gap + 1e-12);
    check_invariants(nr.rho, r, o.tolerance);
    REQUIRE(r.history.size() == static_cast<std::size_t>(r.iterations));
    for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] <= r.history[i - 1] + 1e-12);
  }
  for (int n = 2; n <= 3; ++n) {
    const NearestResult g = ghz_nearest(n);
    const OracleResult r = gilbert_nearest(g.rho);
    CHECK(std::abs(r.distance - g.measure) <= 1e-3);
    check_invariants(g.rho, r, 1e-6);
  }
  CHECK(std::abs(gilbert_nearest(ghz(3)).distance - std::sqrt(12.0 / 13) / std::sqrt(2.0)) <= 1e-3);
}

TEST_CASE("converged results satisfy the sampled face inequality") {
  Rng rng = make_rng(72);
  for (int i = 0; i < 5; ++i) {
    const Density rho = random_density(DimensionSpec{2, 2}, rng);
    const OracleResult r = gilbert_nearest(rho, {.seed = 9});
    REQUIRE(r.converged);
    check_invariants(rho, r, 1e-6);
    const ComplexMatrix diff = rho.matrix() - r.tau.matrix();
    double worst = -1;
    for (int s = 0; s < 2000; ++s) {
      const ComplexMatrix pi = random_product_ket(rho.dims(), rng).projector();
      worst = std::max(worst, hs_inner(diff, ComplexMatrix(pi - r.tau.matrix())));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("oracle results are reproducible for a fixed seed") {
  Rng rng = make_rng(73);
  const Density rho = random_density(DimensionSpec{2, 3}, rng);
  OracleOptions o;
  o.seed = 123;
  const OracleResult a = gilbert_nearest(rho, o), b = gilbert_nearest(rho, o);
  CHECK(a.distance == b.distance);
  CHECK(a.iterations == b.iterations);
  o.threads = 3;
  const OracleResult c = gilbert_nearest(rho, o);
  CHECK(a.distance == c.distance);
  CHECK(a.seed == 123);
}

TEST_CASE("an exhausted budget is reported as not converged") {
  const Density rho = max_entangled(3);
  OracleOptions o;
  o.max_iterations = 2;
  const OracleResult r = gilbert_nearest(rho, o);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
  CHECK(r.gap > o.tolerance);
  check_invariants(rho, r, o.tolerance);
}

TEST_CASE("plain Frank-Wolfe steps still decrease the distance") {
  OracleOptions o;
  o.pairwise = false;
  o.fully_corrective_max = 0;
  o.corrective_steps = 0;
  o.max_iterations = 300;
  o.record_history = true;
  const NearestResult nr = nearest_max_entangled(2);
  const OracleResult r = gilbert_nearest(nr.rho, o);
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] <= r.history[i - 1] + 1e-12);
  CHECK(std::abs(r.distance - nr.measure) <= 1e-2);
  check_invariants(nr.rho, r, o.tolerance);
}

TEST_CASE("measure estimates") {
  SUBCASE("certified separable states") {
    Rng rng = make_rng(74);
    for (int i = 0; i < 5; ++i) {
      const Density rho = mix(0.2, random_density(DimensionSpec{2, 2}, rng), maximally_mixed(DimensionSpec{2, 2}));
      REQUIRE(prop41_certify(rho).verdict == CertificateVerdict::CertifiedSeparable);
      CHECK(measure_estimate(rho).upper <= 1e-3);
    }
  }
  SUBCASE("qubit rho_a across the region") {
    for (double a0sq : {0.5, 0.65, 0.8, 0.87}) {
      const AmplitudeVector a = AmplitudeVector::qubit(a0sq);
      const MeasureEstimate e = measure_estimate(rho_a(a), 10000, 1);
      CHECK(std::abs(e.upper - 2 * a[0] * a[1] / std::sqrt(3.0)) <= 1e-3);
      CHECK(e.upper == e.certificate.distance);
    }
  }
  SUBCASE("local unitary rotation") {
    Rng rng = make_rng(75);
    const Density r0 = max_entangled(2);
    const double base = measure_estimate(r0).upper;
    for (int i = 0; i < 3; ++i) {
      const ComplexMatrix u = random_local_unitary(r0.dims(), rng);
      const Density rotated(r0.dims(), hermitize(ComplexMatrix(u * r0.matrix() * u.adjoint())));
      CHECK(std::abs(measure_estimate(rotated, 10000, i).upper - base) <= 2e-3);
    }
  }
}

TEST_CASE("local dephasing keeps the diagonal") {
  const Density dep = dephase_local(max_entangled(2));
  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag(0, 0) = diag(3, 3) = 0.5;
  CHECK(max_abs_diff(dep.matrix(), diag) == 0.0);
  CHECK(measure_estimate(dep).upper <= 1e-9);

  const double s = 0.4;
  ComplexMatrix iso = ComplexMatrix::Zero(4, 4);
  iso.diagonal() << (1 + s) / 4, (1 - s) / 4, (1 - s) / 4, (1 + s) / 4;
  CHECK(max_abs_diff(dephase_local(isotropic(2, s)).matrix(), iso) <= 1e-16);
  const Density diagonal(DimensionSpec{2, 2}, iso);
  CHECK(max_abs_diff(dephase_local(diagonal).matrix(), iso) == 0.0);
}

TEST_CASE("property: dephasing does not increase the measure and the measure is convex") {
  Rng rng = make_rng(76);
  for (int i = 0; i < 10; ++i) {
    const Density a = random_density(DimensionSpec{2, 2}, rng);
    const Density b = random_density(DimensionSpec{2, 2}, rng);
    const double ea = measure_estimate(a, 10000, i).upper;
    const double eb = measure_estimate(b, 10000, i).upper;
    CHECK(measure_estimate(dephase_local(a), 10000, i).upper <= ea + 2e-3);
    for (double t : {0.25, 0.5, 0.75})
      CHECK(measure_estimate(mix(t, a, b), 10000, i).upper <= t * ea + (1 - t) * eb + 2e-3);
  }
}
