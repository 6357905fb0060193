#include "sepkit/random.hpp"

#include <vector>

#include "sepkit/tensor.hpp"

namespace sepkit {

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) g(r, c) = gaussian(rng);
  return g;
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

ComplexVector random_unit_vector(int d, Rng& rng) {
  ComplexVector v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = gaussian(rng);
  } while (v.norm() < 1e-8);
  v.normalize();
  return v;
}

ProductKet random_product_ket(const DimensionSpec& dims, Rng& rng) {
  std::vector<ComplexVector> f;
  f.reserve(dims.count());
  for (int k = 0; k < dims.count(); ++k) f.push_back(random_unit_vector(dims.factor(k), rng));
  return ProductKet(dims, std::move(f));
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(n, n, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex rk = r(k, k);
    if (std::abs(rk) > 0) q.col(k) *= rk / std::abs(rk);
  }
  return q;
}

ComplexMatrix random_local_unitary(const DimensionSpec& dims, Rng& rng) {
  std::vector<ComplexMatrix> us;
  for (int k = 0; k < dims.count(); ++k) us.push_back(random_unitary(dims.factor(k), rng));
  return tensor_product<double>(us);
}

Density random_density(const DimensionSpec& dims, Rng& rng) {
  const ComplexMatrix g = ginibre(dims.total(), dims.total(), rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return Density(dims, hermitize(m));
}

ComplexMatrix random_hermitian(int n, Rng& rng) {
  return hermitize(ginibre(n, n, rng));
}

}  // namespace sepkit
