#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "sepkit/types.hpp"

namespace sepkit {

/// Label (j, k) of a basis element: per-factor shift and clock exponents.
struct BasisIndex {
  std::vector<int> shift;  ///< j
  std::vector<int> clock;  ///< k

  bool is_identity() const {
    for (int x : shift)
      if (x) return false;
    for (int x : clock)
      if (x) return false;
    return true;
  }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

struct SpectralProjection {
  Complex eigenvalue;  ///< unit modulus
  ProductKet ket;      ///< rank-one separable eigenprojection
};

/// S_a = (x)_i X^{j_i} Z^{k_i}, with X the cyclic shift and Z the clock
/// diag(1, w, w^2, ...), w = exp(2 pi i / d).
struct UnitaryBasisElement {
  BasisIndex index;
  ComplexMatrix matrix;
  std::vector<SpectralProjection> projections;
};

/// Orthogonal unitary basis of N x N matrices: S_e = I and
/// Tr(S_a^dagger S_b) = N delta(a, b). Element 0 is the identity.
class UnitaryBasis {
 public:
  explicit UnitaryBasis(DimensionSpec dims);

  const DimensionSpec& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const UnitaryBasisElement& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  DimensionSpec dims_;
  std::vector<UnitaryBasisElement> elements_;
};

/// Single-factor X^shift Z^clock on C^d.
ComplexMatrix weyl_operator(int d, int shift, int clock);

UnitaryBasis build_basis(const DimensionSpec& dims);

/// Shared read-only basis per dimension spec, built on first use.
std::shared_ptr<const UnitaryBasis> cached_basis(const DimensionSpec& dims);

struct CoefficientVector {
  std::vector<BasisIndex> indices;
  std::vector<Complex> values;  ///< s_a = Tr(S_a^dagger rho)
  double off_identity_l1 = 0;   ///< sum_{a != e} |s_a|
};

CoefficientVector coefficients(const Density& rho, const UnitaryBasis& basis);
CoefficientVector coefficients(const Density& rho);

/// (1/N) sum_a s_a S_a
ComplexMatrix reconstruct(const CoefficientVector& c, const UnitaryBasis& basis);

enum class CertificateVerdict { CertifiedSeparable, Inconclusive };

struct Prop41Certificate {
  CertificateVerdict verdict;
  double off_identity_l1;
};

/// Separable whenever the off-identity coefficients have l1 norm at most one.
Prop41Certificate prop41_certify(const Density& rho, double slack = 1e-12);

struct MaximallyMixed {};

struct DecompositionTerm {
  double weight;
  std::variant<MaximallyMixed, ProductKet> component;
};

/// Explicit separable decomposition
///   rho = (1 - l1) D0 + sum_{a != e} sum_k |s_a| (1 + cos theta_{a,k}) / N P_{a,k}
/// with |s_a| cos theta_{a,k} = Re(s_a lambda_{a,k}). Throws PreconditionError
/// when the l1 certificate does not hold.
std::vector<DecompositionTerm> prop41_decompose(const Density& rho);

/// Weighted sum of the decomposition's components.
ComplexMatrix assemble(const std::vector<DecompositionTerm>& terms, const DimensionSpec& dims);

/// (1 - eps) D0 + eps sigma is certified separable when eps < 1 / (N^2 - 1).
bool ball_certify(const DimensionSpec& dims, double eps);
bool ball_certify(double eps, const Density& sigma);

/// Separable whenever lambda_min >= 1 / (N + t), t = N / (N^2 - 2).
bool eigen_certify(const Density& rho);
double eigen_certify_threshold(int n);

}  // namespace sepkit
