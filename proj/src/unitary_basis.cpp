#include "sepkit/unitary_basis.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <mutex>
#include <shared_mutex>

#include "sepkit/tensor.hpp"

namespace sepkit {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct FactorEigen {
  Complex eigenvalue;
  ComplexVector vector;
};

double phase_in_turn(Complex z) {
  double p = std::arg(z);
  if (p < 0) p += kTwoPi;
  if (p > kTwoPi - 1e-9) p = 0;
  return p;
}

// Orthonormal eigenbasis of a single-factor Weyl operator. The operator is
// normal, so its complex Schur form is diagonal and the Schur vectors are
// eigenvectors even inside degenerate eigenspaces.
std::vector<FactorEigen> factor_eigensystem(const ComplexMatrix& u) {
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();
  std::vector<FactorEigen> out;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    Complex lambda = t(i, i);
    lambda /= std::abs(lambda);
    ComplexVector v = q.col(i);
    v.normalize();
    fix_phase(v.col(0));
    out.push_back({lambda, std::move(v)});
  }
  std::stable_sort(out.begin(), out.end(), [](const FactorEigen& a, const FactorEigen& b) {
    return phase_in_turn(a.eigenvalue) < phase_in_turn(b.eigenvalue) - 1e-12;
  });
  return out;
}

// Advances a mixed-radix counter; returns false on wrap-around.
bool increment(std::vector<int>& digits, std::span<const int> radix) {
  for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace

ComplexMatrix weyl_operator(int d, int shift, int clock) {
  if (d < 2) throw DimensionError("weyl_operator: d must be >= 2");
  const double w = kTwoPi / d;
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1;
    z(j, j) = std::polar(1.0, w * j);
  }
  ComplexMatrix out = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < ((shift % d) + d) % d; ++i) out = x * out;
  for (int i = 0; i < ((clock % d) + d) % d; ++i) out = out * z;
  return out;
}

UnitaryBasis::UnitaryBasis(DimensionSpec dims) : dims_(std::move(dims)) {
  const int n = dims_.count();
  const auto radix = dims_.factors();

  // Per-factor operators and eigensystems, indexed [factor][shift][clock].
  std::vector<std::vector<std::vector<ComplexMatrix>>> ops(n);
  std::vector<std::vector<std::vector<std::vector<FactorEigen>>>> eig(n);
  for (int f = 0; f < n; ++f) {
    const int d = radix[f];
    ops[f].assign(d, std::vector<ComplexMatrix>(d));
    eig[f].assign(d, std::vector<std::vector<FactorEigen>>(d));
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        ops[f][j][k] = weyl_operator(d, j, k);
        eig[f][j][k] = factor_eigensystem(ops[f][j][k]);
      }
  }

  std::vector<int> shift(n, 0);
  do {
    std::vector<int> clock(n, 0);
    do {
      UnitaryBasisElement el;
      el.index = {shift, clock};
      std::vector<ComplexMatrix> parts;
      for (int f = 0; f < n; ++f) parts.push_back(ops[f][shift[f]][clock[f]]);
      el.matrix = tensor_product<double>(parts);

      std::vector<int> pick(n, 0);
      do {
        Complex lambda = 1;
        std::vector<ComplexVector> kets;
        for (int f = 0; f < n; ++f) {
          const FactorEigen& fe = eig[f][shift[f]][clock[f]][pick[f]];
          lambda *= fe.eigenvalue;
          kets.push_back(fe.vector);
        }
        el.projections.push_back({lambda, ProductKet(dims_, std::move(kets))});
      } while (increment(pick, radix));

      elements_.push_back(std::move(el));
    } while (increment(clock, radix));
  } while (increment(shift, radix));
}

UnitaryBasis build_basis(const DimensionSpec& dims) { return UnitaryBasis(dims); }

std::shared_ptr<const UnitaryBasis> cached_basis(const DimensionSpec& dims) {
  static std::shared_mutex mutex;
  static std::map<DimensionSpec, std::shared_ptr<const UnitaryBasis>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(dims); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const UnitaryBasis>(dims);
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(dims, std::move(built));
  return it->second;
}

CoefficientVector coefficients(const Density& rho, const UnitaryBasis& basis) {
  if (rho.dims() != basis.dims()) throw DimensionError("coefficients: basis built for other dims");
  CoefficientVector out;
  out.indices.reserve(basis.size());
  out.values.reserve(basis.size());
  for (const auto& el : basis) {
    // Tr(S^dagger rho) = sum_{jk} conj(S_jk) rho_jk
    const Complex s = el.matrix.conjugate().cwiseProduct(rho.matrix()).sum();
    out.indices.push_back(el.index);
    out.values.push_back(s);
    if (!el.index.is_identity()) out.off_identity_l1 += std::abs(s);
  }
  return out;
}

CoefficientVector coefficients(const Density& rho) { return coefficients(rho, *cached_basis(rho.dims())); }

ComplexMatrix reconstruct(const CoefficientVector& c, const UnitaryBasis& basis) {
  if (c.values.size() != basis.size()) throw DimensionError("reconstruct: coefficient count mismatch");
  const int n = basis.dims().total();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 0; a < basis.size(); ++a) out += c.values[a] * basis[a].matrix;
  return out / double(n);
}

Prop41Certificate prop41_certify(const Density& rho, double slack) {
  const double l1 = coefficients(rho).off_identity_l1;
  return {l1 <= 1.0 + slack ? CertificateVerdict::CertifiedSeparable : CertificateVerdict::Inconclusive, l1};
}

std::vector<DecompositionTerm> prop41_decompose(const Density& rho) {
  const auto basis = cached_basis(rho.dims());
  const CoefficientVector c = coefficients(rho, *basis);
  if (c.off_identity_l1 > 1.0 + 1e-12) {
    throw PreconditionError("prop41_decompose: off-identity l1 norm " + std::to_string(c.off_identity_l1) +
                            " exceeds one");
  }
  const double n = rho.dims().total();
  std::vector<DecompositionTerm> terms;
  const double mixed_weight = std::max(0.0, 1.0 - c.off_identity_l1);
  if (mixed_weight > 0) terms.push_back({mixed_weight, MaximallyMixed{}});
  for (std::size_t a = 0; a < basis->size(); ++a) {
    const auto& el = (*basis)[a];
    const double mag = std::abs(c.values[a]);
    if (el.index.is_identity() || mag <= 1e-14) continue;
    for (const auto& p : el.projections) {
      const double w = (mag + std::real(c.values[a] * p.eigenvalue)) / n;
      if (w > 1e-15) terms.push_back({w, p.ket});
    }
  }
  return terms;
}

ComplexMatrix assemble(const std::vector<DecompositionTerm>& terms, const DimensionSpec& dims) {
  const int n = dims.total();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& t : terms) {
    if (std::holds_alternative<MaximallyMixed>(t.component)) {
      out += (t.weight / n) * ComplexMatrix::Identity(n, n);
    } else {
      out += t.weight * std::get<ProductKet>(t.component).projector();
    }
  }
  return out;
}

bool ball_certify(const DimensionSpec& dims, double eps) {
  const double n = dims.total();
  return eps >= 0 && eps < 1.0 / (n * n - 1.0);
}

bool ball_certify(double eps, const Density& sigma) { return ball_certify(sigma.dims(), eps); }

double eigen_certify_threshold(int n) {
  const double nn = n;
  const double t = nn / (nn * nn - 2.0);
  return 1.0 / (nn + t);
}

bool eigen_certify(const Density& rho) {
  return min_eigenvalue(rho) >= eigen_certify_threshold(rho.dims().total());
}

}  // namespace sepkit
