#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "sepkit/types.hpp"

namespace sepkit {

// ---------------------------------------------------------------------------
// Hilbert-Schmidt geometry

/// Real inner product Tr(A^dagger B) on Hermitian matrices.
template <typename DA, typename DB>
typename DA::RealScalar hs_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("hs_inner: shape mismatch");
  return std::real(a.cwiseProduct(b.conjugate()).sum());
}

/// sqrt(Tr((A - B)^2)) for Hermitian A, B.
template <typename DA, typename DB>
typename DA::RealScalar frobenius_distance(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("frobenius_distance: shape mismatch");
  return (a - b).norm();
}

template <typename Real>
Real hs_inner(const BasicDensity<Real>& a, const BasicDensity<Real>& b) {
  return hs_inner(a.matrix(), b.matrix());
}

template <typename Real>
Real frobenius_distance(const BasicDensity<Real>& a, const BasicDensity<Real>& b) {
  return frobenius_distance(a.matrix(), b.matrix());
}

// ---------------------------------------------------------------------------
// Tensor structure

/// Kronecker product in listed order.
template <typename Real>
ComplexMatrixT<Real> tensor_product(std::span<const ComplexMatrixT<Real>> ms) {
  if (ms.empty()) throw DimensionError("tensor_product: empty list");
  ComplexMatrixT<Real> out = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) {
    ComplexMatrixT<Real> next = Eigen::kroneckerProduct(out, ms[i]);
    out = std::move(next);
  }
  return out;
}

inline ComplexMatrix tensor_product(std::initializer_list<ComplexMatrix> ms) {
  return tensor_product<double>(std::span<const ComplexMatrix>(ms.begin(), ms.size()));
}

/// Transpose the indices of one tensor factor (0-based):
/// out(j_1..j_s..j_n, k_1..k_s..k_n) = m(j_1..k_s..j_n, k_1..j_s..k_n).
template <typename Derived>
typename Derived::PlainObject partial_transpose(const Eigen::MatrixBase<Derived>& m, const DimensionSpec& dims,
                                                int factor) {
  if (factor < 0 || factor >= dims.count()) {
    throw DimensionError("partial_transpose: factor index " + std::to_string(factor) + " out of range");
  }
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_transpose: matrix does not match dims " + dims.to_string());
  }
  const int stride = dims.stride(factor);
  const int d = dims.factor(factor);
  const Eigen::Index n = m.rows();
  typename Derived::PlainObject out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const int dc = static_cast<int>(c / stride) % d;
    for (Eigen::Index r = 0; r < n; ++r) {
      const int dr = static_cast<int>(r / stride) % d;
      const Eigen::Index shift = static_cast<Eigen::Index>(dc - dr) * stride;
      out(r, c) = m(r + shift, c - shift);
    }
  }
  return out;
}

template <typename Real>
ComplexMatrixT<Real> partial_transpose(const BasicDensity<Real>& rho, int factor) {
  return partial_transpose(rho.matrix(), rho.dims(), factor);
}

// ---------------------------------------------------------------------------
// Spectra

template <typename Real>
struct SpectralDecomposition {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues;  ///< ascending
  ComplexMatrixT<Real> eigenvectors;                   ///< columns, orthonormal
};

/// Rotate a vector so that its first component above `eps` in magnitude is
/// real and positive.
template <typename Derived>
void fix_phase(Eigen::MatrixBase<Derived>&& v, typename Derived::RealScalar eps = 1e-12) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > eps) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

/// Eigendecomposition of a Hermitian matrix with deterministic eigenvector
/// phases. Throws ValidationError on non-Hermitian input.
template <typename Derived>
SpectralDecomposition<typename Derived::RealScalar> spectral(const Eigen::MatrixBase<Derived>& h,
                                                              typename Derived::RealScalar tol = 1e-12) {
  using Real = typename Derived::RealScalar;
  if (h.rows() != h.cols()) throw ValidationError(Invariant::Shape, "spectral: matrix is not square");
  const Real defect = hermiticity_defect(h);
  if (!(defect <= tol)) {
    throw ValidationError(Invariant::Hermiticity, "spectral: entry asymmetry " + std::to_string(double(defect)));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> es(hermitize(h));
  SpectralDecomposition<Real> out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) fix_phase(out.eigenvectors.col(k));
  return out;
}

template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived>& h) {
  using Real = typename Derived::RealScalar;
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

template <typename Real>
Real min_eigenvalue(const BasicDensity<Real>& rho) {
  return min_eigenvalue(rho.matrix());
}

template <typename Derived>
bool is_psd(const Eigen::MatrixBase<Derived>& h, typename Derived::RealScalar tol = 1e-10) {
  return min_eigenvalue(h) >= -tol;
}

// ---------------------------------------------------------------------------
// Convex structure

/// weight_rho * rho + weight_sigma * sigma with explicit weights.
template <typename Real>
BasicDensity<Real> mix_weighted(Real weight_rho, const BasicDensity<Real>& rho, Real weight_sigma,
                                const BasicDensity<Real>& sigma) {
  if (rho.dims() != sigma.dims()) throw DimensionError("mix: dims mismatch");
  if (weight_rho < 0 || weight_sigma < 0 || std::abs(weight_rho + weight_sigma - Real(1)) > Real(1e-12)) {
    throw PreconditionError("mix: weights must be non-negative and sum to one");
  }
  return BasicDensity<Real>(rho.dims(), weight_rho * rho.matrix() + weight_sigma * sigma.matrix());
}

/// t * rho + (1 - t) * sigma; so mix(s, rho0, D0) is the segment from D0 to rho0.
template <typename Real>
BasicDensity<Real> mix(Real t, const BasicDensity<Real>& rho, const BasicDensity<Real>& sigma) {
  if (!(t >= 0 && t <= 1)) throw PreconditionError("mix: t must lie in [0, 1]");
  return mix_weighted(t, rho, Real(1) - t, sigma);
}

template <typename Real>
BasicDensity<Real> convex_combination(std::span<const Real> weights, std::span<const BasicDensity<Real>> states) {
  if (weights.size() != states.size() || states.empty()) throw DimensionError("convex_combination: size mismatch");
  ComplexMatrixT<Real> acc = ComplexMatrixT<Real>::Zero(states[0].size(), states[0].size());
  Real total = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dims() != states[0].dims()) throw DimensionError("convex_combination: dims mismatch");
    if (weights[i] < 0) throw PreconditionError("convex_combination: negative weight");
    acc += weights[i] * states[i].matrix();
    total += weights[i];
  }
  if (std::abs(total - Real(1)) > Real(1e-12)) throw PreconditionError("convex_combination: weights must sum to one");
  return BasicDensity<Real>(states[0].dims(), acc);
}

// ---------------------------------------------------------------------------
// Generators

template <typename Real = double>
BasicDensity<Real> maximally_mixed(const DimensionSpec& dims) {
  const Eigen::Index n = dims.total();
  return BasicDensity<Real>(dims, ComplexMatrixT<Real>::Identity(n, n) / Real(n));
}

/// Projection onto d^{-1/2} sum_j |jj>.
template <typename Real = double>
BasicDensity<Real> max_entangled(int d) {
  if (d < 2) throw DimensionError("max_entangled: d must be >= 2");
  ComplexMatrixT<Real> m = ComplexMatrixT<Real>::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j * d + j, k * d + k) = Real(1) / Real(d);
  return BasicDensity<Real>(DimensionSpec{d, d}, m);
}

/// n-qubit GHZ projection: 1/2 at the four corners.
template <typename Real = double>
BasicDensity<Real> ghz(int n) {
  if (n < 2) throw DimensionError("ghz: n must be >= 2");
  const auto dims = DimensionSpec::uniform(2, n);
  const Eigen::Index last = dims.total() - 1;
  ComplexMatrixT<Real> m = ComplexMatrixT<Real>::Zero(dims.total(), dims.total());
  m(0, 0) = m(0, last) = m(last, 0) = m(last, last) = Real(0.5);
  return BasicDensity<Real>(dims, m);
}

/// |psi_a><psi_a| with |psi_a> = sum_k a_k |kk>.
inline Density rho_a(const AmplitudeVector& a) {
  const int d = a.dim();
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j * d + j, k * d + k) = a[j] * a[k];
  return Density(DimensionSpec{d, d}, m);
}

/// (1 - s) D0 + s rho0(d).
template <typename Real = double>
BasicDensity<Real> isotropic(int d, Real s) {
  if (!(s >= 0 && s <= 1)) throw PreconditionError("isotropic: s must lie in [0, 1]");
  return mix(s, max_entangled<Real>(d), maximally_mixed<Real>(DimensionSpec{d, d}));
}

// ---------------------------------------------------------------------------
// Entanglement probe

/// (1 + t) rho - t D0. Trace one, possibly indefinite.
template <typename Real>
ComplexMatrixT<Real> entanglement_probe(const BasicDensity<Real>& rho, Real t) {
  const Eigen::Index n = rho.size();
  return (Real(1) + t) * rho.matrix() - (t / Real(n)) * ComplexMatrixT<Real>::Identity(n, n);
}

/// Largest t with (1 + t) rho - t D0 still positive semidefinite:
/// N l / (1 - N l) for smallest eigenvalue l. Zero on the boundary of the
/// density set, infinite at D0.
template <typename Real>
Real max_probe_t(const BasicDensity<Real>& rho, Real zero_tol = Real(1e-12)) {
  const Real n = Real(rho.size());
  const Real lmin = min_eigenvalue(rho);
  if (lmin <= zero_tol) return 0;
  const Real nl = n * lmin;
  if (nl >= Real(1) - Real(1e-12)) return std::numeric_limits<Real>::infinity();
  return nl / (Real(1) - nl);
}

}  // namespace sepkit
