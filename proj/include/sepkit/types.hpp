#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sepkit/config.hpp"
#include "sepkit/dimension.hpp"
#include "sepkit/errors.hpp"

namespace sepkit {

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;

/// Largest per-entry deviation from Hermiticity.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<typename Derived::RealScalar>::infinity();
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol = 1e-12) {
  return hermiticity_defect(m) <= tol;
}

/// (H + H^dagger) / 2
template <typename Derived>
typename Derived::PlainObject hermitize(const Eigen::MatrixBase<Derived>& m) {
  typename Derived::PlainObject out = (m + m.adjoint()) / typename Derived::RealScalar(2);
  return out;
}

/// Trace-one positive semidefinite Hermitian matrix on a tensor-product space.
/// Construction validates every invariant and stores the symmetrized matrix.
template <typename Real>
class BasicDensity {
 public:
  using RealScalar = Real;
  using Matrix = ComplexMatrixT<Real>;

  BasicDensity(DimensionSpec dims, const Matrix& m, const Tolerances& tol = default_tolerances)
      : dims_(std::move(dims)) {
    const Eigen::Index n = dims_.total();
    if (m.rows() != n || m.cols() != n) {
      throw ValidationError(Invariant::Shape, "matrix is " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()) + ", dims " +
                                                  dims_.to_string() + " need " + std::to_string(n));
    }
    const Real defect = hermiticity_defect(m);
    if (!(defect <= Real(tol.hermitian))) {
      throw ValidationError(Invariant::Hermiticity, "entry asymmetry " + std::to_string(double(defect)));
    }
    matrix_ = hermitize(m);
    const std::complex<Real> tr = matrix_.trace();
    if (!(std::abs(tr - std::complex<Real>(1)) <= Real(tol.trace))) {
      throw ValidationError(Invariant::Trace, "trace is " + std::to_string(double(tr.real())) + "+" +
                                                  std::to_string(double(tr.imag())) + "i");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    const Real lmin = es.eigenvalues()(0);
    if (!(lmin >= -Real(tol.psd))) {
      throw ValidationError(Invariant::Positivity, "smallest eigenvalue " + std::to_string(double(lmin)));
    }
  }

  const DimensionSpec& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  Eigen::Index size() const noexcept { return matrix_.rows(); }

 private:
  DimensionSpec dims_;
  Matrix matrix_;
};

/// One unit vector per tensor factor; the projection onto their tensor product
/// is an extreme point of the separable set.
template <typename Real>
class BasicProductKet {
 public:
  using Vector = ComplexVectorT<Real>;
  using Matrix = ComplexMatrixT<Real>;

  BasicProductKet(DimensionSpec dims, std::vector<Vector> factors, const Tolerances& tol = default_tolerances)
      : dims_(std::move(dims)), factors_(std::move(factors)) {
    if (static_cast<int>(factors_.size()) != dims_.count()) {
      throw ValidationError(Invariant::Shape, "product ket needs one vector per factor");
    }
    for (int k = 0; k < dims_.count(); ++k) {
      if (factors_[k].size() != dims_.factor(k)) {
        throw ValidationError(Invariant::Shape, "factor " + std::to_string(k) + " has wrong length");
      }
      const Real norm = factors_[k].norm();
      if (!(std::abs(norm - Real(1)) <= Real(tol.unit_norm))) {
        throw ValidationError(Invariant::UnitNorm,
                              "factor " + std::to_string(k) + " has norm " + std::to_string(double(norm)));
      }
    }
  }

  /// Computational basis state |j_1 ... j_n>.
  static BasicProductKet basis_state(const DimensionSpec& dims, std::span<const int> digits) {
    std::vector<Vector> f;
    for (int k = 0; k < dims.count(); ++k) {
      Vector v = Vector::Zero(dims.factor(k));
      v(digits[k]) = 1;
      f.push_back(std::move(v));
    }
    return BasicProductKet(dims, std::move(f));
  }

  const DimensionSpec& dims() const noexcept { return dims_; }
  const std::vector<Vector>& factors() const noexcept { return factors_; }
  const Vector& factor(int k) const { return factors_.at(k); }

  /// Full N-component ket, leftmost factor most significant.
  Vector ket() const {
    Vector out(1);
    out(0) = 1;
    for (const auto& f : factors_) {
      Vector next(out.size() * f.size());
      for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * f.size(), f.size()) = out(i) * f;
      out = std::move(next);
    }
    return out;
  }

  Matrix projector() const {
    const Vector v = ket();
    return v * v.adjoint();
  }

 private:
  DimensionSpec dims_;
  std::vector<Vector> factors_;
};

using Density = BasicDensity<double>;
using ProductKet = BasicProductKet<double>;

/// Schmidt amplitudes a_0 >= a_1 >= ... >= a_{d-1} >= 0 with sum a_k^2 = 1.
class AmplitudeVector {
 public:
  explicit AmplitudeVector(std::vector<double> a, double tol = 1e-12) : a_(std::move(a)) {
    if (a_.size() < 2) throw ValidationError(Invariant::Amplitudes, "need at least two amplitudes");
    double sq = 0;
    for (std::size_t k = 0; k < a_.size(); ++k) {
      if (!(a_[k] >= 0)) throw ValidationError(Invariant::Amplitudes, "amplitudes must be non-negative");
      if (k > 0 && a_[k] > a_[k - 1]) {
        throw ValidationError(Invariant::Amplitudes, "amplitudes must be in descending order");
      }
      sq += a_[k] * a_[k];
    }
    if (std::abs(sq - 1.0) > tol) {
      throw ValidationError(Invariant::Amplitudes, "sum of squares is " + std::to_string(sq));
    }
  }

  /// Rescales to unit norm before validating ordering and signs.
  static AmplitudeVector normalized(std::vector<double> a) {
    double sq = 0;
    for (double x : a) sq += x * x;
    if (!(sq > 0)) throw ValidationError(Invariant::Amplitudes, "amplitudes are all zero");
    const double s = std::sqrt(sq);
    for (double& x : a) x /= s;
    return AmplitudeVector(std::move(a));
  }

  static AmplitudeVector uniform(int d) {
    return AmplitudeVector(std::vector<double>(d, 1.0 / std::sqrt(double(d))));
  }

  /// Two-level amplitudes from a_0^2; a_1 = sqrt(1 - a_0^2).
  static AmplitudeVector qubit(double a0_squared) {
    return AmplitudeVector({std::sqrt(a0_squared), std::sqrt(1.0 - a0_squared)});
  }

  int dim() const noexcept { return static_cast<int>(a_.size()); }
  double operator[](int k) const { return a_.at(k); }
  std::span<const double> values() const noexcept { return a_; }

  /// sum_{j<k} a_j a_k
  double pair_sum() const {
    double s = 0;
    for (std::size_t j = 0; j < a_.size(); ++j)
      for (std::size_t k = j + 1; k < a_.size(); ++k) s += a_[j] * a_[k];
    return s;
  }

 private:
  std::vector<double> a_;
};

}  // namespace sepkit
