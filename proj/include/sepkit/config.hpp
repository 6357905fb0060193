#pragma once

namespace sepkit {

/// Numerical cut-offs shared across the library. The CLI overrides a subset.
struct Tolerances {
  double hermitian = 1e-12;  ///< per-entry |H_jk - conj(H_kj)|
  double trace = 1e-12;      ///< |Tr rho - 1|
  double psd = 1e-10;        ///< smallest admissible eigenvalue is -psd
  double unit_norm = 1e-12;  ///< | ||v|| - 1 | for kets
  double zero_eigenvalue = 1e-12;
  double face = 1e-10;       ///< residual accepted as "on the face"
  double oracle = 1e-6;      ///< Frank-Wolfe duality gap stopping threshold
};

inline constexpr Tolerances default_tolerances{};

}  // namespace sepkit
