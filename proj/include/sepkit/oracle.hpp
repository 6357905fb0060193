#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sepkit/types.hpp"

namespace sepkit {

struct ProductStateResult {
  ProductKet ket;
  double value;  ///< <psi|H|psi>
};

/// Maximizes <psi|H|psi> over product kets by alternating per-factor updates:
/// each factor becomes the top eigenvector of H contracted with the other
/// factors. Best of `restarts` random starts (plus `warm_start` if given).
/// A local method: the result is a lower bound on the true maximum.
ProductStateResult best_product_state(const ComplexMatrix& h, const DimensionSpec& dims, int restarts = 8,
                                      std::uint64_t seed = 0, const ProductKet* warm_start = nullptr,
                                      int threads = 1);

struct Atom {
  ProductKet ket;
  double weight;
};

struct OracleOptions {
  int max_iterations = 10000;
  double tolerance = 1e-6;  ///< stop when the duality gap drops below this
  std::uint64_t seed = 0;
  int restarts = 8;
  bool record_history = false;
  int threads = 1;  ///< workers for the restarts
  bool pairwise = true;  ///< shift weight from the worst atom instead of shrinking all
  /// Up to this N^2 the weights are re-optimized exactly over the current
  /// atoms after every step (minimum-norm-point QP); above it, by at most
  /// `corrective_steps` pairwise steps.
  int fully_corrective_max = 100;
  int corrective_steps = 200;
};

/// Numerical nearest separable density. `distance` is always a valid upper
/// bound on the Frobenius entanglement measure; `gap` bounds
/// (distance^2 - m^2) / 2 from above when the product-state search is exact.
struct OracleResult {
  Density tau;
  std::vector<Atom> atoms;
  double distance;
  double gap;
  int iterations;
  bool converged;
  std::uint64_t seed;
  std::vector<double> history;  ///< distance after each iteration, if recorded
};

/// Frank-Wolfe (Gilbert) iteration over the separable set, started at D0
/// written as the uniform mixture of computational basis projections. Each
/// step finds the product projection pi maximizing <<rho - tau, pi>> and does
/// an exact line search, either on [tau, pi] or (pairwise) along pi minus the
/// current atom least aligned with rho - tau.
OracleResult gilbert_nearest(const Density& rho, const OracleOptions& options = {});

struct MeasureEstimate {
  double upper;
  OracleResult certificate;
};

MeasureEstimate measure_estimate(const Density& rho, int budget = 10000, std::uint64_t seed = 0,
                                 double tolerance = 1e-6, int threads = 1);

/// Complete local dephasing in the computational basis: keeps the diagonal.
Density dephase_local(const Density& rho);

}  // namespace sepkit
