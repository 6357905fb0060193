#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sepkit/types.hpp"

namespace sepkit {

/// Row order for the pair block of T and V: (j, k), j < k, sorted by gap k - j
/// and then by j. For d = 3 this is (0,1), (1,2), (0,2).
std::vector<std::pair<int, int>> pair_order(int d);

/// Real coordinates of a rho_a nearest-candidate on the phase-averaged face:
/// d diagonal entries a_i^2 - c followed by pair entries a_j a_k - c, with
/// c = 2 a*a / (d (d + 1)). Entries sum to one.
struct TVector {
  int d = 0;
  Eigen::VectorXd entries;
};

TVector build_t(const AmplitudeVector& a);

/// Same as build_t without the descending-order requirement on `a`.
TVector hull_target(std::span<const double> a);

/// One column per non-empty subset S of {0..d-1}: the face point whose
/// squared moduli are uniform 1/|S| on S. Entries are 1/k^2 on the diagonal
/// rows of S and 2/k^2 on the pair rows inside S.
struct XColumnSet {
  int d = 0;
  std::vector<std::vector<int>> subsets;
  Eigen::MatrixXd columns;
};

/// Subsets ordered by size, then by span max(S) - min(S), then
/// lexicographically. d = 3 reproduces the 6 x 7 array column for column.
XColumnSet build_v(int d);

/// Strictly positive q_1..q_d with sum q_k = 1 and sum q_k / k = 2 / (d + 1),
/// chosen to maximize min q_k.
Eigen::VectorXd solve_q(int d);

/// Column weights q_{|S|} / C(d, |S|) for the columns of build_v(d).
Eigen::VectorXd weights_from_q(const XColumnSet& v, const Eigen::VectorXd& q);

enum class FeasibilityStatus { Feasible, Infeasible };

std::string_view to_string(FeasibilityStatus s);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Infeasible;
  Eigen::VectorXd p;      ///< convex weights over the columns
  double residual = 0;    ///< max-norm of V p - target
  int iterations = 0;
};

/// Phase-1 simplex with Bland's rule on [V; 1^T] p = [target; 1], p >= 0.
/// Throws SolverError when the pivot count exceeds max_iterations.
FeasibilityResult convex_weights(const Eigen::MatrixXd& columns, const Eigen::VectorXd& target,
                                 int max_iterations = 100000);

/// Feasible certifies that the rho_a candidate lies in the phase-averaged
/// face. Infeasible is inconclusive.
FeasibilityResult membership(const AmplitudeVector& a);

/// Closed-form sufficient condition for d = 3:
/// a_0 a_2 / 2 <= a_2^2 - a*a / 12.
bool d3_sufficient(const AmplitudeVector& a);

}  // namespace sepkit
