#include "sepkit/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sepkit {

namespace {

constexpr double kPivotEps = 1e-12;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<std::pair<int, int>> pair_order(int d) {
  std::vector<std::pair<int, int>> out;
  for (int gap = 1; gap < d; ++gap)
    for (int j = 0; j + gap < d; ++j) out.emplace_back(j, j + gap);
  return out;
}

TVector hull_target(std::span<const double> a) {
  const int d = static_cast<int>(a.size());
  double star = 0;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) star += a[j] * a[k];
  const double c = 2.0 * star / (d * (d + 1.0));
  const auto pairs = pair_order(d);
  TVector t{d, Eigen::VectorXd(d + static_cast<int>(pairs.size()))};
  for (int i = 0; i < d; ++i) t.entries(i) = a[i] * a[i] - c;
  for (std::size_t p = 0; p < pairs.size(); ++p) t.entries(d + p) = a[pairs[p].first] * a[pairs[p].second] - c;
  return t;
}

TVector build_t(const AmplitudeVector& a) { return hull_target(a.values()); }

XColumnSet build_v(int d) {
  if (d < 2 || d > 12) throw DimensionError("build_v: d must lie in [2, 12]");
  XColumnSet v;
  v.d = d;
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < d; ++i)
      if (mask & (1 << i)) s.push_back(i);
    v.subsets.push_back(std::move(s));
  }
  std::sort(v.subsets.begin(), v.subsets.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    const int sx = x.back() - x.front();
    const int sy = y.back() - y.front();
    if (sx != sy) return sx < sy;
    return x < y;
  });

  const auto pairs = pair_order(d);
  v.columns = Eigen::MatrixXd::Zero(d + static_cast<int>(pairs.size()), static_cast<int>(v.subsets.size()));
  for (std::size_t c = 0; c < v.subsets.size(); ++c) {
    const auto& s = v.subsets[c];
    const double k = static_cast<double>(s.size());
    std::vector<bool> in(d, false);
    for (int i : s) {
      in[i] = true;
      v.columns(i, c) = 1.0 / (k * k);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (in[pairs[p].first] && in[pairs[p].second]) v.columns(d + p, c) = 2.0 / (k * k);
  }
  return v;
}

Eigen::VectorXd solve_q(int d) {
  if (d < 2) throw DimensionError("solve_q: d must be >= 2");
  double harmonic = 0;
  for (int k = 1; k <= d; ++k) harmonic += 1.0 / k;
  const double target = 2.0 / (d + 1.0);

  // With every q_k >= m and the excess e = 1 - d m placed on q_1 (largest
  // 1/k) or q_d (smallest), sum q_k / k sweeps the segment
  // [m H + e / d, m H + e]. The largest m whose segment still reaches the
  // target is the max-min solution.
  const double m_low = (d - 1.0) / (d * (d + 1.0) * (harmonic - 1.0));
  const double m_high = ((d - 1.0) / (d + 1.0)) / (d - harmonic);
  const double m = std::min({1.0 / d, m_low, m_high});
  const double excess = 1.0 - d * m;

  Eigen::VectorXd q = Eigen::VectorXd::Constant(d, m);
  if (excess > 0) {
    const double reach = target - m * harmonic - excess / d;
    const double alpha = std::clamp(reach / (excess * (1.0 - 1.0 / d)), 0.0, 1.0);
    q(0) += alpha * excess;
    q(d - 1) += (1.0 - alpha) * excess;
  }
  return q;
}

Eigen::VectorXd weights_from_q(const XColumnSet& v, const Eigen::VectorXd& q) {
  Eigen::VectorXd p(v.subsets.size());
  for (std::size_t c = 0; c < v.subsets.size(); ++c) {
    const int k = static_cast<int>(v.subsets[c].size());
    p(c) = q(k - 1) / binomial(v.d, k);
  }
  return p;
}

std::string_view to_string(FeasibilityStatus s) {
  return s == FeasibilityStatus::Feasible ? "Feasible" : "Infeasible";
}

FeasibilityResult convex_weights(const Eigen::MatrixXd& columns, const Eigen::VectorXd& target,
                                 int max_iterations) {
  if (columns.rows() != target.size()) throw DimensionError("convex_weights: target length mismatch");
  const int n = static_cast<int>(columns.cols());
  const int m = static_cast<int>(columns.rows()) + 1;

  Eigen::MatrixXd a(m, n);
  a.topRows(m - 1) = columns;
  a.row(m - 1).setOnes();
  Eigen::VectorXd b(m);
  b.head(m - 1) = target;
  b(m - 1) = 1;
  for (int i = 0; i < m; ++i)
    if (b(i) < 0) {
      a.row(i) *= -1;
      b(i) *= -1;
    }

  // Tableau [A | I | b] with one artificial per row; last row holds reduced
  // costs of the phase-1 objective sum(artificials) and, in the rhs slot, its
  // negated value.
  const int cols = n + m + 1;
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m + 1, cols);
  tab.block(0, 0, m, n) = a;
  tab.block(0, n, m, m).setIdentity();
  tab.col(cols - 1).head(m) = b;
  for (int j = 0; j < n; ++j) tab(m, j) = -a.col(j).sum();
  tab(m, cols - 1) = -b.sum();
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  FeasibilityResult result;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < n; ++j)
      if (tab(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double coef = tab(i, enter);
      if (coef <= kPivotEps) continue;
      const double ratio = tab(i, cols - 1) / coef;
      if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1

    if (++result.iterations > max_iterations) {
      throw SolverError("convex_weights: pivot limit " + std::to_string(max_iterations) + " exceeded");
    }
    tab.row(leave) /= tab(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = tab(i, enter);
      if (f != 0) tab.row(i) -= f * tab.row(leave);
    }
    basis[leave] = enter;
  }

  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  std::vector<int> support;
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) {
      p(basis[i]) = tab(i, cols - 1);
      support.push_back(basis[i]);
    }
  const double artificial_mass = -tab(m, cols - 1);

  // Re-solve on the support to shed accumulated pivoting error.
  if (!support.empty()) {
    Eigen::MatrixXd sub(m, support.size());
    for (std::size_t s = 0; s < support.size(); ++s) {
      sub.block(0, s, m - 1, 1) = columns.col(support[s]);
      sub(m - 1, s) = 1;
    }
    Eigen::VectorXd rhs(m);
    rhs.head(m - 1) = target;
    rhs(m - 1) = 1;
    const Eigen::VectorXd refined = sub.colPivHouseholderQr().solve(rhs);
    if (refined.minCoeff() >= -1e-12) {
      p.setZero();
      for (std::size_t s = 0; s < support.size(); ++s) p(support[s]) = refined(s);
    }
  }
  p = p.cwiseMax(0.0);

  result.p = p;
  result.residual = std::max((columns * p - target).lpNorm<Eigen::Infinity>(), std::abs(p.sum() - 1.0));
  result.status = (artificial_mass <= 1e-9 && result.residual <= 1e-10) ? FeasibilityStatus::Feasible
                                                                        : FeasibilityStatus::Infeasible;
  return result;
}

FeasibilityResult membership(const AmplitudeVector& a) {
  const XColumnSet v = build_v(a.dim());
  return convex_weights(v.columns, build_t(a).entries);
}

bool d3_sufficient(const AmplitudeVector& a) {
  if (a.dim() != 3) throw DimensionError("d3_sufficient: needs d = 3");
  return 0.5 * a[0] * a[2] <= a[2] * a[2] - a.pair_sum() / 12.0;
}

}  // namespace sepkit
