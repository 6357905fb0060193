#include "sepkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sepkit/parallel.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"

namespace sepkit {

namespace {

constexpr int kMaxSweeps = 200;
constexpr int kScreenSweeps = 8;
constexpr double kSweepTol = 1e-12;
constexpr double kPruneWeight = 1e-12;
constexpr int kRefreshEvery = 64;
constexpr double kCorrectiveTol = 1e-2;

// Digit of factor k for basis index i at [i * n + k].
std::vector<int> digit_table(const DimensionSpec& dims) {
  const int n = dims.count();
  std::vector<int> t(static_cast<std::size_t>(dims.total() * n));
  for (int i = 0; i < dims.total(); ++i) {
    const auto d = dims.digits(i);
    std::copy(d.begin(), d.end(), t.begin() + i * n);
  }
  return t;
}

struct Ascent {
  std::vector<ComplexVector> factors;
  double value = -std::numeric_limits<double>::infinity();
  bool done = false;
};

// Alternating per-factor maximization, continued for at most `sweeps` sweeps.
void ascend(const ComplexMatrix& h, const DimensionSpec& dims, const std::vector<int>& digits, Ascent& s,
            int sweeps) {
  const int n = dims.count();
  const int total = dims.total();
  if (n == 1) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    s.factors[0] = es.eigenvectors().col(total - 1);
    s.value = es.eigenvalues()(total - 1);
    s.done = true;
    return;
  }
  ComplexMatrix w;
  for (int sweep = 0; sweep < sweeps && !s.done; ++sweep) {
    const double last = s.value;
    for (int k = 0; k < n; ++k) {
      const int dk = dims.factor(k);
      w.setZero(total, dk);
      for (int i = 0; i < total; ++i) {
        const int* di = digits.data() + i * n;
        Complex c = 1;
        for (int f = 0; f < n; ++f)
          if (f != k) c *= s.factors[f](di[f]);
        w(i, di[k]) = c;
      }
      const ComplexMatrix env = hermitize(ComplexMatrix(w.adjoint() * h * w));
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(env);
      s.factors[k] = es.eigenvectors().col(dk - 1).normalized();
      s.value = es.eigenvalues()(dk - 1);
    }
    if (std::abs(s.value - last) < kSweepTol) s.done = true;
  }
}

// Wolfe's minimum-norm-point method: the point of the convex hull of p_1..p_m
// nearest the origin, given only the Gram matrix K_ab = <p_a, p_b>. Returns
// the simplex weights; at most rank(K) + 1 of them are nonzero.
Eigen::VectorXd min_norm_point(const Eigen::MatrixXd& k) {
  const Eigen::Index m = k.rows();
  const double eps = 1e-13 * std::max(1.0, k.diagonal().maxCoeff());
  Eigen::Index first = 0;
  k.diagonal().minCoeff(&first);
  std::vector<Eigen::Index> corral{first};
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(1);

  for (Eigen::Index major = 0; major < 10 * m + 100; ++major) {
    Eigen::VectorXd xp = Eigen::VectorXd::Zero(m);
    for (std::size_t s = 0; s < corral.size(); ++s) xp += lambda(static_cast<Eigen::Index>(s)) * k.col(corral[s]);
    double xx = 0;
    for (std::size_t s = 0; s < corral.size(); ++s) xx += lambda(static_cast<Eigen::Index>(s)) * xp(corral[s]);
    Eigen::Index j = 0;
    xp.minCoeff(&j);
    if (xx - xp(j) <= eps || std::find(corral.begin(), corral.end(), j) != corral.end()) break;
    corral.push_back(j);
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0;

    for (int minor = 0; minor < 1000; ++minor) {
      const auto c = static_cast<Eigen::Index>(corral.size());
      Eigen::MatrixXd a(c + 1, c + 1);
      for (Eigen::Index p = 0; p < c; ++p)
        for (Eigen::Index q = 0; q < c; ++q) a(p, q) = k(corral[p], corral[q]);
      a.row(c).head(c).setOnes();
      a.col(c).head(c).setOnes();
      a(c, c) = 0;
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(c + 1);
      rhs(c) = 1;
      const Eigen::VectorXd alpha = a.colPivHouseholderQr().solve(rhs).head(c);
      if (alpha.minCoeff() > 0) {
        lambda = alpha;
        break;
      }
      double theta = 1;
      for (Eigen::Index p = 0; p < c; ++p)
        if (alpha(p) <= 0) theta = std::min(theta, lambda(p) / (lambda(p) - alpha(p)));
      lambda += theta * (alpha - lambda);
      std::vector<Eigen::Index> kept;
      std::vector<double> kept_lambda;
      for (Eigen::Index p = 0; p < c; ++p) {
        if (lambda(p) > 1e-15) {
          kept.push_back(corral[p]);
          kept_lambda.push_back(lambda(p));
        }
      }
      if (kept.size() == corral.size()) {
        // No weight reached zero: drop the smallest to guarantee progress.
        const auto drop = std::min_element(kept_lambda.begin(), kept_lambda.end()) - kept_lambda.begin();
        kept.erase(kept.begin() + drop);
        kept_lambda.erase(kept_lambda.begin() + drop);
      }
      corral = std::move(kept);
      lambda = Eigen::Map<Eigen::VectorXd>(kept_lambda.data(), static_cast<Eigen::Index>(kept_lambda.size()));
      lambda /= lambda.sum();
      if (corral.size() == 1) break;
    }
  }

  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  for (std::size_t s = 0; s < corral.size(); ++s) w(corral[s]) = lambda(static_cast<Eigen::Index>(s));
  return w;
}

}  // namespace

ProductStateResult best_product_state(const ComplexMatrix& h, const DimensionSpec& dims, int restarts,
                                      std::uint64_t seed, const ProductKet* warm_start, int threads) {
  if (h.rows() != dims.total() || h.cols() != dims.total()) throw DimensionError("best_product_state: dims mismatch");
  const auto digits = digit_table(dims);

  // Screen every start with a few sweeps, then finish only the best one.
  const std::size_t count = static_cast<std::size_t>(std::max(restarts, 1));
  std::vector<Ascent> runs(count + (warm_start ? 1 : 0));
  detail::for_each_chunk(runs.size(), threads, [&](std::size_t r) {
    if (r < count) {
      Rng rng = make_rng(seed, r);
      runs[r].factors = random_product_ket(dims, rng).factors();
    } else {
      runs[r].factors = warm_start->factors();
    }
    ascend(h, dims, digits, runs[r], kScreenSweeps);
  });
  auto best = std::max_element(runs.begin(), runs.end(),
                               [](const Ascent& a, const Ascent& b) { return a.value < b.value; });
  ascend(h, dims, digits, *best, kMaxSweeps);
  return {ProductKet(dims, std::move(best->factors)), best->value};
}

OracleResult gilbert_nearest(const Density& rho, const OracleOptions& options) {
  const DimensionSpec& dims = rho.dims();
  const int total = dims.total();
  const ComplexMatrix& r = rho.matrix();

  std::vector<Atom> atoms;
  std::vector<ComplexVector> kets;
  for (int i = 0; i < total; ++i) {
    atoms.push_back({ProductKet::basis_state(dims, dims.digits(i)), 1.0 / total});
    kets.push_back(atoms.back().ket.ket());
  }
  ComplexMatrix tau = ComplexMatrix::Identity(total, total) / double(total);

  // score[a] = <psi_a|rho - tau|psi_a>, updated in O(N) per atom per step;
  // overlap[a] = <psi_a|rho|psi_a> is fixed.
  std::vector<double> score(atoms.size()), overlap(atoms.size());
  for (std::size_t a = 0; a < kets.size(); ++a) overlap[a] = kets[a].dot(r * kets[a]).real();
  auto refresh = [&] {
    const ComplexMatrix g = r - tau;
    for (std::size_t a = 0; a < kets.size(); ++a) score[a] = kets[a].dot(g * kets[a]).real();
  };
  refresh();

  OracleResult out{maximally_mixed(dims), {}, 0, 0, 0, false, options.seed, {}};
  const bool fully_corrective = total * total <= options.fully_corrective_max;
  int it = 0;
  for (;; ++it) {
    // Warm start from the best current atom so the gap is never negative.
    const auto top = std::max_element(score.begin(), score.end()) - score.begin();
    const ComplexMatrix grad = r - tau;
    auto lmo = best_product_state(grad, dims, options.restarts,
                                  options.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(it + 1)),
                                  &atoms[static_cast<std::size_t>(top)].ket, options.threads);
    out.gap = lmo.value - hs_inner(grad, tau);
    if (out.gap <= options.tolerance) {
      out.converged = true;
      break;
    }
    if (it >= options.max_iterations) break;

    const ComplexVector psi = lmo.ket.ket();
    std::size_t fw = atoms.size();
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (std::norm(kets[a].dot(psi)) > 1.0 - 1e-14) {
        fw = a;
        break;
      }
    }
    if (fw == atoms.size()) {
      atoms.push_back({lmo.ket, 0.0});
      kets.push_back(psi);
      score.push_back(lmo.value);
      overlap.push_back(psi.dot(r * psi).real());
    }

    // Moves gamma <= weight(v) from atom v to atom f with an exact line search.
    auto pairwise = [&](std::size_t f, std::size_t v) {
      const ComplexVector& kf = kets[f];
      const ComplexVector& kv = kets[v];
      const double den = 2.0 - 2.0 * std::norm(kf.dot(kv));
      if (!(den > 0)) return false;
      const double gamma = std::clamp((score[f] - score[v]) / den, 0.0, atoms[v].weight);
      tau += gamma * (kf * kf.adjoint() - kv * kv.adjoint());
      for (std::size_t a = 0; a < atoms.size(); ++a)
        score[a] -= gamma * (std::norm(kets[a].dot(kf)) - std::norm(kets[a].dot(kv)));
      atoms[f].weight += gamma;
      atoms[v].weight = gamma == atoms[v].weight ? 0.0 : atoms[v].weight - gamma;
      return true;
    };

    std::size_t away = atoms.size();
    if (options.pairwise) {
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        if (a != fw && atoms[a].weight > 0 && score[a] < worst) {
          worst = score[a];
          away = a;
        }
      }
    }

    if (away < atoms.size()) {
      if (!pairwise(fw, away)) break;
    } else {
      // Exact line search on [tau, pi].
      const ComplexVector& f = kets[fw];
      const double den = 1.0 - 2.0 * f.dot(tau * f).real() + tau.squaredNorm();
      if (!(den > 0)) break;
      const double gamma = std::clamp(out.gap / den, 0.0, 1.0);
      for (std::size_t a = 0; a < atoms.size(); ++a)
        score[a] -= gamma * (std::norm(kets[a].dot(f)) - (overlap[a] - score[a]));
      tau += gamma * (f * f.adjoint() - tau);
      for (auto& a : atoms) a.weight *= 1.0 - gamma;
      atoms[fw].weight += gamma;
    }

    if (fully_corrective) {
      // Best convex combination of the current atoms.
      const auto m = static_cast<Eigen::Index>(atoms.size());
      const double rr = r.squaredNorm();
      Eigen::MatrixXd k(m, m);
      for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = a; b < m; ++b) {
          const double ov = a == b ? 1.0 : std::norm(kets[a].dot(kets[b]));
          k(a, b) = k(b, a) = ov - overlap[a] - overlap[b] + rr;
        }
      }
      const Eigen::VectorXd w = min_norm_point(k);
      tau.setZero();
      for (Eigen::Index a = 0; a < m; ++a) {
        atoms[a].weight = w(a);
        if (w(a) > 0) tau.noalias() += w(a) * kets[a] * kets[a].adjoint();
      }
      refresh();
    } else {
      // Re-optimize the weights over the current atoms: pairwise steps between
      // the best and worst active atom until their scores (nearly) agree.
      for (int c = 0; c < options.corrective_steps; ++c) {
        std::size_t hi = 0, lo = atoms.size();
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          if (score[a] > score[hi]) hi = a;
          if (atoms[a].weight > 0 && (lo == atoms.size() || score[a] < score[lo])) lo = a;
        }
        if (lo == atoms.size() || lo == hi || score[hi] - score[lo] <= kCorrectiveTol * out.gap) break;
        if (!pairwise(hi, lo)) break;
      }
    }

    // Drop negligible atoms and renormalize so tau stays their exact mixture.
    double dropped = 0;
    ComplexMatrix removed = ComplexMatrix::Zero(total, total);
    std::size_t keep = 0;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      if (atoms[a].weight < kPruneWeight) {
        if (atoms[a].weight > 0) {
          dropped += atoms[a].weight;
          removed += atoms[a].weight * kets[a] * kets[a].adjoint();
        }
        continue;
      }
      if (keep != a) {
        atoms[keep] = std::move(atoms[a]);
        kets[keep] = std::move(kets[a]);
        score[keep] = score[a];
        overlap[keep] = overlap[a];
      }
      ++keep;
    }
    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(keep), atoms.end());
    kets.resize(keep);
    score.resize(keep);
    overlap.resize(keep);
    if (dropped != 0) {
      tau = (tau - removed) / (1.0 - dropped);
      for (auto& a : atoms) a.weight /= 1.0 - dropped;
      refresh();
    } else if ((it + 1) % kRefreshEvery == 0) {
      refresh();
    }
    if (options.record_history) out.history.push_back((r - tau).norm());
  }

  out.iterations = it;
  tau = hermitize(tau);
  tau /= tau.trace().real();
  out.tau = Density(dims, tau);
  out.distance = frobenius_distance(r, out.tau.matrix());
  out.atoms = std::move(atoms);
  return out;
}

MeasureEstimate measure_estimate(const Density& rho, int budget, std::uint64_t seed, double tolerance,
                                 int threads) {
  OracleOptions opt;
  opt.max_iterations = budget;
  opt.seed = seed;
  opt.tolerance = tolerance;
  opt.threads = threads;
  OracleResult r = gilbert_nearest(rho, opt);
  const double upper = r.distance;
  return {upper, std::move(r)};
}

Density dephase_local(const Density& rho) {
  ComplexMatrix m = ComplexMatrix::Zero(rho.size(), rho.size());
  m.diagonal() = rho.matrix().diagonal();
  return Density(rho.dims(), m);
}

}  // namespace sepkit
