#include "sepkit/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "sepkit/parallel.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"

namespace sepkit {

namespace {

constexpr std::size_t kChunk = 1024;

ComplexVector qubit(Complex c0, Complex c1) {
  ComplexVector v(2);
  v << c0, c1;
  return v;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::MaxEntangled: return "maxent";
    case Family::RhoAQubit: return "rhoa-qubit";
    case Family::RhoAQudit: return "rhoa-qudit";
    case Family::Ghz: return "ghz";
    case Family::Mixture: return "mixture";
  }
  return "unknown";
}

std::string_view to_string(Validity v) {
  switch (v) {
    case Validity::Proven: return "Proven";
    case Validity::ConditionallyValid: return "ConditionallyValid";
    case Validity::Unverified: return "Unverified";
  }
  return "unknown";
}

double face_residual(const ComplexMatrix& rho, const ComplexMatrix& tau0, const ComplexMatrix& tau) {
  return hs_inner(rho - tau0, tau - tau0);
}

NearestResult nearest_max_entangled(int d) {
  if (d < 2) throw DimensionError("nearest_max_entangled: d must be >= 2");
  const double s = 1.0 / (d + 1.0);
  return {max_entangled(d), isotropic(d, s), std::sqrt(1.0 - 2.0 / (d + 1.0)), Family::MaxEntangled,
          Validity::Proven};
}

ProductKet face_extreme_bipartite(int d, const ComplexVector& alpha) {
  if (alpha.size() != d) throw DimensionError("face_extreme_bipartite: alpha must have length d");
  if (std::abs(alpha.norm() - 1.0) > 1e-12) {
    throw ValidationError(Invariant::UnitNorm, "face_extreme_bipartite: alpha is not a unit vector");
  }
  return ProductKet(DimensionSpec{d, d}, {alpha, alpha.conjugate()});
}

ComplexMatrix qubit_parallel_candidate(const AmplitudeVector& a) {
  if (a.dim() != 2) throw DimensionError("qubit_parallel_candidate: needs d = 2");
  const auto maxent = nearest_max_entangled(2);
  const double t = 2.0 * a[0] * a[1];
  return rho_a(a).matrix() + t * (maxent.tau0.matrix() - maxent.rho.matrix());
}

NearestResult nearest_rho_a_qubit(const AmplitudeVector& a) {
  if (a.dim() != 2) throw DimensionError("nearest_rho_a_qubit: needs d = 2");
  const double margin = 3.0 * a[0] * a[1];
  if (margin < 1.0 - 1e-12) {
    throw RegionError("nearest_rho_a_qubit: requires 3 a0 a1 >= 1 (|a0^2 - 1/2| <= sqrt(5)/6), got 3 a0 a1 = " +
                      std::to_string(margin));
  }
  const DimensionSpec dims{2, 2};
  return {rho_a(a), Density(dims, qubit_parallel_candidate(a)), 2.0 * a[0] * a[1] / std::sqrt(3.0),
          Family::RhoAQubit, Validity::Proven};
}

ComplexMatrix m_jk(int d, int j, int k) {
  if (!(0 <= j && j < k && k < d)) throw DimensionError("m_jk: requires 0 <= j < k < d");
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  const int jk = j * d + k, kj = k * d + j, jj = j * d + j, kk = k * d + k;
  m(jk, jk) = 1;
  m(kj, kj) = 1;
  m(jj, kk) = -1;
  m(kk, jj) = -1;
  return m;
}

QuditAdjustment qudit_adjustment(const AmplitudeVector& a) {
  const int d = a.dim();
  QuditAdjustment adj;
  adj.t = 2.0 * a.pair_sum() / (d - 1.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) adj.u[{j, k}] = 0.5 * (a[j] * a[k] - adj.t / d);
  return adj;
}

ComplexMatrix qudit_candidate(const AmplitudeVector& a) {
  const int d = a.dim();
  const QuditAdjustment adj = qudit_adjustment(a);
  const auto maxent = nearest_max_entangled(d);
  ComplexMatrix tau = rho_a(a).matrix() + adj.t * (maxent.tau0.matrix() - maxent.rho.matrix());
  for (const auto& [jk, u] : adj.u) tau += u * m_jk(d, jk.first, jk.second);
  return tau;
}

double qudit_measure(const QuditAdjustment& adj, int d) {
  double s = adj.t * adj.t * (1.0 - 2.0 / (1.0 + d));
  for (const auto& [jk, u] : adj.u) s += 4.0 * u * u;
  return std::sqrt(s);
}

QuditNearest nearest_rho_a_qudit(const AmplitudeVector& a) {
  const int d = a.dim();
  const double bound = 2.0 * a.pair_sum() / (d * (d + 1.0));
  const double last = a[d - 1] * a[d - 1];
  if (last < bound - 1e-12) {
    throw RegionError("nearest_rho_a_qudit: requires a_{d-1}^2 >= 2 a*a / (d (d + 1)), got " + std::to_string(last) +
                      " < " + std::to_string(bound));
  }
  const DimensionSpec dims{d, d};
  Density tau = [&] {
    try {
      return Density(dims, qudit_candidate(a));
    } catch (const ValidationError& e) {
      throw RegionError(std::string("nearest_rho_a_qudit: candidate is not a density (") + e.what() + ")");
    }
  }();
  QuditAdjustment adj = qudit_adjustment(a);
  FeasibilityResult hull = d <= 12 ? membership(a) : FeasibilityResult{};
  const Validity validity =
      hull.status == FeasibilityStatus::Feasible ? Validity::Proven : Validity::ConditionallyValid;
  const double measure = qudit_measure(adj, d);
  return {{rho_a(a), std::move(tau), measure, Family::RhoAQudit, validity}, std::move(adj), std::move(hull)};
}

NearestResult ghz_nearest(int n) {
  if (n < 2) throw DimensionError("ghz_nearest: n must be >= 2");
  const double r = std::ldexp(1.0, n - 1);
  const double denom = 2 * r * r - 2 * r + 2;
  const double corner = (r * r - 2 * r + 2) / denom;
  const double b = 1.0 / denom;
  const auto dims = DimensionSpec::uniform(2, n);
  const int last = dims.total() - 1;
  ComplexMatrix tau = b * ComplexMatrix::Identity(dims.total(), dims.total());
  tau(0, 0) = tau(last, last) = corner;
  tau(0, last) = tau(last, 0) = b;
  const double measure = std::sqrt(0.5 * (1.0 - 1.0 / (r * r - r + 1)));
  return {ghz(n), Density(dims, tau), measure, Family::Ghz, Validity::Proven};
}

ProductKet ghz_face_extreme(int n, std::span<const double> phis) {
  if (n < 2 || static_cast<int>(phis.size()) != n) throw DimensionError("ghz_face_extreme: need n >= 2 phases");
  double total = 0;
  for (double p : phis) total += p;
  const double two_pi = 2 * std::numbers::pi;
  const double wrapped = std::abs(std::remainder(total, two_pi));
  if (wrapped > 1e-12) {
    throw PreconditionError("ghz_face_extreme: phases must sum to 0 mod 2 pi, off by " + std::to_string(wrapped));
  }
  std::vector<ComplexVector> f;
  const double h = 1.0 / std::sqrt(2.0);
  for (double p : phis) f.push_back(qubit(std::polar(h, p / 2), std::polar(h, -p / 2)));
  return ProductKet(DimensionSpec::uniform(2, n), std::move(f));
}

ProductKet ghz_face_corner(int n, GhzCorner corner) {
  const auto dims = DimensionSpec::uniform(2, n);
  std::vector<int> digits(n, corner == GhzCorner::AllOnes ? 1 : 0);
  return ProductKet::basis_state(dims, digits);
}

namespace {

struct GhzParts {
  std::vector<double> r0_sq, r1_sq;
  double coherence;  ///< Re prod_k c_k(0) conj(c_k(1)) = prod r0 r1 cos(Phi)
};

GhzParts ghz_parts(const ProductKet& ket) {
  for (int f : ket.dims().factors())
    if (f != 2) throw DimensionError("ghz F(tau): needs qubit factors");
  GhzParts p;
  Complex c = 1;
  for (const auto& v : ket.factors()) {
    p.r0_sq.push_back(std::norm(v(0)));
    p.r1_sq.push_back(std::norm(v(1)));
    c *= v(0) * std::conj(v(1));
  }
  p.coherence = c.real();
  return p;
}

}  // namespace

double ghz_f_value(const ProductKet& ket) {
  const GhzParts p = ghz_parts(ket);
  const int n = static_cast<int>(p.r0_sq.size());
  double all0 = 1, all1 = 1;
  for (int k = 0; k < n; ++k) {
    all0 *= p.r0_sq[k];
    all1 *= p.r1_sq[k];
  }
  return 1.0 - all0 - all1 - (std::ldexp(1.0, n) - 2.0) * p.coherence;
}

std::vector<double> ghz_f_groups(const ProductKet& ket) {
  const GhzParts p = ghz_parts(ket);
  const int n = static_cast<int>(p.r0_sq.size());
  std::vector<double> groups;
  // Representatives j with factor 0 at digit 0 and not all zeros; the
  // partner is the bitwise complement.
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    double term = 1, partner = 1;
    for (int k = 0; k < n; ++k) {
      const bool one = (mask >> (n - 1 - k)) & 1u;
      term *= one ? p.r1_sq[k] : p.r0_sq[k];
      partner *= one ? p.r0_sq[k] : p.r1_sq[k];
    }
    groups.push_back(term + partner - 2.0 * p.coherence);
  }
  return groups;
}

VerifyReport verify_nearest(const Density& rho, const Density& tau0, const VerifyOptions& options) {
  if (rho.dims() != tau0.dims()) throw DimensionError("verify_nearest: dims mismatch");
  const DimensionSpec& dims = rho.dims();
  const ComplexMatrix diff = rho.matrix() - tau0.matrix();
  const double offset = hs_inner(diff, tau0.matrix());
  auto residual = [&](const ProductKet& k) {
    const ComplexVector v = k.ket();
    return std::real(v.dot(diff * v)) - offset;
  };

  VerifyReport report{-std::numeric_limits<double>::infinity(), std::nullopt, 0, options.seed, false};
  auto consider = [&report](double r, const ProductKet& k) {
    if (r > report.max_residual) {
      report.max_residual = r;
      report.worst = k;
    }
  };

  for (int i = 0; i < dims.total(); ++i) {
    const auto digits = dims.digits(i);
    const auto k = ProductKet::basis_state(dims, digits);
    consider(residual(k), k);
    ++report.evaluated;
  }
  for (const auto& k : options.extra_candidates) {
    if (k.dims() != dims) throw DimensionError("verify_nearest: candidate dims mismatch");
    consider(residual(k), k);
    ++report.evaluated;
  }

  const std::size_t chunks = (options.samples + kChunk - 1) / kChunk;
  std::vector<double> best(chunks, -std::numeric_limits<double>::infinity());
  std::vector<std::optional<ProductKet>> best_ket(chunks);
  detail::for_each_chunk(chunks, options.threads, [&](std::size_t c) {
    Rng rng = make_rng(options.seed, c + 1);
    const std::size_t count = std::min(kChunk, options.samples - c * kChunk);
    for (std::size_t i = 0; i < count; ++i) {
      ProductKet k = random_product_ket(dims, rng);
      const double r = residual(k);
      if (r > best[c]) {
        best[c] = r;
        best_ket[c] = std::move(k);
      }
    }
  });
  for (std::size_t c = 0; c < chunks; ++c)
    if (best_ket[c]) consider(best[c], *best_ket[c]);
  report.evaluated += options.samples;
  report.pass = report.max_residual <= options.tolerance;
  return report;
}

std::vector<ProductKet> face_candidates(const NearestResult& r, std::uint64_t seed, int random_count) {
  std::vector<ProductKet> out;
  Rng rng = make_rng(seed, 0x5eed);
  const DimensionSpec& dims = r.rho.dims();
  switch (r.family) {
    case Family::MaxEntangled:
    case Family::RhoAQubit:
    case Family::RhoAQudit: {
      const int d = dims.factor(0);
      for (int j = 0; j < d; ++j) out.push_back(face_extreme_bipartite(d, ComplexVector::Unit(d, j)));
      out.push_back(face_extreme_bipartite(d, ComplexVector::Constant(d, 1.0 / std::sqrt(double(d)))));
      for (int i = 0; i < random_count; ++i) out.push_back(face_extreme_bipartite(d, random_unit_vector(d, rng)));
      break;
    }
    case Family::Ghz: {
      const int n = dims.count();
      out.push_back(ghz_face_corner(n, GhzCorner::AllZeros));
      out.push_back(ghz_face_corner(n, GhzCorner::AllOnes));
      std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
      for (int i = 0; i < random_count; ++i) {
        std::vector<double> phis(n);
        double sum = 0;
        for (int k = 0; k + 1 < n; ++k) sum += (phis[k] = angle(rng));
        phis[n - 1] = -sum;
        out.push_back(ghz_face_extreme(n, phis));
      }
      break;
    }
    case Family::Mixture: break;
  }
  return out;
}

NearestResult measure_convexity_check(const NearestResult& first, const NearestResult& second, double t,
                                      double face_tol) {
  if (!(t >= 0 && t <= 1)) throw PreconditionError("measure_convexity_check: t must lie in [0, 1]");
  if (first.rho.dims() != second.rho.dims()) throw DimensionError("measure_convexity_check: dims mismatch");
  const double r01 = face_residual(first.rho.matrix(), first.tau0.matrix(), second.tau0.matrix());
  const double r10 = face_residual(second.rho.matrix(), second.tau0.matrix(), first.tau0.matrix());
  if (std::abs(r01) > face_tol || std::abs(r10) > face_tol) {
    throw PreconditionError("measure_convexity_check: nearest densities do not share a face (residuals " +
                            std::to_string(r01) + ", " + std::to_string(r10) + ")");
  }
  Density rho = mix(t, first.rho, second.rho);
  Density tau = mix(t, first.tau0, second.tau0);
  const double m = frobenius_distance(rho, tau);
  const Validity v = (first.validity == Validity::Proven && second.validity == Validity::Proven)
                         ? Validity::Proven
                         : Validity::ConditionallyValid;
  return {std::move(rho), std::move(tau), m, Family::Mixture, v};
}

}  // namespace sepkit
