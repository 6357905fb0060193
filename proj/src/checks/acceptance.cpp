#include "sepkit/checks/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sepkit/checks/independent.hpp"
#include "sepkit/closed_forms.hpp"
#include "sepkit/hull.hpp"
#include "sepkit/oracle.hpp"
#include "sepkit/ppt.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"
#include "sepkit/unitary_basis.hpp"
#include "sepkit/witness.hpp"

namespace sepkit::checks {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "eq";
    case Relation::AtMost: return "le";
    case Relation::AtLeast: return "ge";
  }
  return "?";
}

bool SuiteReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json to_json(const std::string& suite, const CheckResult& c) {
  auto num = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  };
  return {{"suite", suite},           {"check", c.name},       {"measured", num(c.measured)},
          {"expected", num(c.expected)}, {"tolerance", c.tolerance}, {"relation", to_string(c.relation)},
          {"pass", c.pass}};
}

namespace {

class Recorder {
 public:
  Recorder(SuiteReport& report, const AcceptanceOptions& options) : report_(report), options_(options) {}

  void equal(std::string name, double measured, double expected, double tol) {
    add({std::move(name), measured, expected, tol, Relation::Equal, std::abs(measured - expected) <= tol});
  }
  void at_most(std::string name, double measured, double bound) {
    add({std::move(name), measured, bound, 0, Relation::AtMost, measured <= bound});
  }
  void at_least(std::string name, double measured, double bound) {
    add({std::move(name), measured, bound, 0, Relation::AtLeast, measured >= bound});
  }
  void holds(std::string name, bool ok) { add({std::move(name), ok ? 1.0 : 0.0, 1, 0, Relation::Equal, ok}); }

 private:
  void add(CheckResult c) {
    if (options_.on_check) options_.on_check(report_.suite, c);
    report_.checks.push_back(std::move(c));
  }

  SuiteReport& report_;
  const AcceptanceOptions& options_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

constexpr int kBudget = 10000;

double oracle_distance(const Density& rho, int budget, std::uint64_t seed, int threads) {
  return measure_estimate(rho, budget, seed, default_tolerances.oracle, threads).upper;
}

VerifyReport verify(const NearestResult& nr, std::uint64_t seed, int threads) {
  VerifyOptions vo;
  vo.seed = seed;
  vo.threads = threads;
  vo.extra_candidates = face_candidates(nr, seed);
  return verify_nearest(nr.rho, nr.tau0, vo);
}

// 1. Isotropic boundary.
void isotropic_suite(Recorder& rec, const AcceptanceOptions&) {
  const std::vector<std::pair<double, PptVerdict>> cases = {{0.30, PptVerdict::Separable},
                                                            {1.0 / 3.0, PptVerdict::Separable},
                                                            {0.35, PptVerdict::Entangled},
                                                            {0.60, PptVerdict::Entangled},
                                                            {1.0, PptVerdict::Entangled}};
  for (const auto& [s, expected] : cases) {
    const Density rho = isotropic(2, s);
    const PptReport rep = ppt_verdict(rho);
    rec.holds("ppt_verdict[s=" + fmt(s) + "]=" + std::string(to_string(expected)), rep.verdict == expected);
    const double ref = jacobi_min_eigenvalue(brute_partial_transpose(rho.matrix(), {2, 2}, 1));
    rec.equal("min_pt_eigenvalue_reference[s=" + fmt(s) + "]", ref, (1 - 3 * s) / 4, 1e-12);
    rec.equal("min_pt_eigenvalue_library[s=" + fmt(s) + "]", rep.min_eigenvalues.at(1), ref, 1e-12);
  }
}

// 2. Coefficient l1 norm and explicit decomposition.
void prop41_suite(Recorder& rec, const AcceptanceOptions&) {
  double l1_err = 0, recon_err = 0;
  int decomposed = 0;
  std::vector<double> values;
  for (int k = 0; k < 20; ++k) values.push_back(k / 19.0);
  for (double s : values) {
    const Density rho = isotropic(2, s);
    l1_err = std::max(l1_err, std::abs(coefficients(rho).off_identity_l1 - 3 * s));
  }
  values.push_back(1.0 / 3.0);
  for (double s : values) {
    if (s > 1.0 / 3.0) continue;
    const Density rho = isotropic(2, s);
    const auto terms = prop41_decompose(rho);
    double weight = 0;
    for (const auto& t : terms) weight += t.weight;
    recon_err = std::max(recon_err, frobenius_distance(assemble(terms, rho.dims()), rho.matrix()));
    recon_err = std::max(recon_err, std::abs(weight - 1));
    ++decomposed;
  }
  rec.at_most("max|off_identity_l1 - 3s| over 20 s", l1_err, 1e-12);
  rec.equal("decompositions for s<=1/3", decomposed, 8, 0);
  rec.at_most("max reconstruction error (Frobenius)", recon_err, 1e-9);
}

// 3. Ball and eigenvalue certificates at N = 4.
void certify_suite(Recorder& rec, const AcceptanceOptions&) {
  const DimensionSpec dims{2, 2};
  const double one_fifteenth = 1.0 / 15.0;
  rec.holds("ball_certify(1/15 - ulp)", ball_certify(dims, std::nextafter(one_fifteenth, 0.0)));
  rec.holds("!ball_certify(1/15)", !ball_certify(dims, one_fifteenth));

  double lo = 0, hi = 1;
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (ball_certify(dims, mid) ? lo : hi) = mid;
  }
  rec.equal("ball_certify threshold", hi, one_fifteenth, 0);

  lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (eigen_certify(isotropic(2, mid)) ? lo : hi) = mid;
  }
  rec.equal("eigen_certify flip point", 0.5 * (lo + hi), one_fifteenth, 1e-12);
  // The flip is where the smallest eigenvalue (1 - s)/4 meets 1/(N + N/(N^2 - 2)) = 7/30.
  const double lmin = jacobi_min_eigenvalue(isotropic(2, 0.5 * (lo + hi)).matrix());
  rec.equal("min eigenvalue at flip (reference)", lmin, 7.0 / 30.0, 1e-12);
}

// 4. Maximally entangled states.
void maxent_suite(Recorder& rec, const AcceptanceOptions& opt) {
  const double printed[] = {0.57735, 0.70711, 0.77460, 0.81650};
  for (int d = 2; d <= 5; ++d) {
    const NearestResult nr = nearest_max_entangled(d);
    const double formula = std::sqrt(1 - 2.0 / (d + 1));
    rec.equal("measure[d=" + std::to_string(d) + "] vs printed value", nr.measure, printed[d - 2], 5e-6);
    const VerifyReport vr = verify(nr, opt.seed + d, opt.threads);
    rec.at_most("verify_nearest max residual[d=" + std::to_string(d) + "]", vr.max_residual, 1e-10);
    rec.equal("verify_nearest samples[d=" + std::to_string(d) + "]", std::min<double>(vr.evaluated, 1e4), 1e4, 0);
    rec.equal("oracle distance[d=" + std::to_string(d) + "]",
              oracle_distance(nr.rho, kBudget, opt.seed + d, opt.threads), formula, 1e-3);
  }
}

// 5. GHZ states.
void ghz_suite(Recorder& rec, const AcceptanceOptions& opt) {
  double formula_err = 0;
  for (int n = 2; n <= 5; ++n) {
    const double r = std::ldexp(1.0, n - 1);
    const double formula = std::sqrt(1 - 1 / (r * r - r + 1)) / std::sqrt(2.0);
    formula_err = std::max(formula_err, std::abs(ghz_nearest(n).measure - formula));
  }
  rec.at_most("max|measure - formula| n=2..5", formula_err, 1e-12);
  rec.equal("measure[n=2]", ghz_nearest(2).measure, 1 / std::sqrt(3.0), 1e-12);
  rec.equal("measure[n=3]", ghz_nearest(3).measure, 0.679366, 5e-7);

  double min_f = std::numeric_limits<double>::infinity(), group_err = 0, group_min = min_f;
  std::size_t samples = 0;
  for (int n = 2; n <= 5; ++n) {
    Rng rng = make_rng(opt.seed, 500 + n);
    const DimensionSpec dims = DimensionSpec::uniform(2, n);
    for (int i = 0; i < 25000; ++i, ++samples) {
      const ProductKet ket = random_product_ket(dims, rng);
      const double f = ghz_f_value(ket);
      double sum = 0;
      for (double g : ghz_f_groups(ket)) {
        sum += g;
        group_min = std::min(group_min, g);
      }
      min_f = std::min(min_f, f);
      group_err = std::max(group_err, std::abs(sum - f));
    }
  }
  rec.equal("random product kets", double(samples), 1e5, 0);
  rec.at_least("min F over samples", min_f, -1e-12);
  rec.at_most("max|sum of groups - F|", group_err, 1e-12);
  rec.at_least("min group value", group_min, -1e-12);

  for (int n = 2; n <= 3; ++n) {
    const NearestResult nr = ghz_nearest(n);
    rec.equal("oracle distance[n=" + std::to_string(n) + "]",
              oracle_distance(nr.rho, kBudget, opt.seed + n, opt.threads), nr.measure, 1e-3);
  }
}

// 6. Two-qubit rho_a region.
void qubit_region_suite(Recorder& rec, const AcceptanceOptions& opt) {
  const double edge = 0.5 + std::sqrt(5.0) / 6.0;
  double min_eig = std::numeric_limits<double>::infinity(), max_residual = -min_eig, oracle_err = 0, formula_err = 0;
  int ppt_separable = 0, points = 0;
  for (int k = 0; k < 50; ++k) {
    const double a0sq = 0.5 + (edge - 0.5) * k / 49.0;
    const AmplitudeVector a = AmplitudeVector::qubit(a0sq);
    const NearestResult nr = nearest_rho_a_qubit(a);
    const double expected = 2 * a[0] * a[1] / std::sqrt(3.0);
    formula_err = std::max(formula_err, std::abs(nr.measure - expected));
    min_eig = std::min(min_eig, jacobi_min_eigenvalue(nr.tau0.matrix()));
    ppt_separable += ppt_verdict(nr.tau0).verdict == PptVerdict::Separable;
    max_residual = std::max(max_residual, verify(nr, opt.seed + k, opt.threads).max_residual);
    oracle_err = std::max(oracle_err,
                          std::abs(oracle_distance(nr.rho, kBudget, opt.seed + k, opt.threads) - expected));
    ++points;
  }
  rec.equal("grid points", points, 50, 0);
  rec.at_most("max|measure - 2 a0 a1/sqrt3|", formula_err, 1e-12);
  rec.at_least("min eigenvalue of tau_a over grid", min_eig, -1e-10);
  rec.equal("grid points with PPT verdict Separable", ppt_separable, 50, 0);
  rec.at_most("max verify_nearest residual over grid", max_residual, 1e-10);
  rec.at_most("max|oracle - 2 a0 a1/sqrt3| over grid", oracle_err, 1e-3);

  const double edge_eig = jacobi_min_eigenvalue(qubit_parallel_candidate(AmplitudeVector::qubit(edge)));
  rec.equal("min eigenvalue at a0^2 = 1/2 + sqrt5/6", edge_eig, 0, 1e-9);
  const double out_eig = jacobi_min_eigenvalue(qubit_parallel_candidate(AmplitudeVector::qubit(edge + 0.01)));
  rec.at_most("min eigenvalue at a0^2 = 1/2 + sqrt5/6 + 0.01", out_eig, -default_tolerances.psd);
}

// 7. Three-level rho_a example.
void qudit_suite(Recorder& rec, const AcceptanceOptions& opt) {
  const AmplitudeVector a({std::sqrt(5.0 / 12), std::sqrt(4.0 / 12), std::sqrt(3.0 / 12)});
  // a0 a2 / 2 <= a2^2 - a*a / 12, evaluated directly.
  const double pair_sum = a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
  rec.at_least("a2^2 - a*a/12 - a0 a2/2", a[2] * a[2] - pair_sum / 12 - a[0] * a[2] / 2, 0);
  rec.holds("d3_sufficient", d3_sufficient(a));
  const QuditNearest q = nearest_rho_a_qudit(a);
  rec.holds("hull membership Feasible", q.membership.status == FeasibilityStatus::Feasible);
  rec.at_most("hull residual", q.membership.residual, 1e-10);
  double usum = 0;
  for (const auto& [jk, u] : q.adjustment.u) usum += u;
  rec.equal("sum u_jk", usum, 0, 1e-15);
  rec.holds("validity Proven", q.nearest.validity == Validity::Proven);
  rec.at_most("verify_nearest max residual", verify(q.nearest, opt.seed, opt.threads).max_residual, 1e-10);
  const double measure = qudit_measure(q.adjustment, 3);
  rec.equal("measure vs ||rho_a - tau_a||", measure, frobenius_distance(q.nearest.rho, q.nearest.tau0), 1e-12);
  rec.equal("oracle distance", oracle_distance(q.nearest.rho, kBudget, opt.seed, opt.threads), measure, 1e-3);
}

// 8. The V system and its q solutions.
void hull_suite(Recorder& rec, const AcceptanceOptions&) {
  const double f = 0.25, h = 0.5, n = 1.0 / 9.0;
  Eigen::MatrixXd printed(6, 7);
  printed << 1, 0, 0, f, 0, f, n,
             0, 1, 0, f, f, 0, n,
             0, 0, 1, 0, f, f, n,
             0, 0, 0, h, 0, 0, n,
             0, 0, 0, 0, h, 0, n,
             0, 0, 0, 0, 0, h, n;
  const XColumnSet v3 = build_v(3);
  const bool shape = v3.columns.rows() == 6 && v3.columns.cols() == 7;
  rec.holds("build_v(3) is 6x7", shape);
  rec.equal("max entry difference vs printed V", shape ? (v3.columns - printed).cwiseAbs().maxCoeff() : 1.0, 0, 0);
  // The printed last column has 1/9 on the pair rows; its definition
  // (2 x_i x_j with x = 1/3) and unit column sums give 2/9 there.
  Eigen::MatrixXd defined = printed;
  defined.block(3, 6, 3, 1).setConstant(2.0 / 9.0);
  rec.equal("max entry difference vs V with 2/9 pair entries",
            shape ? (v3.columns - defined).cwiseAbs().maxCoeff() : 1.0, 0, 0);
  rec.equal("max|column sum - 1|", (v3.columns.colwise().sum().array() - 1).abs().maxCoeff(), 0, 1e-15);

  double min_q = std::numeric_limits<double>::infinity(), sum_err = 0, harmonic_err = 0, hull_err = 0, min_p = min_q;
  for (int d = 3; d <= 8; ++d) {
    const Eigen::VectorXd q = solve_q(d);
    double harmonic = 0;
    for (int k = 1; k <= d; ++k) harmonic += q(k - 1) / k;
    min_q = std::min(min_q, q.minCoeff());
    sum_err = std::max(sum_err, std::abs(q.sum() - 1));
    harmonic_err = std::max(harmonic_err, std::abs(harmonic - 2.0 / (d + 1)));
    const XColumnSet v = build_v(d);
    const Eigen::VectorXd p = weights_from_q(v, q);
    const Eigen::VectorXd t0 = Eigen::VectorXd::Constant(v.columns.rows(), 2.0 / (d * (d + 1.0)));
    hull_err = std::max(hull_err, (v.columns * p - t0).cwiseAbs().maxCoeff());
    hull_err = std::max(hull_err, std::abs(p.sum() - 1));
    min_p = std::min(min_p, p.minCoeff());
  }
  rec.at_least("min q_k over d=3..8", min_q, 1e-12);
  rec.at_most("max|sum q - 1|", sum_err, 1e-12);
  rec.at_most("max|sum_{k>=1} q_k/k - 2/(d+1)|", harmonic_err, 1e-12);
  rec.at_most("max|V p(q) - T(0)|", hull_err, 1e-12);
  rec.at_least("min p(q)", min_p, 0);

  const FeasibilityResult fr = convex_weights(v3.columns, Eigen::VectorXd::Constant(6, 1.0 / 6));
  rec.holds("d=3 T(0) Feasible", fr.status == FeasibilityStatus::Feasible);
  rec.at_most("d=3 T(0) residual", fr.residual, 1e-10);
}

// 9. The two-qubit witness.
void witness_suite(Recorder& rec, const AcceptanceOptions& opt) {
  const Witness w = max_entangled_witness(2);
  ComplexMatrix printed = ComplexMatrix::Zero(4, 4);
  printed(0, 3) = printed(3, 0) = -1;
  printed(1, 1) = printed(2, 2) = 1;
  printed *= 1.0 / 3.0;
  rec.equal("max|A0 - printed|", (w.matrix - printed).cwiseAbs().maxCoeff(), 0, 0);
  rec.equal("c0", w.c0, 1.0 / 6.0, 1e-15);

  double err = 0;
  for (int k = 0; k < 20; ++k) {
    const AmplitudeVector a = AmplitudeVector::qubit(0.5 + 0.5 * k / 19.0);
    err = std::max(err, std::abs(detect(w, rho_a(a)).value + 2.0 / 3.0 * a[0] * a[1]));
  }
  rec.at_most("max|Tr(A0 rho_a) + (2/3) a0 a1| over 20 pairs", err, 1e-12);

  const SoundnessReport s = witness_soundness(w, 100000, opt.seed, opt.threads);
  rec.equal("soundness samples", double(s.samples), 1e5, 0);
  rec.at_least("min Tr(A0 pi) over product samples", s.min_value, -1e-10);
  rec.equal("tau0 vs rho(1/3)", frobenius_distance(w.tau0.matrix(), isotropic(2, 1.0 / 3.0).matrix()), 0, 1e-15);
  rec.holds("optimality_sufficient", optimality_sufficient(w));
}

// 10. Measure properties on random two-qubit densities.
void properties_suite(Recorder& rec, const AcceptanceOptions& opt) {
  const DimensionSpec dims{2, 2};
  constexpr int count = 50;
  std::vector<Density> states;
  std::vector<double> est;
  for (int i = 0; i < count; ++i) {
    Rng rng = make_rng(opt.seed, 1000 + i);
    states.push_back(random_density(dims, rng));
    est.push_back(oracle_distance(states.back(), kBudget, opt.seed + i, opt.threads));
  }
  double convexity = -1, dephasing = -1, unitary = 0;
  for (int i = 0; i < count; ++i) {
    Rng rng = make_rng(opt.seed, 2000 + i);
    const int j = (i + 1) % count;
    const double t = std::uniform_real_distribution<double>(0, 1)(rng);
    const double mixed = oracle_distance(mix(t, states[i], states[j]), kBudget, opt.seed + i, opt.threads);
    convexity = std::max(convexity, mixed - (t * est[i] + (1 - t) * est[j]));

    const double dephased = oracle_distance(dephase_local(states[i]), kBudget, opt.seed + i, opt.threads);
    dephasing = std::max(dephasing, dephased - est[i]);

    const ComplexMatrix u = random_local_unitary(dims, rng);
    const Density rotated(dims, hermitize(ComplexMatrix(u * states[i].matrix() * u.adjoint())));
    const double moved = oracle_distance(rotated, kBudget, opt.seed + i, opt.threads);
    unitary = std::max(unitary, std::abs(moved - est[i]));
  }
  rec.at_most("max convexity violation", convexity, 2e-3);
  rec.at_most("max dephasing increase", dephasing, 2e-3);
  rec.at_most("max local-unitary change", unitary, 2e-3);
}

struct Suite {
  std::string name;
  double limit;
  void (*run)(Recorder&, const AcceptanceOptions&);
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"isotropic", 1, isotropic_suite},       {"prop41", 1, prop41_suite},
      {"certify", 1, certify_suite},           {"maxent", 60, maxent_suite},
      {"ghz", 120, ghz_suite},                 {"qubit-region", 60, qubit_region_suite},
      {"qudit", 30, qudit_suite},              {"hull", 1, hull_suite},
      {"witness", 30, witness_suite},          {"properties", 300, properties_suite},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, const AcceptanceOptions& options) {
  const auto& all = suites();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].name != name) continue;
    SuiteReport report{all[i].name, static_cast<int>(i + 1), {}, 0, all[i].limit};
    Recorder rec(report, options);
    const auto start = std::chrono::steady_clock::now();
    try {
      all[i].run(rec, options);
    } catch (const std::exception& e) {
      rec.holds(std::string("no exception: ") + e.what(), false);
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.at_most("runtime_s", report.seconds, report.time_limit);
    return report;
  }
  throw std::invalid_argument("unknown acceptance suite '" + std::string(name) + "'");
}

}  // namespace sepkit::checks
