#include "sepkit/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepkit/checks/acceptance.hpp"
#include "sepkit/closed_forms.hpp"
#include "sepkit/hull.hpp"
#include "sepkit/io.hpp"
#include "sepkit/oracle.hpp"
#include "sepkit/ppt.hpp"
#include "sepkit/tensor.hpp"
#include "sepkit/unitary_basis.hpp"
#include "sepkit/witness.hpp"

namespace sepkit::cli {

using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed_value = 0;
  CLI::Option* seed = nullptr;
  int threads = 1;
  double tol_psd = default_tolerances.psd;
  double tol_face = default_tolerances.face;
  double oracle_tol = default_tolerances.oracle;
  bool pretty = false;

  std::uint64_t resolved_seed() const {
    if (seed && seed->count() > 0) return seed_value;
    if (const char* env = std::getenv("SEPKIT_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string("SEPKIT_SEED is not an unsigned integer: ") + env);
      }
    }
    return 0;
  }

  Tolerances tolerances() const {
    Tolerances t = default_tolerances;
    t.psd = tol_psd;
    t.face = tol_face;
    t.oracle = oracle_tol;
    return t;
  }
};

json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

void emit(std::ostream& out, const json& j, bool pretty) { out << (pretty ? j.dump(2) : j.dump()) << '\n'; }

json ket_to_json(const ProductKet& ket) {
  json factors = json::array();
  for (const auto& f : ket.factors()) {
    json v = json::array();
    for (Eigen::Index i = 0; i < f.size(); ++i) v.push_back({f(i).real(), f(i).imag()});
    factors.push_back(std::move(v));
  }
  return factors;
}

json verify_to_json(const VerifyReport& v) {
  return {{"max_residual", v.max_residual}, {"evaluated", v.evaluated}, {"seed", v.seed}, {"pass", v.pass}};
}

json nearest_to_json(const NearestResult& r, const std::optional<VerifyReport>& v) {
  json j = {{"family", to_string(r.family)},
            {"validity", to_string(r.validity)},
            {"measure", r.measure},
            {"rho", density_to_json(r.rho)},
            {"tau0", density_to_json(r.tau0)}};
  if (v) j["residual"] = verify_to_json(*v);
  return j;
}

json oracle_to_json(const OracleResult& r, bool atoms) {
  json j = {{"distance", r.distance},     {"gap", r.gap}, {"iterations", r.iterations},
            {"converged", r.converged},   {"seed", r.seed}, {"atom_count", r.atoms.size()},
            {"tau", density_to_json(r.tau)}};
  if (atoms) {
    json list = json::array();
    for (const auto& a : r.atoms) list.push_back({{"weight", a.weight}, {"factors", ket_to_json(a.ket)}});
    j["atoms"] = std::move(list);
  }
  return j;
}

VerifyReport run_verify(const NearestResult& r, const Globals& g, std::size_t samples) {
  VerifyOptions vo;
  vo.samples = samples;
  vo.seed = g.resolved_seed();
  vo.threads = g.threads;
  vo.tolerance = g.tol_face;
  vo.extra_candidates = face_candidates(r, vo.seed);
  return verify_nearest(r.rho, r.tau0, vo);
}

AmplitudeVector amplitudes(int d, const std::vector<double>& amps) {
  if (amps.empty()) return AmplitudeVector::uniform(d);
  if (static_cast<int>(amps.size()) != d)
    throw ValidationError(Invariant::Amplitudes,
                          "expected " + std::to_string(d) + " amplitudes, got " + std::to_string(amps.size()));
  return AmplitudeVector::normalized(amps);
}

struct FamilyArgs {
  std::string family;
  int d = 2;
  int n = 2;
  std::vector<double> amps;
};

NearestResult closed_form(const FamilyArgs& f) {
  if (f.family == "maxent") return nearest_max_entangled(f.d);
  if (f.family == "ghz") return ghz_nearest(f.n);
  if (f.family == "rhoa") {
    const AmplitudeVector a = amplitudes(f.d, f.amps);
    return a.dim() == 2 ? nearest_rho_a_qubit(a) : nearest_rho_a_qudit(a).nearest;
  }
  throw std::invalid_argument("unknown family '" + f.family + "' (maxent, rhoa, ghz)");
}

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.family, "maxent, rhoa or ghz")->required();
  cmd->add_option("-d,--dim", f.d, "local dimension (maxent, rhoa)")->check(CLI::Range(2, 64));
  cmd->add_option("-n,--qubits", f.n, "number of qubits (ghz)")->check(CLI::Range(2, 12));
  cmd->add_option("--amps,--amplitudes", f.amps, "rhoa amplitudes, normalized on input");
}

// Recognizes the closed-form families so analyze --nearest can dispatch.
std::optional<NearestResult> detect_family(const Density& rho) {
  const auto& dims = rho.dims();
  const auto f = dims.factors();
  const bool all_qubits = std::all_of(f.begin(), f.end(), [](int d) { return d == 2; });
  if (dims.count() >= 3 && all_qubits && (rho.matrix() - ghz(dims.count()).matrix()).norm() <= 1e-12)
    return ghz_nearest(dims.count());
  if (dims.count() != 2 || f[0] != f[1]) return std::nullopt;
  const int d = f[0];
  std::vector<double> a(d);
  for (int k = 0; k < d; ++k) a[k] = std::sqrt(std::max(0.0, rho.matrix()(k * d + k, k * d + k).real()));
  if (!std::is_sorted(a.rbegin(), a.rend())) return std::nullopt;
  double sq = 0;
  for (double x : a) sq += x * x;
  if (std::abs(sq - 1) > 1e-12) return std::nullopt;
  const AmplitudeVector amp(a);
  if ((rho.matrix() - rho_a(amp).matrix()).norm() > 1e-12) return std::nullopt;
  if ((rho.matrix() - max_entangled(d).matrix()).norm() <= 1e-12) return nearest_max_entangled(d);
  return d == 2 ? nearest_rho_a_qubit(amp) : nearest_rho_a_qudit(amp).nearest;
}

// -- subcommands -------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::vector<std::string> params;
  std::vector<double> amps;
  std::string output;
};

int cmd_gen(const GenArgs& a, const Globals& g, std::ostream& out) {
  auto param = [&](std::size_t i, const char* what) -> const std::string& {
    if (i >= a.params.size()) throw std::invalid_argument("gen " + a.family + ": missing " + what);
    return a.params[i];
  };
  auto integer = [&](std::size_t i, const char* what) {
    const std::string& s = param(i, what);
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(std::string("gen: ") + what + " must be an integer, got " + s);
    return v;
  };
  const auto density = [&]() -> Density {
    if (a.family == "maxent") return max_entangled(integer(0, "d"));
    if (a.family == "ghz") return ghz(integer(0, "n"));
    if (a.family == "isotropic") return isotropic(integer(0, "d"), std::stod(param(1, "s")));
    if (a.family == "rhoa") {
      const int d = integer(0, "d");
      std::vector<double> amps = a.amps;
      for (std::size_t i = 1; i < a.params.size(); ++i) amps.push_back(std::stod(a.params[i]));
      return rho_a(amplitudes(d, amps));
    }
    if (a.family == "file") return load_density(param(0, "path"), g.tolerances());
    throw std::invalid_argument("gen: unknown family '" + a.family + "' (maxent, ghz, rhoa, isotropic, file)");
  }();
  if (a.output.empty() || a.output == "-") {
    emit(out, density_to_json(density), g.pretty);
  } else {
    save_density(a.output, density);
  }
  return kSuccess;
}

struct AnalyzeArgs {
  std::string input;
  bool oracle = false;
  bool nearest = false;
  int budget = 10000;
  std::size_t samples = 10000;
};

int cmd_analyze(const AnalyzeArgs& a, const Globals& g, std::ostream& out) {
  const Density rho = load_density(a.input, g.tolerances());
  const PptReport ppt = ppt_verdict(rho, g.tol_psd, g.threads);
  const Prop41Certificate cert = prop41_certify(rho);
  if (ppt.verdict == PptVerdict::Entangled && cert.verdict == CertificateVerdict::CertifiedSeparable)
    throw std::logic_error("inconsistent verdicts: PPT entangled but l1-certified separable");

  json report = {
      {"input", {{"path", a.input}, {"dims", rho.dims().to_string()}}},
      {"ppt", {{"verdict", to_string(ppt.verdict)}, {"min_eigenvalues", ppt.min_eigenvalues}}},
      {"prop41",
       {{"verdict", cert.verdict == CertificateVerdict::CertifiedSeparable ? "CertifiedSeparable" : "Inconclusive"},
        {"off_identity_l1", cert.off_identity_l1}}},
      {"eigen_certify", eigen_certify(rho)},
      {"probe_t_max", number(max_probe_t(rho))},
  };

  bool converged = true;
  if (a.nearest) {
    try {
      if (auto nr = detect_family(rho)) {
        const VerifyReport v = run_verify(*nr, g, a.samples);
        report["nearest"] = nearest_to_json(*nr, v);
        const Witness w = witness_from_nearest(nr->rho, nr->tau0);
        const Detection det = detect(w, rho);
        report["witness"] = {{"c0", w.c0}, {"value", det.value}, {"detected", det.detected}};
      } else {
        report["nearest"] = nullptr;
      }
    } catch (const RegionError& e) {
      report["nearest"] = {{"error", e.what()}};
    }
  }
  if (a.oracle) {
    const MeasureEstimate m = measure_estimate(rho, a.budget, g.resolved_seed(), g.oracle_tol, g.threads);
    report["oracle"] = oracle_to_json(m.certificate, false);
    converged = m.certificate.converged;
  }
  emit(out, report, g.pretty);
  return converged ? kSuccess : kNonConvergence;
}

struct NearestArgs {
  FamilyArgs family;
  std::size_t samples = 10000;
};

int cmd_nearest(const NearestArgs& a, const Globals& g, std::ostream& out) {
  const NearestResult r = closed_form(a.family);
  const VerifyReport v = run_verify(r, g, a.samples);
  emit(out, nearest_to_json(r, v), g.pretty);
  return kSuccess;
}

struct WitnessArgs {
  std::string from = "nearest";
  FamilyArgs family;
  std::string rho_path, tau_path;
  std::size_t samples = 100000;
};

int cmd_witness(const WitnessArgs& a, const Globals& g, std::ostream& out) {
  Witness w = [&] {
    if (a.from == "nearest") {
      if (a.family.family == "maxent") return max_entangled_witness(a.family.d);
      const NearestResult r = closed_form(a.family);
      return witness_from_nearest(r.rho, r.tau0);
    }
    if (a.from == "file") {
      if (a.rho_path.empty() || a.tau_path.empty())
        throw std::invalid_argument("witness --from file needs --rho and --tau");
      return witness_from_nearest(load_density(a.rho_path, g.tolerances()), load_density(a.tau_path, g.tolerances()));
    }
    throw std::invalid_argument("witness: --from must be 'nearest' or 'file'");
  }();
  const SoundnessReport s = witness_soundness(w, a.samples, g.resolved_seed(), g.threads);
  const json report = {
      {"matrix", matrix_to_json(w.matrix)},
      {"dims", std::vector<int>(w.rho0.dims().factors().begin(), w.rho0.dims().factors().end())},
      {"c0", w.c0},
      {"scale", w.scale},
      {"value_on_rho0", detect(w, w.rho0).value},
      {"optimal", optimality_sufficient(w, {}, 1e-8, g.tol_face)},
      {"soundness", {{"min_value", s.min_value}, {"samples", s.samples}, {"seed", s.seed}, {"pass", s.pass}}},
  };
  emit(out, report, g.pretty);
  return kSuccess;
}

struct MeasureArgs {
  std::string input;
  int budget = 10000;
  bool no_atoms = false;
};

int cmd_measure(const MeasureArgs& a, const Globals& g, std::ostream& out) {
  const Density rho = load_density(a.input, g.tolerances());
  const MeasureEstimate m = measure_estimate(rho, a.budget, g.resolved_seed(), g.oracle_tol, g.threads);
  json report = oracle_to_json(m.certificate, !a.no_atoms);
  report["upper"] = m.upper;
  emit(out, report, g.pretty);
  return m.certificate.converged ? kSuccess : kNonConvergence;
}

struct HullArgs {
  int d = 3;
  std::vector<double> amps;
};

int cmd_hull(const HullArgs& a, const Globals& g, std::ostream& out) {
  const AmplitudeVector amp = amplitudes(a.d, a.amps);
  const FeasibilityResult r = membership(amp);
  json report = {{"d", a.d},
                 {"status", to_string(r.status)},
                 {"p", std::vector<double>(r.p.data(), r.p.data() + r.p.size())},
                 {"residual", r.residual},
                 {"iterations", r.iterations}};
  if (a.d == 3) report["d3_sufficient"] = d3_sufficient(amp);
  emit(out, report, g.pretty);
  return kSuccess;
}

int cmd_basis(const std::string& input, const Globals& g, std::ostream& out) {
  const Density rho = load_density(input, g.tolerances());
  const CoefficientVector c = coefficients(rho);
  json records = json::array();
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    records.push_back({{"index", {c.indices[i].shift, c.indices[i].clock}},
                       {"re", c.values[i].real()},
                       {"im", c.values[i].imag()},
                       {"abs", std::abs(c.values[i])}});
  }
  emit(out, {{"coefficients", std::move(records)}, {"off_identity_l1", c.off_identity_l1}}, g.pretty);
  return kSuccess;
}

struct ProbeArgs {
  std::string input;
  double t = 0;
  CLI::Option* t_option = nullptr;
};

int cmd_probe(const ProbeArgs& a, const Globals& g, std::ostream& out) {
  const Density rho = load_density(a.input, g.tolerances());
  json report = {{"probe_t_max", number(max_probe_t(rho))}, {"min_eigenvalue", min_eigenvalue(rho)}};
  if (a.t_option->count() > 0) {
    const ComplexMatrix p = entanglement_probe(rho, a.t);
    const double lmin = min_eigenvalue(p);
    report["probe"] = {{"t", a.t}, {"min_eigenvalue", lmin}, {"psd", lmin >= -g.tol_psd}};
  }
  emit(out, report, g.pretty);
  return kSuccess;
}

int cmd_acceptance(const std::string& suite, const Globals& g, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = checks::suite_names();
  } else {
    names.push_back(suite);
  }
  checks::AcceptanceOptions opt;
  opt.seed = g.resolved_seed();
  opt.threads = g.threads;
  opt.on_check = [&](const std::string& s, const checks::CheckResult& c) {
    if (g.pretty) {
      out << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(14) << s << c.name << "  measured "
          << c.measured << ", expected " << checks::to_string(c.relation) << ' ' << c.expected;
      if (c.relation == checks::Relation::Equal) out << " +/- " << c.tolerance;
      out << '\n';
    } else {
      out << checks::to_json(s, c).dump() << '\n';
    }
    out.flush();
  };
  bool all_pass = true;
  for (const auto& name : names) {
    const checks::SuiteReport r = checks::run_suite(name, opt);
    all_pass = all_pass && r.pass();
    const json summary = {{"suite", r.suite},     {"criterion", r.criterion}, {"pass", r.pass()},
                          {"seconds", r.seconds}, {"time_limit", r.time_limit}};
    if (g.pretty) {
      out << (r.pass() ? "PASS" : "FAIL") << "  criterion " << r.criterion << " (" << r.suite << ")  " << r.seconds
          << " s\n";
    } else {
      out << summary.dump() << '\n';
    }
  }
  return all_pass ? kSuccess : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability toolkit: exact tests, closed-form nearest separable states, witnesses and a numerical "
               "nearest-point oracle."};
  app.name("sepkit");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.seed = app.add_option("--seed", g.seed_value, "random seed (default: $SEPKIT_SEED, then 0)");
  app.add_option("--threads", g.threads, "worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("--tol-psd", g.tol_psd, "PSD tolerance on the smallest eigenvalue")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-face", g.tol_face, "face residual tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--oracle-tol", g.oracle_tol, "oracle duality-gap tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--pretty", g.pretty, "human-readable output");

  std::function<int()> action;

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "generate a density file");
  c_gen->add_option("family", gen.family, "maxent | ghz | rhoa | isotropic | file")->required();
  c_gen->add_option("params", gen.params, "family parameters: d | n | d a... | d s | path");
  c_gen->add_option("--amps,--amplitudes", gen.amps, "rhoa amplitudes, normalized on input");
  c_gen->add_option("-o,--output", gen.output, "output path (default stdout)");
  c_gen->callback([&] { action = [&] { return cmd_gen(gen, g, out); }; });

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "run the separability tests on a density file");
  c_analyze->add_option("input", analyze.input, "density JSON file")->required();
  c_analyze->add_flag("--oracle", analyze.oracle, "estimate the measure numerically");
  c_analyze->add_flag("--nearest", analyze.nearest, "closed-form nearest state for recognized families");
  c_analyze->add_option("--budget", analyze.budget, "oracle iteration budget")->check(CLI::NonNegativeNumber);
  c_analyze->add_option("--samples", analyze.samples, "verification samples");
  c_analyze->callback([&] { action = [&] { return cmd_analyze(analyze, g, out); }; });

  NearestArgs nearest;
  auto* c_nearest = app.add_subcommand("nearest", "closed-form nearest separable state");
  add_family_options(c_nearest, nearest.family);
  c_nearest->add_option("--samples", nearest.samples, "verification samples");
  c_nearest->callback([&] { action = [&] { return cmd_nearest(nearest, g, out); }; });

  WitnessArgs witness;
  auto* c_witness = app.add_subcommand("witness", "entanglement witness from a nearest separable state");
  c_witness->add_option("--from", witness.from, "nearest | file");
  add_family_options(c_witness, witness.family);
  c_witness->get_option("--family")->required(false);
  c_witness->add_option("--rho", witness.rho_path, "entangled density file (--from file)");
  c_witness->add_option("--tau", witness.tau_path, "nearest separable density file (--from file)");
  c_witness->add_option("--samples", witness.samples, "soundness samples");
  c_witness->callback([&] { action = [&] { return cmd_witness(witness, g, out); }; });

  MeasureArgs measure;
  auto* c_measure = app.add_subcommand("measure", "numerical nearest separable state");
  c_measure->add_option("input", measure.input, "density JSON file")->required();
  c_measure->add_option("--budget", measure.budget, "iteration budget")->check(CLI::NonNegativeNumber);
  c_measure->add_flag("--no-atoms", measure.no_atoms, "omit the atom list");
  c_measure->callback([&] { action = [&] { return cmd_measure(measure, g, out); }; });

  HullArgs hull;
  auto* c_hull = app.add_subcommand("hull-check", "face membership of the rho_a candidate");
  c_hull->add_option("-d,--dim", hull.d, "local dimension")->check(CLI::Range(2, 12));
  c_hull->add_option("--amps,--amplitudes", hull.amps, "amplitudes, normalized on input");
  c_hull->callback([&] { action = [&] { return cmd_hull(hull, g, out); }; });

  std::string basis_input;
  auto* c_basis = app.add_subcommand("basis-coeffs", "coefficients in the unitary basis");
  c_basis->add_option("input", basis_input, "density JSON file")->required();
  c_basis->callback([&] { action = [&] { return cmd_basis(basis_input, g, out); }; });

  ProbeArgs probe;
  auto* c_probe = app.add_subcommand("probe", "entanglement probe (1 + t) rho - t D0");
  c_probe->add_option("input", probe.input, "density JSON file")->required();
  probe.t_option = c_probe->add_option("--t", probe.t, "evaluate the probe at this t");
  c_probe->callback([&] { action = [&] { return cmd_probe(probe, g, out); }; });

  std::string suite;
  auto* c_accept = app.add_subcommand("acceptance", "run acceptance checks");
  c_accept->add_option("suite", suite, "suite name or 'all'")->required();
  c_accept->callback([&] { action = [&] { return cmd_acceptance(suite, g, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kValidation;
  }

  auto fail = [&](int code, std::string_view kind, const std::string& msg, const char* invariant = nullptr) {
    json j = {{"error", kind}, {"message", msg}};
    if (invariant) j["invariant"] = invariant;
    err << j.dump() << '\n';
    return code;
  };
  try {
    return action ? action() : kValidation;
  } catch (const ValidationError& e) {
    const std::string inv(to_string(e.invariant()));
    return fail(kValidation, "validation", e.what(), inv.c_str());
  } catch (const RegionError& e) {
    return fail(kValidation, "region", e.what());
  } catch (const PreconditionError& e) {
    return fail(kValidation, "precondition", e.what());
  } catch (const DimensionError& e) {
    return fail(kValidation, "dimension", e.what());
  } catch (const SolverError& e) {
    return fail(kNonConvergence, "solver", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kValidation, "usage", e.what());
  } catch (const std::out_of_range& e) {
    return fail(kValidation, "usage", e.what());
  } catch (const std::exception& e) {
    return fail(kFailure, "internal", e.what());
  }
}

}  // namespace sepkit::cli
