#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sepkit/cli.hpp"
#include "sepkit/io.hpp"
#include "sepkit/tensor.hpp"
#include "support.hpp"

using namespace sepkit;
using sepkit::test::max_abs_diff;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sepkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sepkit_cli_" + name)).string();
}

nlohmann::json last_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return nlohmann::json::parse(last);
}

}  // namespace

TEST_CASE("gen writes densities that read back exactly") {
  const std::string path = temp_file("iso.json");
  REQUIRE(run({"gen", "isotropic", "2", "0.333333", "-o", path}).code == cli::kSuccess);
  CHECK(max_abs_diff(load_density(path).matrix(), isotropic(2, 0.333333).matrix()) <= 1e-15);

  const Run maxent = run({"gen", "maxent", "2"});
  CHECK(maxent.code == cli::kSuccess);
  CHECK(max_abs_diff(parse_density(maxent.out).matrix(), max_entangled(2).matrix()) == 0.0);

  const Run rhoa = run({"gen", "rhoa", "3", "--amps", "0.6455", "0.5774", "0.5"});
  CHECK(rhoa.code == cli::kSuccess);
  CHECK(std::real(parse_density(rhoa.out).matrix().trace()) == doctest::Approx(1.0));

  const Run ghz3 = run({"gen", "ghz", "3"});
  CHECK(max_abs_diff(parse_density(ghz3.out).matrix(), ghz(3).matrix()) == 0.0);

  const Run pass = run({"gen", "file", path});
  CHECK(max_abs_diff(parse_density(pass.out).matrix(), load_density(path).matrix()) == 0.0);
}

TEST_CASE("gen rejects bad parameters") {
  CHECK(run({"gen", "isotropic", "2", "1.5"}).code == cli::kValidation);
  CHECK(run({"gen", "nosuch", "2"}).code == cli::kValidation);
  CHECK(run({"gen", "maxent"}).code == cli::kValidation);
  CHECK(run({"gen", "rhoa", "2", "--amps", "0.1", "0.9"}).code == cli::kValidation);
}

TEST_CASE("analyze reports verdicts") {
  const std::string third = temp_file("third.json"), half = temp_file("half.json"), mixed = temp_file("d0.json");
  save_density(third, isotropic(2, 1.0 / 3.0));
  save_density(half, isotropic(2, 0.5));
  save_density(mixed, maximally_mixed(DimensionSpec{2, 2}));

  const auto a = nlohmann::json::parse(run({"analyze", third}).out);
  CHECK(a["ppt"]["verdict"] == "Separable");
  CHECK(a["prop41"]["verdict"] == "CertifiedSeparable");
  CHECK(a["prop41"]["off_identity_l1"].get<double>() == doctest::Approx(1.0));

  CHECK(nlohmann::json::parse(run({"analyze", half}).out)["ppt"]["verdict"] == "Entangled");

  const auto m = nlohmann::json::parse(run({"analyze", mixed}).out);
  CHECK(m["eigen_certify"] == true);
  CHECK(m["probe_t_max"] == "inf");

  const auto o = nlohmann::json::parse(run({"analyze", half, "--oracle", "--nearest"}).out);
  CHECK(o.contains("oracle"));
  CHECK(o.contains("nearest"));
}

TEST_CASE("invalid input files exit with the validation code") {
  const std::string path = temp_file("bad.json");
  {
    std::ofstream f(path);
    f << R"({"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]})";
  }
  const Run r = run({"analyze", path});
  CHECK(r.code == cli::kValidation);
  const auto err = nlohmann::json::parse(r.err);
  CHECK(err["invariant"] == "trace");
  CHECK(run({"analyze", temp_file("missing.json")}).code == cli::kValidation);
  CHECK(run({"nosuch"}).code == cli::kValidation);
}

TEST_CASE("measure exit codes and seeds") {
  const std::string path = temp_file("bell.json");
  save_density(path, max_entangled(2));
  const Run ok = run({"measure", path, "--seed", "5", "--no-atoms"});
  CHECK(ok.code == cli::kSuccess);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["seed"] == 5);
  CHECK(j["upper"].get<double>() == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-3));
  CHECK_FALSE(j.contains("atoms"));

  const Run starved = run({"measure", path, "--budget", "1"});
  CHECK(starved.code == cli::kNonConvergence);
  CHECK(run({"measure", path, "--budget", "1"}).out == starved.out);

  ::setenv("SEPKIT_SEED", "77", 1);
  CHECK(nlohmann::json::parse(run({"measure", path, "--no-atoms"}).out)["seed"] == 77);
  CHECK(nlohmann::json::parse(run({"measure", path, "--no-atoms", "--seed", "3"}).out)["seed"] == 3);
  ::unsetenv("SEPKIT_SEED");
  CHECK(nlohmann::json::parse(run({"measure", path, "--no-atoms"}).out)["seed"] == 0);
}

TEST_CASE("nearest, witness, hull-check, basis-coeffs and probe") {
  const auto n = nlohmann::json::parse(run({"nearest", "--family", "ghz", "-n", "3"}).out);
  CHECK(n["measure"].get<double>() == doctest::Approx(std::sqrt(6.0 / 13)));
  CHECK(n["residual"]["pass"] == true);

  const auto me = nlohmann::json::parse(run({"nearest", "--family", "maxent", "-d", "3"}).out);
  CHECK(me["measure"].get<double>() == doctest::Approx(std::sqrt(0.5)));
  CHECK(run({"nearest", "--family", "rhoa", "-d", "2", "--amps", "0.99", "0.141"}).code == cli::kValidation);

  const Run w = run({"witness", "--from", "nearest", "--family", "maxent", "-d", "2", "--samples", "1000"});
  CHECK(w.code == cli::kSuccess);
  const auto wj = nlohmann::json::parse(w.out);
  CHECK(wj["c0"].get<double>() == doctest::Approx(1.0 / 6));
  CHECK(wj["optimal"] == true);

  const auto h = nlohmann::json::parse(run({"hull-check", "-d", "3"}).out);
  CHECK(h["status"] == "Feasible");

  const std::string path = temp_file("coeffs.json");
  save_density(path, isotropic(2, 0.2));
  const auto c = nlohmann::json::parse(run({"basis-coeffs", path}).out);
  CHECK(c["off_identity_l1"].get<double>() == doctest::Approx(0.6));

  const auto p = nlohmann::json::parse(run({"probe", path, "--t", "0.5"}).out);
  CHECK(p["probe_t_max"].get<double>() == doctest::Approx(4.0));
  CHECK(p["probe"]["psd"] == true);
}

TEST_CASE("acceptance subcommand") {
  const Run r = run({"acceptance", "isotropic"});
  CHECK(r.code == cli::kSuccess);
  const auto summary = last_line(r.out);
  CHECK(summary["pass"] == true);
  CHECK(run({"acceptance", "nosuch"}).code == cli::kValidation);
  const Run pretty = run({"--pretty", "acceptance", "certify"});
  CHECK(pretty.out.find("PASS") != std::string::npos);
}

TEST_CASE("outputs are stable across runs with a fixed seed") {
  const std::string path = temp_file("stable.json");
  save_density(path, ghz(3));
  const Run a = run({"analyze", path, "--oracle", "--seed", "9"});
  const Run b = run({"analyze", path, "--oracle", "--seed", "9"});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
}
