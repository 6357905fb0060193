#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sepkit/io.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"
#include "support.hpp"

using namespace sepkit;
using sepkit::test::max_abs_diff;

namespace {

Invariant invariant_of(std::string_view text) {
  try {
    parse_density(text);
  } catch (const ValidationError& e) {
    return e.invariant();
  }
  FAIL("expected a validation error for " << text);
  return Invariant::Shape;
}

}  // namespace

TEST_CASE("json round trip is exact") {
  Rng rng = make_rng(81);
  for (int i = 0; i < 20; ++i) {
    const DimensionSpec dims = test::random_dims(rng);
    const Density rho = random_density(dims, rng);
    const Density back = density_from_json(nlohmann::json::parse(density_to_json(rho).dump()));
    CHECK(back.dims() == dims);
    CHECK(max_abs_diff(back.matrix(), rho.matrix()) <= 1e-15);
  }
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "sepkit_io_test.json";
  const Density rho = isotropic(3, 0.3);
  save_density(path, rho);
  CHECK(max_abs_diff(load_density(path).matrix(), rho.matrix()) <= 1e-15);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_density(path), std::invalid_argument);
}

TEST_CASE("plain real entries are accepted") {
  const Density rho = parse_density(R"({"dims":[2],"matrix":[[0.5,0.5],[0.5,0.5]]})");
  CHECK(rho.matrix()(0, 1) == Complex(0.5));
}

TEST_CASE("invalid documents name the failed invariant") {
  CHECK(invariant_of("not json") == Invariant::Shape);
  CHECK(invariant_of(R"({"matrix":[[1]]})") == Invariant::Shape);
  CHECK(invariant_of(R"({"dims":[2],"matrix":[[1,0]]})") == Invariant::Shape);
  CHECK(invariant_of(R"({"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]})") == Invariant::Trace);
  CHECK(invariant_of(R"({"dims":[2],"matrix":[[[0.5,0],[0.3,0]],[[0,0],[0.5,0]]]})") == Invariant::Hermiticity);
  CHECK(invariant_of(R"({"dims":[2],"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]})") == Invariant::Positivity);
  CHECK(invariant_of(R"({"dims":[2],"matrix":[[[0.5,0,1],[0,0]],[[0,0],[0.5,0]]]})") == Invariant::Shape);
}

TEST_CASE("invalid dims are rejected") {
  CHECK_THROWS_AS(parse_density(R"({"dims":[1],"matrix":[[1]]})"), std::invalid_argument);
}
