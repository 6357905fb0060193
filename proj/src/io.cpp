#include "sepkit/io.hpp"

#include <fstream>
#include <sstream>

namespace sepkit {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError(Invariant::Shape, "matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw ValidationError(Invariant::Shape, "row " + std::to_string(r) + " does not have " + std::to_string(n) + " entries");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& e = row[c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ValidationError(Invariant::Shape,
                              "entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not [re, im]");
      }
    }
  }
  return m;
}

json density_to_json(const Density& rho) {
  return {{"dims", std::vector<int>(rho.dims().factors().begin(), rho.dims().factors().end())},
          {"matrix", matrix_to_json(rho.matrix())}};
}

Density density_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
    throw ValidationError(Invariant::Shape, "expected an object with \"dims\" and \"matrix\"");
  const json& jd = j.at("dims");
  if (!jd.is_array() || jd.empty()) throw ValidationError(Invariant::Shape, "dims must be a non-empty array");
  std::vector<int> dims;
  for (const auto& d : jd) {
    if (!d.is_number_integer()) throw ValidationError(Invariant::Shape, "dims entries must be integers");
    dims.push_back(d.get<int>());
  }
  DimensionSpec spec = [&] {
    try {
      return DimensionSpec(dims);
    } catch (const DimensionError& e) {
      throw ValidationError(Invariant::Shape, e.what());
    }
  }();
  return Density(std::move(spec), matrix_from_json(j.at("matrix")), tol);
}

Density parse_density(std::string_view text, const Tolerances& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(Invariant::Shape, std::string("malformed JSON: ") + e.what());
  }
  return density_from_json(j, tol);
}

Density load_density(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_density(buf.str(), tol);
}

void save_density(const std::filesystem::path& path, const Density& rho) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  out << density_to_json(rho).dump() << '\n';
}

}  // namespace sepkit
