#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sepkit/types.hpp"

namespace sepkit {

/// Row-major nested [[ [re, im], ... ], ...].
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// { "dims": [d1, ..., dn], "matrix": ... }
nlohmann::json density_to_json(const Density& rho);

/// Parses and validates; a malformed document or a violated invariant raises
/// ValidationError naming it.
Density density_from_json(const nlohmann::json& j, const Tolerances& tol = default_tolerances);

Density parse_density(std::string_view text, const Tolerances& tol = default_tolerances);
Density load_density(const std::filesystem::path& path, const Tolerances& tol = default_tolerances);
void save_density(const std::filesystem::path& path, const Density& rho);

}  // namespace sepkit
