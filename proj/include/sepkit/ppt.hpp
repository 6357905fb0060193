#pragma once

#include <string_view>
#include <vector>

#include "sepkit/types.hpp"

namespace sepkit {

enum class PptVerdict { Entangled, Separable, PptIndeterminate };

std::string_view to_string(PptVerdict v);

struct PptReport {
  std::vector<double> min_eigenvalues;  ///< one per single-factor partial transpose
  PptVerdict verdict;
};

/// Peres test over every single-factor partial transpose. A negative
/// eigenvalue below -tol proves entanglement; positivity is conclusive only
/// for 2x2 and 2x3 (and trivially for one factor).
PptReport ppt_verdict(const Density& rho, double tol = 1e-10, int threads = 1);

}  // namespace sepkit
