#include "sepkit/ppt.hpp"

#include <algorithm>

#include "sepkit/parallel.hpp"
#include "sepkit/tensor.hpp"

namespace sepkit {

std::string_view to_string(PptVerdict v) {
  switch (v) {
    case PptVerdict::Entangled: return "Entangled";
    case PptVerdict::Separable: return "Separable";
    case PptVerdict::PptIndeterminate: return "PptIndeterminate";
  }
  return "unknown";
}

PptReport ppt_verdict(const Density& rho, double tol, int threads) {
  const DimensionSpec& dims = rho.dims();
  PptReport report{std::vector<double>(dims.count()), PptVerdict::PptIndeterminate};
  detail::for_each_chunk(dims.count(), threads, [&](std::size_t f) {
    report.min_eigenvalues[f] = min_eigenvalue(partial_transpose(rho, static_cast<int>(f)));
  });

  const bool negative = std::any_of(report.min_eigenvalues.begin(), report.min_eigenvalues.end(),
                                    [tol](double l) { return l < -tol; });
  if (negative) {
    report.verdict = PptVerdict::Entangled;
    return report;
  }
  std::vector<int> sorted(dims.factors().begin(), dims.factors().end());
  std::sort(sorted.begin(), sorted.end());
  const bool horodecki = sorted == std::vector<int>{2, 2} || sorted == std::vector<int>{2, 3};
  report.verdict = (horodecki || dims.count() == 1) ? PptVerdict::Separable : PptVerdict::PptIndeterminate;
  return report;
}

}  // namespace sepkit
