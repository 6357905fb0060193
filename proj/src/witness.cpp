#include "sepkit/witness.hpp"

#include <limits>
#include <vector>

#include "sepkit/closed_forms.hpp"
#include "sepkit/parallel.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"

namespace sepkit {

Witness witness_from_nearest(const Density& rho0, const Density& tau0) {
  if (rho0.dims() != tau0.dims()) throw DimensionError("witness_from_nearest: dims mismatch");
  const double c0 = hs_inner(tau0.matrix(), rho0.matrix() - tau0.matrix());
  const Eigen::Index n = rho0.size();
  ComplexMatrix a = c0 * ComplexMatrix::Identity(n, n) + tau0.matrix() - rho0.matrix();
  return {std::move(a), c0, 1.0, rho0, tau0};
}

Witness max_entangled_witness(int d) {
  const NearestResult r = nearest_max_entangled(d);
  const Eigen::Index n = r.rho.size();
  ComplexMatrix a = (ComplexMatrix::Identity(n, n) - double(d) * r.rho.matrix()) / (1.0 + d);
  const double c0 = (d - 1.0) / (d * (d + 1.0));
  return {std::move(a), c0, 1.0, r.rho, r.tau0};
}

Detection detect(const Witness& w, const Density& rho) {
  if (rho.size() != w.matrix.rows()) throw DimensionError("detect: dims mismatch");
  const double v = hs_inner(w.matrix, rho.matrix());
  return {v, v < 0};
}

bool optimality_sufficient(const Witness& w, std::span<const Density> candidates, double rank_tol, double face_tol) {
  if (min_eigenvalue(w.tau0) >= rank_tol) return true;
  for (const auto& tau : candidates) {
    if (tau.dims() != w.tau0.dims()) continue;
    if (std::abs(face_residual(w.rho0.matrix(), w.tau0.matrix(), tau.matrix())) > face_tol) continue;
    if (min_eigenvalue(tau) >= rank_tol) return true;
  }
  return false;
}

Witness rescale_to_standard(const Witness& w) {
  const double on_mixed = std::real(w.matrix.trace()) / double(w.matrix.rows());
  if (!(on_mixed > 0)) throw PreconditionError("rescale_to_standard: Tr(A D0) must be positive");
  Witness out = w;
  out.matrix /= on_mixed;
  out.scale /= on_mixed;
  return out;
}

SoundnessReport witness_soundness(const Witness& w, std::size_t samples, std::uint64_t seed, int threads,
                                  double tolerance) {
  constexpr std::size_t chunk = 4096;
  const DimensionSpec& dims = w.rho0.dims();
  const std::size_t chunks = (samples + chunk - 1) / chunk;
  std::vector<double> lows(chunks, std::numeric_limits<double>::infinity());
  detail::for_each_chunk(chunks, threads, [&](std::size_t c) {
    Rng rng = make_rng(seed, c + 1);
    const std::size_t count = std::min(chunk, samples - c * chunk);
    for (std::size_t i = 0; i < count; ++i) {
      const ComplexVector v = random_product_ket(dims, rng).ket();
      lows[c] = std::min(lows[c], std::real(v.dot(w.matrix * v)));
    }
  });
  double low = std::numeric_limits<double>::infinity();
  for (double l : lows) low = std::min(low, l);
  return {low, samples, seed, low >= -tolerance};
}

}  // namespace sepkit
