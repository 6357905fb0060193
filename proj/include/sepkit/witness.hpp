#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "sepkit/types.hpp"

namespace sepkit {

/// Entanglement witness built from a state and its nearest separable density:
/// A = scale * (c0 I + tau0 - rho0), c0 = Tr(tau0 (rho0 - tau0)).
/// Tr(A sigma) = -scale * <<rho0 - tau0, sigma - tau0>> for every sigma.
struct Witness {
  ComplexMatrix matrix;  ///< A, including the scale
  double c0;
  double scale = 1.0;
  Density rho0;
  Density tau0;
};

Witness witness_from_nearest(const Density& rho0, const Density& tau0);

/// (1 / (1 + d)) (I - d rho0(d)).
Witness max_entangled_witness(int d);

struct Detection {
  double value;   ///< Tr(A rho)
  bool detected;  ///< value < 0
};

Detection detect(const Witness& w, const Density& rho);

/// Sufficient optimality test: some face member of full rank. tau0 is tried
/// first; candidates off the face (|residual| > face_tol) are skipped.
bool optimality_sufficient(const Witness& w, std::span<const Density> candidates = {}, double rank_tol = 1e-8,
                           double face_tol = 1e-10);

/// Rescales so that Tr(A D0) = 1. Throws PreconditionError when Tr(A D0) <= 0.
Witness rescale_to_standard(const Witness& w);

struct SoundnessReport {
  double min_value;  ///< min Tr(A pi) over sampled product projections
  std::size_t samples;
  std::uint64_t seed;
  bool pass;  ///< min_value >= -tolerance
};

SoundnessReport witness_soundness(const Witness& w, std::size_t samples, std::uint64_t seed, int threads = 1,
                                  double tolerance = 1e-10);

}  // namespace sepkit
