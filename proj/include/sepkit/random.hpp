#pragma once

#include <cstdint>
#include <random>

#include "sepkit/types.hpp"

namespace sepkit {

using Rng = std::mt19937_64;

/// Deterministic generator for one (seed, stream) pair. Independent streams
/// back parallel chunks and restarts.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform (Haar) unit vector: normalized complex standard Gaussian.
ComplexVector random_unit_vector(int d, Rng& rng);

ProductKet random_product_ket(const DimensionSpec& dims, Rng& rng);

/// Haar unitary via QR of a Ginibre matrix with the R-diagonal phases removed.
ComplexMatrix random_unitary(int n, Rng& rng);

/// U_1 (x) ... (x) U_n with each factor Haar.
ComplexMatrix random_local_unitary(const DimensionSpec& dims, Rng& rng);

/// G G^dagger / Tr for a Ginibre G (Hilbert-Schmidt measure).
Density random_density(const DimensionSpec& dims, Rng& rng);

/// Random Hermitian matrix with standard Gaussian entries.
ComplexMatrix random_hermitian(int n, Rng& rng);

}  // namespace sepkit
