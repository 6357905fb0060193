#pragma once

#include <vector>

#include "sepkit/types.hpp"

// Reference routines that share no code with the library's numerics. Used to
// cross-check spectra and partial transposes in tests and acceptance runs.
namespace sepkit::checks {

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations
/// on the real symmetric embedding [[Re, -Im], [Im, Re]].
std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h, double tol = 1e-15, int max_sweeps = 100);

double jacobi_min_eigenvalue(const ComplexMatrix& h);

/// Partial transpose by explicit digit expansion of every index pair.
ComplexMatrix brute_partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims, int factor);

/// Kronecker product written out entry by entry.
ComplexMatrix brute_kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace sepkit::checks
