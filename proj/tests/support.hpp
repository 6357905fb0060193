#pragma once

#include <cmath>
#include <vector>

#include <doctest.h>

#include "sepkit/random.hpp"
#include "sepkit/types.hpp"

namespace sepkit::test {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

/// Dense matrix from real row-major entries.
inline ComplexMatrix real_matrix(int n, std::initializer_list<double> entries) {
  REQUIRE(static_cast<int>(entries.size()) == n * n);
  ComplexMatrix m(n, n);
  auto it = entries.begin();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = *it++;
  return m;
}

/// Small random dims with n <= 3 factors and N <= 12.
inline DimensionSpec random_dims(Rng& rng) {
  static const std::vector<std::vector<int>> choices = {{2}, {3}, {2, 2}, {2, 3}, {3, 2}, {3, 3},
                                                        {2, 2, 2}, {2, 3, 2}, {4, 3}, {2, 2, 3}};
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  return DimensionSpec(choices[pick(rng)]);
}

inline ComplexMatrix single_qubit(double a, double b) {
  ComplexMatrix m(2, 2);
  m << a, 0, 0, b;
  return m;
}

}  // namespace sepkit::test
