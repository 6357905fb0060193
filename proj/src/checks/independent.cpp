#include "sepkit/checks/independent.hpp"

#include <algorithm>
#include <cmath>

namespace sepkit::checks {

std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h, double tol, int max_sweeps) {
  const int n = static_cast<int>(h.rows());
  const int m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m * m));
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * m + j)]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = 0.5 * (h(i, j).real() + h(j, i).real());
      const double im = 0.5 * (h(i, j).imag() - h(j, i).imag());
      at(i, j) = re;
      at(i + n, j + n) = re;
      at(i, j + n) = -im;
      at(i + n, j) = im;
    }
  }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0, scale = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) (i == j ? scale : off) += at(i, j) * at(i, j);
    if (off <= tol * tol * std::max(scale, 1.0)) break;
    for (int p = 0; p < m - 1; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (apq == 0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  // The embedding doubles every eigenvalue; keep one of each pair.
  std::vector<double> all(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = at(i, i);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (int i = 0; i < m; i += 2) out.push_back(0.5 * (all[static_cast<std::size_t>(i)] + all[static_cast<std::size_t>(i + 1)]));
  return out;
}

double jacobi_min_eigenvalue(const ComplexMatrix& h) { return jacobi_eigenvalues(h).front(); }

ComplexMatrix brute_partial_transpose(const ComplexMatrix& m, const std::vector<int>& dims, int factor) {
  const auto n = static_cast<int>(m.rows());
  auto expand = [&](int index) {
    std::vector<int> digits(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = index % dims[static_cast<std::size_t>(k)];
      index /= dims[static_cast<std::size_t>(k)];
    }
    return digits;
  };
  auto collapse = [&](const std::vector<int>& digits) {
    int index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
    return index;
  };
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      auto dr = expand(r), dc = expand(c);
      std::swap(dr[static_cast<std::size_t>(factor)], dc[static_cast<std::size_t>(factor)]);
      out(collapse(dr), collapse(dc)) = m(r, c);
    }
  }
  return out;
}

ComplexMatrix brute_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace sepkit::checks
