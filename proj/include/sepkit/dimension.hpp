#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sepkit/errors.hpp"

namespace sepkit {

/// Factor dimensions d_1..d_n of a tensor-product space. Basis states are
/// enumerated by digit strings j_1..j_n with the leftmost factor most
/// significant.
class DimensionSpec {
 public:
  DimensionSpec() : DimensionSpec(std::vector<int>{2}) {}

  explicit DimensionSpec(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw DimensionError("dimension spec needs at least one factor");
    total_ = 1;
    for (int d : factors_) {
      if (d < 2) throw DimensionError("factor dimension must be >= 2, got " + std::to_string(d));
      total_ *= d;
    }
  }

  DimensionSpec(std::initializer_list<int> factors) : DimensionSpec(std::vector<int>(factors)) {}

  static DimensionSpec uniform(int d, int n) { return DimensionSpec(std::vector<int>(n, d)); }

  int count() const noexcept { return static_cast<int>(factors_.size()); }
  int total() const noexcept { return total_; }
  int factor(int k) const { return factors_.at(k); }
  std::span<const int> factors() const noexcept { return factors_; }

  /// Number of basis states to the right of factor k (its digit's place value).
  int stride(int k) const {
    int s = 1;
    for (int i = count() - 1; i > k; --i) s *= factors_[i];
    return s;
  }

  std::vector<int> digits(int index) const {
    std::vector<int> out(factors_.size());
    for (int k = count() - 1; k >= 0; --k) {
      out[k] = index % factors_[k];
      index /= factors_[k];
    }
    return out;
  }

  int index(std::span<const int> digits) const {
    int idx = 0;
    for (int k = 0; k < count(); ++k) idx = idx * factors_[k] + digits[k];
    return idx;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      if (k) s += "x";
      s += std::to_string(factors_[k]);
    }
    return s;
  }

  friend bool operator==(const DimensionSpec&, const DimensionSpec&) = default;
  friend auto operator<=>(const DimensionSpec& a, const DimensionSpec& b) { return a.factors_ <=> b.factors_; }

 private:
  std::vector<int> factors_;
  int total_ = 1;
};

}  // namespace sepkit
