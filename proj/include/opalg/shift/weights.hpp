// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "opalg/numkit/complex_matrix.hpp"

namespace opalg::shift {

enum class WeightFamily { explicit_list, harmonic, geometric, ones };

/// Rule n -> a_n for the weights of Te_n = a_n e_{n+1}.
class WeightSequence {
 public:
  static WeightSequence list(std::vector<cplx> values);
  /// a_n = 1 / (n + 1)
  static WeightSequence harmonic();
  /// a_n = r^n, 0 < r < 1
  static WeightSequence geometric(double r);
  /// a_n = 1
  static WeightSequence ones();

  /// `list:a0,a1,...` | `harmonic` | `geometric:r` | `ones`
  static WeightSequence parse(std::string_view spec);

  WeightFamily family() const noexcept { return family_; }
  double ratio() const noexcept { return r_; }

  /// Number of weights that can be materialized; SIZE_MAX for the closed families.
  std::size_t available() const noexcept;
  /// Throws IndexError past `available()`.
  cplx at(std::size_t n) const;
  std::vector<cplx> prefix(std::size_t count) const;

  /// sum |a_n|^2 over all n: pi^2/6, 1/(1-r^2), +inf, or the listed sum.
  double l2_sum_sq() const noexcept;
  bool l2_finite() const noexcept;
  /// |a_0| >= |a_1| >= ... over the first `count` weights.
  bool monotone_decreasing(std::size_t count) const;

  std::string describe() const;

 private:
  WeightFamily family_ = WeightFamily::ones;
  double r_ = 0.0;
  std::vector<cplx> values_;
};

}  // namespace opalg::shift
