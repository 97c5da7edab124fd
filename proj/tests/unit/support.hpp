// SPDX-License-Identifier: Apache-2.0
// Seeded generators shared by the property tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "opalg/numkit/complex_matrix.hpp"

namespace testkit {

using opalg::cplx;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  cplx gaussian() {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng_);
    return {re, g(rng_)};
  }
  std::vector<cplx> vector(std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = gaussian();
    return v;
  }
  opalg::ComplexMatrix matrix(std::size_t n) {
    opalg::ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = gaussian();
    return a;
  }
  opalg::ComplexMatrix lower(std::size_t n) {
    opalg::ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) a(i, j) = gaussian();
    a.set_structure(opalg::Structure::lower_triangular);
    return a;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testkit
