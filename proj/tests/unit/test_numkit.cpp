// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "opalg/errors.hpp"
#include "opalg/numkit/circle.hpp"
#include "opalg/numkit/complex_matrix.hpp"
#include "opalg/numkit/jacobi_svd.hpp"
#include "opalg/numkit/operator_norm.hpp"
#include "opalg/numkit/roots.hpp"
#include "opalg/volterra/volterra.hpp"
#include "support.hpp"

using namespace opalg;

namespace {

ComplexMatrix diag(std::initializer_list<cplx> d) {
  ComplexMatrix a(d.size());
  std::size_t i = 0;
  for (cplx z : d) a(i, i) = z, ++i;
  return a;
}

double column_norm(const ComplexMatrix& a, std::size_t j) { return norm2(a.column(j)); }

}  // namespace

TEST_CASE("operator_norm: diagonal and Jordan cell") {
  CHECK(operator_norm(diag({3.0, 1.0})) == doctest::Approx(3.0).epsilon(1e-13));
  ComplexMatrix j(2);
  j(1, 0) = 1.0;
  CHECK(operator_norm(j) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("operator_norm: discretized Volterra agrees with the SVD oracle") {
  const auto v = volterra::volterra_matrix(64);
  CHECK(std::abs(operator_norm(v) - svd_oracle(v)) <= 1e-9);
}

TEST_CASE("operator_norm: zero matrix") { CHECK(operator_norm(ComplexMatrix(5)) == 0.0); }

TEST_CASE("operator_norm: input errors") {
  ComplexMatrix a = diag({1.0, 2.0});
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(operator_norm(a), InputError);
  a(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(operator_norm(a), InputError);

  const ComplexMatrix b = diag({1.0, 2.0});
  CHECK_THROWS_AS(operator_norm(b, min_norm_tolerance(2) / 4), InputError);
  CHECK_THROWS_AS(operator_norm(b, 1e-12, 0), InputError);
  CHECK_NOTHROW(operator_norm(b, min_norm_tolerance(2)));
}

TEST_CASE("operator_norm: iteration cap raises NumericError with last estimate") {
  // Nearly equal top singular values converge slowly.
  const ComplexMatrix a = diag({1.0, 0.999999, 0.5});
  try {
    operator_norm(a, 1e-13, 1, 5);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.last_value() > 0.9);
    CHECK(e.last_value() <= 1.0 + 1e-12);
  }
}

TEST_CASE("svd_oracle: examples") {
  CHECK(svd_oracle(ComplexMatrix(4)) == 0.0);
  const cplx l = std::polar(1.0, 0.7);
  CHECK(svd_oracle(diag({l, l * l, std::conj(l)})) == doctest::Approx(1.0).epsilon(1e-14));

  testkit::Gen g(32);
  const auto a = g.matrix(32);
  CHECK(std::abs(svd_oracle(a) - operator_norm(a)) <= 1e-9);
}

TEST_CASE("svd_oracle: dimension guard") {
  CHECK_THROWS_AS(svd_oracle(ComplexMatrix(kSvdOracleMaxDim + 1)), InputError);
}

TEST_CASE("jacobi_svd: right vectors orthonormal and values descending") {
  testkit::Gen g(7);
  const auto a = g.matrix(12);
  const auto r = jacobi_svd(a);
  REQUIRE(r.singular_values.size() == 12);
  for (std::size_t i = 1; i < 12; ++i) CHECK(r.singular_values[i - 1] >= r.singular_values[i]);
  const auto vh_v = r.right_vectors.adjoint() * r.right_vectors;
  CHECK(max_abs_diff(vh_v, ComplexMatrix::identity(12)) < 1e-12);
  // A v_j has norm sigma_j
  for (std::size_t j = 0; j < 12; ++j) {
    const auto av = a.apply(r.right_vectors.column(j));
    CHECK(std::abs(norm2(av) - r.singular_values[j]) < 1e-11);
  }
}

TEST_CASE("circle_integral: single mode, orthogonality, hand DFT") {
  testkit::Gen g(3);
  const auto a = g.matrix(3);

  CircleGrid g4(4);
  std::vector<ComplexMatrix> v4;
  for (std::size_t m = 0; m < 4; ++m) v4.push_back(g4.node(m) * a);
  CHECK(max_abs_diff(circle_integral(g4, v4, 1), a) < 1e-15);

  CircleGrid g8(8);
  std::vector<ComplexMatrix> sq, mixed;
  for (std::size_t m = 0; m < 8; ++m) {
    sq.push_back(g8.power(m, 2) * a);
    mixed.push_back((g8.power(m, 1) + g8.power(m, 3)) * a);
  }
  CHECK(circle_integral(g8, sq, 1).max_abs() < 1e-15);
  CHECK(max_abs_diff(circle_integral(g8, mixed, 3), a) < 1e-15);
}

TEST_CASE("circle_integral: mismatched inputs") {
  CircleGrid g(4);
  std::vector<ComplexMatrix> three(3, ComplexMatrix(2));
  CHECK_THROWS_AS(circle_integral(g, three, 0), InputError);
  std::vector<ComplexMatrix> mixed{ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix(3), ComplexMatrix(2)};
  CHECK_THROWS_AS(circle_integral(g, mixed, 0), InputError);
}

TEST_CASE("CircleGrid: nodes on the circle and distinct") {
  for (std::size_t m_count : {1u, 2u, 7u, 64u}) {
    CircleGrid g(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
      CHECK(std::abs(std::abs(g.node(m)) - 1.0) < 1e-15);
      for (std::size_t q = 0; q < m; ++q) CHECK(std::abs(g.node(m) - g.node(q)) > 1e-3 / m_count);
    }
  }
  CircleGrid g(8);
  CHECK(g.node(2) == cplx(0.0, 1.0));
  CHECK(g.node(4) == cplx(-1.0, 0.0));
  CHECK(g.power(1, -1) == std::conj(g.node(1)));
}

TEST_CASE("find_root: examples") {
  const auto c = find_root([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-12);
  CHECK(std::abs(c.root - std::numbers::pi / 2) <= 1e-12);
  CHECK(c.lo == 1.0);
  CHECK(c.hi == 2.0);

  const auto e = find_root([](double x) { return std::cosh(x) * std::cos(x) + 1.0; }, 1.0, 3.0, 1e-12);
  CHECK(std::abs(e.root - 1.8751) < 5e-5);
  CHECK(std::abs(e.residual) < 1e-10);

  const auto z = find_root([](double x) { return x; }, -1.0, 1.0, 1e-12);
  CHECK(z.root == 0.0);
  CHECK(z.lo < z.root);
  CHECK(z.root < z.hi);
}

TEST_CASE("find_root: input errors") {
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), InputError);
  CHECK_THROWS_AS(find_root([](double x) { return x - 1.5; }, 1.0, 2.0, 1e-300), InputError);
}

TEST_CASE("ComplexMatrix: structure tags") {
  ComplexMatrix a(3);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(a.set_structure(Structure::lower_triangular), InputError);
  ComplexMatrix b(3);
  b(1, 0) = 1.0;
  b(2, 1) = 2.0;
  CHECK_NOTHROW(b.set_structure(Structure::lower_triangular));
  CHECK_THROWS_AS(b.set_structure(Structure::lower_triangular_toeplitz), InputError);
  b(2, 1) = 1.0;
  CHECK_NOTHROW(b.set_structure(Structure::lower_triangular_toeplitz));
  CHECK(b.structure() == Structure::lower_triangular_toeplitz);
  b(0, 0) = 4.0;
  CHECK(b.structure() == Structure::dense);
}

TEST_CASE("ComplexMatrix: Toeplitz product matches dense product") {
  testkit::Gen g(11);
  const auto sa = g.vector(9), sb = g.vector(9);
  const auto a = ComplexMatrix::lower_toeplitz(sa), b = ComplexMatrix::lower_toeplitz(sb);
  ComplexMatrix ad = a, bd = b;
  ad(0, 0) = a(0, 0);
  bd(0, 0) = b(0, 0);
  REQUIRE(ad.structure() == Structure::dense);
  const auto fast = a * b, slow = ad * bd;
  CHECK(fast.structure() == Structure::lower_triangular_toeplitz);
  CHECK(max_abs_diff(fast, slow) < 1e-13);
  CHECK(max_abs_diff(power(a, 3), a * a * a) < 1e-12);
  CHECK(max_abs_diff(power(a, 0), ComplexMatrix::identity(9)) == 0.0);
}

TEST_CASE("ComplexMatrix: apply_adjoint is the adjoint") {
  testkit::Gen g(5);
  const auto a = g.matrix(6);
  const auto x = g.vector(6), y = g.vector(6);
  cplx lhs{}, rhs{};
  const auto ax = a.apply(x), ahy = a.apply_adjoint(y);
  for (std::size_t i = 0; i < 6; ++i) {
    lhs += std::conj(y[i]) * ax[i];
    rhs += std::conj(ahy[i]) * x[i];
  }
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("property: operator_norm is absolutely homogeneous") {
  testkit::Gen g(101);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = g.index(1, 24);
    const auto a = g.matrix(n);
    cplx alpha = g.gaussian();
    if (std::abs(std::abs(alpha) - 1.0) < 0.1) alpha *= 3.0;
    const double base = operator_norm(a);
    const double scaled = operator_norm(alpha * a) / std::abs(alpha);
    CHECK(std::abs(base - scaled) <= 1e-10 * base);
  }
}

TEST_CASE("property: operator_norm dominates every column norm") {
  testkit::Gen g(202);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = g.index(1, 24);
    const auto a = trial % 2 ? g.matrix(n) : g.lower(n);
    const double s = operator_norm(a);
    for (std::size_t j = 0; j < n; ++j) CHECK(s >= column_norm(a, j) - 1e-12);
  }
}

TEST_CASE("property: compressions do not increase the norm") {
  testkit::Gen g(303);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t big = g.index(2, 40);
    const auto a = g.matrix(big);
    const std::size_t small = g.index(1, big);
    CHECK(operator_norm(a.corner(small)) <= operator_norm(a) + 1e-10);
  }
  const auto v = volterra::volterra_matrix(96);
  for (std::size_t n : {8u, 16u, 48u}) CHECK(operator_norm(v.corner(n)) <= operator_norm(v) + 1e-10);
}

TEST_CASE("property: circle quadrature recovers every band exactly") {
  testkit::Gen g(404);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = g.index(1, 12);
    const auto a = g.matrix(n);
    CircleGrid grid = CircleGrid::for_dimension(n);
    std::vector<ComplexMatrix> samples;
    for (std::size_t m = 0; m < grid.size(); ++m) {
      ComplexMatrix c(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          c(i, j) = grid.power(m, static_cast<long long>(i) - static_cast<long long>(j)) * a(i, j);
      samples.push_back(c);
    }
    const long long top = static_cast<long long>(n) - 1;
    for (long long k = -top; k <= top; ++k) {
      const auto band = circle_integral(grid, samples, k);
      ComplexMatrix direct(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (static_cast<long long>(i) - static_cast<long long>(j) == k) direct(i, j) = a(i, j);
      CHECK(max_abs_diff(band, direct) < 1e-12);
    }
  }
}

TEST_CASE("property: root residual is bounded by slope times tolerance") {
  testkit::Gen g(505);
  for (int trial = 0; trial < 30; ++trial) {
    const double r = g.uniform(-5.0, 5.0);
    const double s = g.uniform(0.1, 20.0);
    auto f = [r, s](double x) { return s * (x - r) + 0.1 * (x - r) * (x - r) * (x - r); };
    const double tol = std::pow(10.0, -g.uniform(6.0, 12.0));
    const auto sol = find_root(f, r - g.uniform(0.5, 3.0), r + g.uniform(0.5, 3.0), tol);
    const double slope = s + 0.3 * (sol.root - r) * (sol.root - r);
    CHECK(std::abs(sol.residual) <= 10.0 * tol * std::max(1.0, slope));
    CHECK(sol.residual == f(sol.root));
  }
}
