// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "opalg/errors.hpp"
#include "opalg/gauge/gauge.hpp"
#include "opalg/numkit/jacobi_svd.hpp"
#include "opalg/numkit/operator_norm.hpp"
#include "opalg/shift/shift.hpp"
#include "opalg/shift/weights.hpp"
#include "support.hpp"

using namespace opalg;
using namespace opalg::shift;

namespace {

ComplexMatrix poly(const ShiftTruncation& t, std::initializer_list<std::pair<int, cplx>> terms) {
  ComplexMatrix s(t.dim());
  for (auto [k, c] : terms) s.add_scaled(c, power(t.matrix, static_cast<unsigned>(k)));
  return s;
}

}  // namespace

TEST_CASE("WeightSequence: families and parsing") {
  CHECK(WeightSequence::harmonic().at(3) == cplx(0.25));
  CHECK(WeightSequence::geometric(0.5).at(2) == cplx(0.25));
  CHECK(WeightSequence::ones().at(100) == cplx(1.0));
  CHECK(WeightSequence::parse("list:1,0.5,2").at(2) == cplx(2.0));
  CHECK(WeightSequence::parse("geometric:0.25").family() == WeightFamily::geometric);
  CHECK(WeightSequence::parse("harmonic").family() == WeightFamily::harmonic);
  CHECK(WeightSequence::parse("ones").family() == WeightFamily::ones);
  CHECK_THROWS_AS(WeightSequence::parse("cubic"), InputError);
  CHECK_THROWS_AS(WeightSequence::parse("geometric:1.5"), InputError);
  CHECK_THROWS_AS(WeightSequence::parse("list:1,x"), InputError);
  CHECK_THROWS_AS(WeightSequence::list({1.0}).at(1), IndexError);

  CHECK(WeightSequence::harmonic().l2_sum_sq() == doctest::Approx(std::numbers::pi * std::numbers::pi / 6));
  CHECK(WeightSequence::geometric(0.5).l2_sum_sq() == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(WeightSequence::ones().l2_finite());
  CHECK(WeightSequence::harmonic().monotone_decreasing(50));
  CHECK_FALSE(WeightSequence::list({1.0, 2.0}).monotone_decreasing(2));
  CHECK(WeightSequence::ones().monotone_decreasing(10));
}

TEST_CASE("build_shift: examples") {
  const auto ones = build_shift(WeightSequence::ones(), 3);
  CHECK(ones.matrix(1, 0) == cplx(1.0));
  CHECK(ones.matrix(2, 1) == cplx(1.0));
  CHECK(ones.matrix.frobenius() == doctest::Approx(std::sqrt(2.0)));
  CHECK(operator_norm(ones.matrix) == doctest::Approx(1.0).epsilon(1e-13));

  const auto h = build_shift(WeightSequence::harmonic(), 4);
  const auto g = build_shift(WeightSequence::geometric(0.5), 4);
  const double hs[] = {1.0, 0.5, 1.0 / 3.0}, gs[] = {1.0, 0.5, 0.25};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(h.matrix(i + 1, i) == cplx(hs[i]));
    CHECK(g.matrix(i + 1, i) == cplx(gs[i]));
  }
  CHECK(h.matrix.structure() == Structure::lower_triangular);
}

TEST_CASE("build_shift: truncation invariants") {
  testkit::Gen gen(12);
  for (std::size_t n : {2u, 3u, 9u, 17u}) {
    const auto t = build_shift(WeightSequence::geometric(0.9), n);
    CHECK(power(t.matrix, static_cast<unsigned>(n)).is_zero());
    CHECK_FALSE(power(t.matrix, static_cast<unsigned>(n - 1)).is_zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j + 1) CHECK(t.matrix(i, j) == cplx{});
  }
}

TEST_CASE("build_shift: refusals") {
  CHECK_THROWS_AS(build_shift(WeightSequence::ones(), 1), InputError);
  CHECK_THROWS_AS(build_shift(WeightSequence::list({1.0, 0.0, 1.0}), 4), InputError);
  CHECK_THROWS_AS(build_shift(WeightSequence::list({1.0, 1.0}), 4), InputError);
  CHECK_NOTHROW(build_shift(WeightSequence::list({1.0, 1.0, 1.0}), 4));
}

TEST_CASE("vector_norm_at_e0: examples") {
  const auto t = build_shift(WeightSequence::harmonic(), 6);
  CHECK(vector_norm_at_e0(t.matrix) == 1.0);
  CHECK(vector_norm_at_e0(t.matrix * t.matrix) == 0.5);
  CHECK(vector_norm_at_e0(ComplexMatrix(6)) == 0.0);
}

TEST_CASE("norm_equivalence_report: bound constants and ratios") {
  const auto h = build_shift(WeightSequence::harmonic(), 32);
  const auto rep = norm_equivalence_report(h, 30, 5);
  CHECK(*rep.value("bound") == doctest::Approx(std::numbers::pi / std::sqrt(6.0)).epsilon(1e-15));
  CHECK(std::abs(*rep.value("bound") - 1.28255) < 5e-6);
  CHECK(rep.all_passed());
  CHECK(*rep.value("max_ratio") <= *rep.value("bound") + 1e-10);

  const auto g = build_shift(WeightSequence::geometric(0.5), 16);
  const auto rg = norm_equivalence_report(g, 10, 5);
  CHECK(*rg.value("bound") == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rg.all_passed());
}

TEST_CASE("norm_equivalence_report: powers attain ratio one") {
  for (auto w : {WeightSequence::harmonic(), WeightSequence::geometric(0.6)}) {
    const auto t = build_shift(w, 12);
    for (unsigned n = 1; n < 12; ++n) {
      const auto tn = power(t.matrix, n);
      CHECK(std::abs(operator_norm(tn) / vector_norm_at_e0(tn) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("norm_equivalence_report: hypotheses enforced") {
  try {
    norm_equivalence_report(build_shift(WeightSequence::ones(), 8), 5, 1);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("sum") != std::string::npos);
  }
  try {
    norm_equivalence_report(build_shift(WeightSequence::list({0.5, 1.0, 0.25}), 4), 5, 1);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("decreasing") != std::string::npos);
  }
}

TEST_CASE("norm_equivalence_report: deterministic in the seed") {
  const auto t = build_shift(WeightSequence::harmonic(), 16);
  const auto a = norm_equivalence_report(t, 8, 42), b = norm_equivalence_report(t, 8, 42);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].value == b.rows[i].value);
  const auto c = norm_equivalence_report(t, 8, 43);
  CHECK(c.rows[1].value != a.rows[1].value);
}

TEST_CASE("inequivalence_demo: examples") {
  const auto r3 = inequivalence_demo(3);
  CHECK(std::abs(*r3.value("pv_norm") - std::sqrt(19.0) / std::sqrt(3.0)) <= 1e-12);
  CHECK(std::abs(*r3.value("pv_norm") - 2.51661) < 5e-6);
  CHECK(r3.all_passed());

  const auto r1 = inequivalence_demo(1);
  CHECK(std::abs(*r1.value("pv_norm") - 1.0) <= 1e-12);

  const auto r16 = inequivalence_demo(16);
  CHECK(*r16.value("ratio") >= std::sqrt(2.0 / 3.0) * 4.0);
  CHECK(r16.all_passed());

  CHECK_THROWS_AS(inequivalence_demo(4, 7), InputError);
}

TEST_CASE("extreme_point_check: examples") {
  const auto t = build_shift(WeightSequence::harmonic(), 10);
  const auto t2 = t.matrix * t.matrix;
  CHECK(extreme_point_check((1.0 / operator_norm(t.matrix)) * t.matrix));
  CHECK(extreme_point_check((1.0 / operator_norm(t2)) * t2));
  CHECK_FALSE(extreme_point_check((0.5 / operator_norm(t.matrix)) * t.matrix));
}

TEST_CASE("quasinilpotence_profile: examples") {
  const auto g = quasinilpotence_profile(WeightSequence::geometric(0.5), 6, 16);
  for (int n = 1; n <= 6; ++n)
    CHECK(*g.value("beta_" + std::to_string(n)) == doctest::Approx(std::pow(2.0, -(n + 1) / 2.0)).epsilon(1e-13));
  CHECK(std::abs(*g.value("beta_3") - 0.25) < 1e-15);
  CHECK(g.flag("beta_strictly_decreasing") == true);

  const auto o = quasinilpotence_profile(WeightSequence::ones(), 8, 64);
  for (int n = 1; n <= 8; ++n) CHECK(*o.value("beta_" + std::to_string(n)) == 1.0);
  CHECK(o.flag("beta_constant_one") == true);

  const auto h = quasinilpotence_profile(WeightSequence::harmonic(), 4, 64);
  CHECK(*h.value("beta_4") < *h.value("beta_1"));
  CHECK(h.all_passed());

  CHECK_THROWS_AS(quasinilpotence_profile(WeightSequence::list({1.0, 0.5}), 4, 4), InputError);
}

TEST_CASE("ideal_generator_index: examples") {
  const auto t = build_shift(WeightSequence::harmonic(), 10);
  CHECK(ideal_generator_index(poly(t, {{3, 1.0}, {5, 7.0}}), t) == 3);
  CHECK(ideal_generator_index(t.matrix, t) == 1);
  CHECK(ideal_generator_index(poly(t, {{1, 1e-15}, {2, 1.0}}), t) == 2);
  CHECK_THROWS_AS(ideal_generator_index(ComplexMatrix(10), t), InputError);
}

TEST_CASE("neumann_factor_check: examples") {
  const auto t8 = build_shift(WeightSequence::ones(), 8);
  const auto a = neumann_factor_check(poly(t8, {{2, 1.0}, {3, 1.0}}), 2, t8);
  CHECK(a.all_passed());
  CHECK(*a.value("neumann_error") <= 1e-12);

  const auto b = neumann_factor_check(poly(t8, {{2, 1.0}}), 2, t8);
  CHECK(*b.value("neumann_error") == 0.0);

  const auto t32 = build_shift(WeightSequence::harmonic(), 32);
  const auto c = neumann_factor_check(poly(t32, {{3, 1.0}, {4, -2.0}, {6, 1.0}}), 3, t32);
  CHECK(c.all_passed());

  CHECK_THROWS_AS(neumann_factor_check(poly(t8, {{3, 1.0}}), 2, t8), InputError);
  CHECK_THROWS_AS(neumann_factor_check(poly(t8, {{2, 1.0}, {3, 1.0}}), 3, t8), InputError);
}

TEST_CASE("invariant_subspace_of_ideal: examples") {
  const auto t = build_shift(WeightSequence::harmonic(), 8);
  const auto s1 = invariant_subspace_of_ideal(1, t);
  CHECK(s1.basis.size() == 7);
  CHECK(s1.matches_coordinate_span);
  const auto s7 = invariant_subspace_of_ideal(7, t);
  CHECK(s7.basis.size() == 1);
  CHECK(std::abs(std::abs(s7.basis[0][7]) - 1.0) < 1e-15);
  const auto s2 = invariant_subspace_of_ideal(2, t);
  CHECK(s2.basis.size() == 6);
  CHECK(s2.invariance_residual < 1e-12);
  CHECK(s2.matches_coordinate_span);
  CHECK_THROWS_AS(invariant_subspace_of_ideal(0, t), IndexError);
  CHECK_THROWS_AS(invariant_subspace_of_ideal(8, t), IndexError);
}

TEST_CASE("lowest_index_of_product: examples") {
  const auto t = build_shift(WeightSequence::harmonic(), 8);
  const auto a = lowest_index_of_product(t.matrix, t.matrix, t);
  CHECK(*a.value("product_index") == 2.0);
  CHECK(a.all_passed());

  const auto b = lowest_index_of_product(poly(t, {{1, 2.0}, {3, 1.0}}), poly(t, {{2, 5.0}}), t);
  CHECK(*b.value("product_index") == 3.0);
  CHECK(std::abs(*b.value("leading_re") - 10.0) < 1e-12);
  CHECK(b.all_passed());

  CHECK_THROWS_AS(lowest_index_of_product(poly(t, {{4, 1.0}}), poly(t, {{4, 1.0}}), t), PreconditionError);
}

TEST_CASE("random_coefficients: reproducible and stream-separated") {
  const auto a = random_coefficients(16, 7, 0), b = random_coefficients(16, 7, 0), c = random_coefficients(16, 7, 1);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("property: norm attained at e0 for decreasing weights") {
  for (auto w : {WeightSequence::harmonic(), WeightSequence::geometric(0.5), WeightSequence::geometric(0.95)}) {
    const std::size_t n = 24;
    const auto t = build_shift(w, n);
    const auto p = t.powers();
    double prod = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
      prod *= std::abs(w.at(k - 1));
      const double nrm = svd_oracle(p[k - 1]);
      CHECK(std::abs(nrm - vector_norm_at_e0(p[k - 1])) < 1e-12);
      CHECK(std::abs(nrm - prod) < 1e-12);
    }
  }
}

TEST_CASE("property: equivalence bound for sampled polynomials") {
  testkit::Gen g(1111);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = g.index(2, 24);
    const auto w = trial % 2 ? WeightSequence::harmonic() : WeightSequence::geometric(g.uniform(0.2, 0.95));
    const auto t = build_shift(w, n);
    const auto s = gauge::polynomial(g.vector(n - 1), t.powers());
    const double bound = std::sqrt(w.l2_sum_sq()) / std::abs(w.at(0));
    const double e0 = vector_norm_at_e0(s), nrm = operator_norm(s);
    CHECK(e0 <= nrm + 1e-12);
    CHECK(nrm <= bound * e0 + 1e-10);
  }
}

TEST_CASE("property: inequivalence growth for ones weights") {
  for (std::size_t n : {4u, 16u, 64u}) {
    const auto r = inequivalence_demo(n);
    CHECK(r.all_passed());
    CHECK(*r.value("ratio") >= std::sqrt(2.0 / 3.0) * std::sqrt(static_cast<double>(n)));
    const double closed = std::sqrt(2.0 * n * n + 1.0) / std::sqrt(3.0);
    CHECK(std::abs(*r.value("pv_norm") - closed) <= 1e-12);
  }
}

TEST_CASE("property: partial sums reproduce the operator") {
  testkit::Gen g(2222);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = g.index(2, 20);
    const auto t = build_shift(WeightSequence::harmonic(), n);
    const auto p = t.powers();
    const auto s = gauge::polynomial(g.vector(n - 1), p);
    const auto series = shift_fourier_series(s, t);
    ComplexMatrix partial(n);
    for (std::size_t k = 1; k < n; ++k) partial.add_scaled(series.raw(static_cast<int>(k)), p[k - 1]);
    CHECK(max_abs_diff(partial, s) < 1e-10);
  }
}

TEST_CASE("property: e0 image norm is the weighted coefficient sum") {
  testkit::Gen g(3333);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = g.index(2, 30);
    const auto w = WeightSequence::geometric(g.uniform(0.3, 0.99));
    const auto t = build_shift(w, n);
    const auto c = g.vector(n - 1);
    const auto s = gauge::polynomial(c, t.powers());
    double sum = 0.0, prod = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
      prod *= std::abs(w.at(k - 1));
      sum += std::norm(c[k - 1]) * prod * prod;
    }
    CHECK(std::abs(vector_norm_at_e0(s) - std::sqrt(sum)) < 1e-12 * std::max(1.0, std::sqrt(sum)));
  }
}
