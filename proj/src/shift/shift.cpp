// SPDX-License-Identifier: Apache-2.0
#include "opalg/shift/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/numkit/circle.hpp"
#include "opalg/numkit/operator_norm.hpp"

namespace opalg::shift {

namespace {

std::string num(std::size_t v) { return std::to_string(v); }

}  // namespace

std::vector<ComplexMatrix> ShiftTruncation::powers(std::size_t d) const { return gauge::powers_of(matrix, d); }

ShiftTruncation build_shift(const WeightSequence& weights, std::size_t n) {
  if (n < 2) throw InputError("build_shift: dimension must be at least 2");
  if (weights.available() < n - 1)
    throw InputError("build_shift: weight list has " + num(weights.available()) + " entries, need " + num(n - 1));
  ComplexMatrix t(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cplx a = weights.at(i);
    if (a == 0.0) throw InputError("build_shift: weight a_" + num(i) + " is zero");
    t(i + 1, i) = a;
  }
  t.set_structure(Structure::lower_triangular);
  return {weights, std::move(t)};
}

double vector_norm_at_e0(const ComplexMatrix& s) { return norm2(s.column(0)); }

std::vector<cplx> band_coefficients(const ComplexMatrix& s, const ShiftTruncation& t) {
  const std::size_t n = t.dim();
  if (s.dim() != n) throw InputError("band_coefficients: dimension mismatch");
  std::vector<cplx> out(n);
  out[0] = s(0, 0);
  cplx prod = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    prod *= t.matrix(k, k - 1);
    out[k] = s(k, 0) / prod;
  }
  return out;
}

gauge::FourierSeries shift_fourier_series(const ComplexMatrix& s, const ShiftTruncation& t) {
  if (s.dim() != t.dim()) throw InputError("shift_fourier_series: dimension mismatch");
  const auto grid = CircleGrid::for_dimension(t.dim());
  const auto powers = t.powers();
  return gauge::fourier_coefficients(s, grid, powers);
}

std::vector<cplx> random_coefficients(std::size_t count, std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::vector<cplx> out(count);
  for (auto& c : out) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = {re, im};
  }
  return out;
}

ExperimentReport norm_equivalence_report(const ShiftTruncation& t, std::size_t trials, std::uint64_t seed) {
  const std::size_t n = t.dim();
  if (!t.weights.l2_finite())
    throw PreconditionError("norm_equivalence_report: hypothesis sum |a_n|^2 < inf fails for " +
                            t.weights.describe());
  if (!t.weights.monotone_decreasing(n - 1))
    throw PreconditionError("norm_equivalence_report: hypothesis |a_n| decreasing fails for " + t.weights.describe());
  if (trials == 0) throw InputError("norm_equivalence_report: trials must be positive");

  ExperimentReport rep;
  rep.experiment = "equivalence";
  rep.param("weights", t.weights.describe());
  rep.param("dim", num(n));
  rep.param("trials", num(trials));
  rep.param("seed", std::to_string(seed));

  const double bound = std::sqrt(t.weights.l2_sum_sq()) / std::abs(t.weights.at(0));
  rep.row("bound", bound);
  const auto powers = t.powers();
  bool upper = true, lower = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto c = random_coefficients(n - 1, seed, i);
    const ComplexMatrix s = gauge::polynomial(c, powers);
    const double norm = operator_norm(s);
    const double at_e0 = vector_norm_at_e0(s);
    const double ratio = norm / at_e0;
    rep.row("ratio_" + num(i), ratio);
    worst = std::max(worst, ratio);
    upper = upper && norm <= bound * at_e0 + 1e-10;
    lower = lower && at_e0 <= norm + 1e-10;
  }
  rep.row("max_ratio", worst);
  rep.check("upper_bound", upper);
  rep.check("lower_bound", lower);
  return rep;
}

ExperimentReport inequivalence_demo(std::size_t n, std::size_t dim) {
  if (n == 0) throw InputError("inequivalence_demo: n must be positive");
  if (dim == 0) dim = 2 * n;
  if (dim < 2 * n) throw InputError("inequivalence_demo: dimension " + num(dim) + " below 2n = " + num(2 * n));

  ExperimentReport rep;
  rep.experiment = "inequivalence";
  rep.param("n", num(n));
  rep.param("dim", num(dim));

  const auto t = build_shift(WeightSequence::ones(), dim);
  const auto powers = t.powers(n);
  const std::vector<cplx> ones(n, 1.0);
  const ComplexMatrix p = gauge::polynomial(ones, powers);

  const double dn = static_cast<double>(n);
  std::vector<cplx> v(dim);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / std::sqrt(dn);
  const double pv = norm2(p.apply(v));
  const double pv_closed = std::sqrt(2.0 * dn * dn + 1.0) / std::sqrt(3.0);
  const double pe0 = vector_norm_at_e0(p);
  const double norm = operator_norm(p);
  const double ratio = norm / pe0;
  const double ratio_bound = std::sqrt(2.0 / 3.0) * std::sqrt(dn);

  rep.row("pv_norm", pv);
  rep.row("pv_closed_form", pv_closed);
  rep.row("pe0_norm", pe0);
  rep.row("sqrt_n", std::sqrt(dn));
  rep.row("p_norm", norm);
  rep.row("ratio", ratio);
  rep.row("ratio_lower_bound", ratio_bound);
  rep.check("pv_closed_form", std::abs(pv - pv_closed) <= 1e-12);
  rep.check("pe0_closed_form", std::abs(pe0 - std::sqrt(dn)) <= 1e-12);
  rep.check("ratio_bound", ratio >= ratio_bound);
  return rep;
}

bool extreme_point_check(const ComplexMatrix& s) {
  return std::abs(operator_norm(s) - 1.0) < 1e-9 && std::abs(vector_norm_at_e0(s) - 1.0) < 1e-9;
}

ExperimentReport quasinilpotence_profile(const WeightSequence& weights, std::size_t n_max, std::size_t k_max) {
  if (n_max == 0) throw InputError("quasinilpotence_profile: n_max must be positive");
  if (weights.available() != std::numeric_limits<std::size_t>::max() && weights.available() <= k_max + n_max)
    throw InputError("quasinilpotence_profile: weights end before index k_max + n_max = " + num(k_max + n_max));

  ExperimentReport rep;
  rep.experiment = "quasinilpotence";
  rep.param("weights", weights.describe());
  rep.param("nmax", num(n_max));
  rep.param("kmax", num(k_max));

  std::vector<double> logs(k_max + n_max + 1);
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(std::abs(weights.at(i)));

  std::vector<double> beta(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= k_max; ++k) {
      double s = 0.0;
      for (std::size_t i = 1; i <= n; ++i) s += logs[k + i];
      best = std::max(best, s);
    }
    beta[n - 1] = std::exp(best / static_cast<double>(n));
    rep.row("beta_" + num(n), beta[n - 1]);
  }

  switch (weights.family()) {
    case WeightFamily::harmonic:
    case WeightFamily::geometric: {
      bool dec = true;
      for (std::size_t i = 1; i < beta.size(); ++i) dec = dec && beta[i] < beta[i - 1];
      rep.check("beta_strictly_decreasing", dec);
      break;
    }
    case WeightFamily::ones:
      rep.check("beta_constant_one", std::all_of(beta.begin(), beta.end(), [](double b) { return b == 1.0; }));
      break;
    case WeightFamily::explicit_list:
      break;
  }
  return rep;
}

int ideal_generator_index(const ComplexMatrix& s, const ShiftTruncation& t) {
  const auto series = shift_fourier_series(s, t);
  const auto lo = series.lowest_index();
  if (!lo) throw InputError("ideal_generator_index: zero element (all coefficients below threshold)");
  return *lo;
}

ExperimentReport neumann_factor_check(const ComplexMatrix& s, int k, const ShiftTruncation& t) {
  const std::size_t n = t.dim();
  if (k < 1 || static_cast<std::size_t>(k) >= n)
    throw InputError("neumann_factor_check: k = " + std::to_string(k) + " outside 1..N-1");
  const auto series = shift_fourier_series(s, t);
  if (!series.is_nonzero(k))
    throw InputError("neumann_factor_check: coefficient " + std::to_string(k) + " is below threshold");
  if (series.lowest_index() != k)
    throw InputError("neumann_factor_check: " + std::to_string(k) + " is not the lowest nonzero index (lowest is " +
                     std::to_string(*series.lowest_index()) + ")");

  ExperimentReport rep;
  rep.experiment = "neumann";
  rep.param("k", std::to_string(k));
  rep.param("dim", num(n));
  rep.param("weights", t.weights.describe());

  const auto powers = t.powers();
  const cplx lead = series.coefficient(k);
  ComplexMatrix sn = s;
  sn *= 1.0 / lead;

  // S = T^k Q with Q = I + sum_{j>=1} S^(k+j) T^j; R = I - Q is nilpotent.
  ComplexMatrix r(n);
  r.set_structure(Structure::lower_triangular);
  for (std::size_t j = 1; j + k < n; ++j) {
    const cplx c = series.coefficient(static_cast<int>(j) + k) / lead;
    if (c != 0.0) r.add_scaled(-c, powers[j - 1]);
  }

  ComplexMatrix sum = sn;
  ComplexMatrix term = sn;
  for (std::size_t m = 1; m <= n; ++m) {
    term = term * r;
    sum += term;
  }
  const double err = max_abs_diff(sum, powers[k - 1]);
  const bool nilpotent = power(r, static_cast<unsigned>(n)).is_zero();

  rep.row("leading_coefficient_abs", std::abs(lead));
  rep.row("neumann_error", err);
  rep.row("r_nilpotent", nilpotent ? 1.0 : 0.0);
  rep.check("reproduces_tk", err <= 1e-12);
  rep.check("r_nilpotent", nilpotent);
  return rep;
}

InvariantSubspace invariant_subspace_of_ideal(std::size_t k, const ShiftTruncation& t) {
  const std::size_t n = t.dim();
  if (k < 1 || k >= n) throw IndexError("invariant_subspace_of_ideal: k = " + num(k) + " outside 1..N-1");

  InvariantSubspace out;
  out.first_index = k;

  std::vector<cplx> v(n);
  v[0] = 1.0;
  for (std::size_t j = 0; j < k; ++j) v = t.matrix.apply(v);
  for (std::size_t j = k; j < n; ++j) {
    std::vector<cplx> w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : out.basis) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(b[i]) * w[i];
        for (std::size_t i = 0; i < n; ++i) w[i] -= proj * b[i];
      }
    const double nrm = norm2(w);
    if (nrm > 0.0) {
      for (auto& x : w) x /= nrm;
      out.basis.push_back(std::move(w));
    }
    v = t.matrix.apply(v);
  }

  ComplexMatrix p(n);
  for (const auto& b : out.basis)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += b[i] * std::conj(b[j]);
  const ComplexMatrix tp = t.matrix * p;
  out.invariance_residual = (tp - p * tp).max_abs();

  bool below_clean = true;
  for (const auto& b : out.basis)
    for (std::size_t i = 0; i < k; ++i) below_clean = below_clean && b[i] == 0.0;
  out.matches_coordinate_span = below_clean && out.basis.size() == n - k;
  return out;
}

ExperimentReport lowest_index_of_product(const ComplexMatrix& r, const ComplexMatrix& s, const ShiftTruncation& t) {
  const std::size_t n = t.dim();
  const auto sr = shift_fourier_series(r, t);
  const auto ss = shift_fourier_series(s, t);
  if (!sr.lowest_index() || !ss.lowest_index())
    throw InputError("lowest_index_of_product: factor is the zero element");
  const int j0 = *sr.lowest_index();
  const int k0 = *ss.lowest_index();
  if (static_cast<std::size_t>(j0 + k0) >= n)
    throw PreconditionError("lowest_index_of_product: j0 + k0 = " + std::to_string(j0 + k0) +
                            " reaches the truncation dimension " + num(n));

  ExperimentReport rep;
  rep.experiment = "integral-domain";
  rep.param("dim", num(n));
  rep.param("guard", "j0+k0<N");

  const auto sp = shift_fourier_series(r * s, t);
  const auto lp = sp.lowest_index();
  const cplx expected = sr.coefficient(j0) * ss.coefficient(k0);
  const cplx got = lp ? sp.coefficient(*lp) : cplx{};

  rep.row("j0", j0);
  rep.row("k0", k0);
  rep.row("product_index", lp ? *lp : 0);
  rep.row("leading_re", got.real());
  rep.row("leading_im", got.imag());
  rep.row("expected_re", expected.real());
  rep.row("expected_im", expected.imag());
  rep.check("index_additive", lp && *lp == j0 + k0);
  rep.check("leading_coefficient", std::abs(got - expected) <= 1e-10 * std::abs(expected));
  return rep;
}

}  // namespace opalg::shift
