// SPDX-License-Identifier: Apache-2.0
#include "opalg/gauge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/numkit/jacobi_svd.hpp"
#include "opalg/numkit/operator_norm.hpp"
#include "opalg/numkit/simd.hpp"

namespace opalg::gauge {

namespace {

constexpr double kUnitTolerance = 1e-14;
constexpr double kRankTolerance = 1e-10;
// Samples kept in memory during extraction: M N^2 complex values.
constexpr std::size_t kMaxSampleEntries = std::size_t{1} << 26;

void require_unit(cplx lambda) {
  if (!(std::abs(std::abs(lambda) - 1.0) <= kUnitTolerance))
    throw InputError("gauge_conjugate: |lambda| must be 1 within 1e-14");
}

// Entry (i, j) of A scaled by w[i - j + N - 1].
ComplexMatrix scale_bands(const ComplexMatrix& a, const std::vector<cplx>& w) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = a(i, j);
      if (v != 0.0) out(i, j) = v * w[i + n - 1 - j];
    }
  if (a.satisfies(Structure::lower_triangular)) out.set_structure(Structure::lower_triangular);
  return out;
}

void require_powers(std::span<const ComplexMatrix> powers, std::size_t count, const char* who) {
  if (powers.size() < count)
    throw InputError(std::string(who) + ": need powers T^1..T^" + std::to_string(count) + ", got " +
                     std::to_string(powers.size()));
}

}  // namespace

FourierSeries::FourierSeries(std::size_t truncation_dim, double threshold)
    : dim_(truncation_dim), threshold_(threshold) {
  if (!(threshold >= 0.0)) throw InputError("FourierSeries: threshold must be nonnegative");
}

cplx FourierSeries::raw(int k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx{} : it->second;
}

cplx FourierSeries::coefficient(int k) const { return is_nonzero(k) ? raw(k) : cplx{}; }

std::optional<int> FourierSeries::lowest_index() const {
  for (const auto& [k, v] : coeffs_)
    if (std::abs(v) > threshold_) return k;
  return std::nullopt;
}

std::vector<int> FourierSeries::support() const {
  std::vector<int> out;
  for (const auto& [k, v] : coeffs_)
    if (std::abs(v) > threshold_) out.push_back(k);
  return out;
}

std::vector<ComplexMatrix> powers_of(const ComplexMatrix& t, std::size_t d) {
  std::vector<ComplexMatrix> out;
  out.reserve(d);
  if (d == 0) return out;
  out.push_back(t);
  for (std::size_t j = 1; j < d; ++j) out.push_back(out.back() * t);
  return out;
}

ComplexMatrix polynomial(std::span<const cplx> coeffs, std::span<const ComplexMatrix> powers) {
  require_powers(powers, coeffs.size(), "polynomial");
  if (powers.empty()) throw InputError("polynomial: no powers supplied");
  ComplexMatrix out(powers.front().dim());
  out.set_structure(powers.front().structure());
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0.0) out.add_scaled(coeffs[j], powers[j]);
  return out;
}

ComplexMatrix gauge_conjugate(const ComplexMatrix& a, cplx lambda) {
  require_unit(lambda);
  const std::size_t n = a.dim();
  if (n == 0) return a;
  std::vector<cplx> w(2 * n - 1);
  // w[n - 1 + d] = lambda^d, built outward from d = 0 so |d| multiplications
  // at most separate any entry from 1.
  w[n - 1] = 1.0;
  const cplx inv = std::conj(lambda);
  for (std::size_t d = 1; d < n; ++d) {
    w[n - 1 + d] = w[n - 2 + d] * lambda;
    w[n - 1 - d] = w[n - d] * inv;
  }
  return scale_bands(a, w);
}

ComplexMatrix gauge_conjugate(const ComplexMatrix& a, const CircleGrid& grid, std::size_t m) {
  const std::size_t n = a.dim();
  if (n == 0) return a;
  std::vector<cplx> w(2 * n - 1);
  for (std::size_t idx = 0; idx < w.size(); ++idx)
    w[idx] = grid.power(m, static_cast<long long>(idx) - static_cast<long long>(n - 1));
  return scale_bands(a, w);
}

FourierSeries fourier_coefficients(const ComplexMatrix& a, const CircleGrid& grid,
                                   std::span<const ComplexMatrix> powers, std::optional<double> threshold) {
  const std::size_t n = a.dim();
  if (grid.size() < 2 * n)
    throw InputError("fourier_coefficients: grid has " + std::to_string(grid.size()) + " nodes, need at least " +
                     std::to_string(2 * n));
  if (grid.size() * n * n > kMaxSampleEntries)
    throw InputError("fourier_coefficients: grid too large for dimension " + std::to_string(n));
  for (const auto& p : powers)
    if (p.dim() != n) throw InputError("fourier_coefficients: power dimension differs from operator");

  const double tau = threshold ? *threshold : 1e-10 * operator_norm(a);
  FourierSeries series(n, tau);

  std::vector<ComplexMatrix> samples;
  samples.reserve(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) samples.push_back(gauge_conjugate(a, grid, m));

  for (std::size_t k = 1; k <= powers.size(); ++k) {
    const ComplexMatrix& tk = powers[k - 1];
    std::size_t bi = 0, bj = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(tk(i, j)) > best) {
          best = std::abs(tk(i, j));
          bi = i;
          bj = j;
        }
    if (best == 0.0)
      throw IndexError("fourier_coefficients: T^" + std::to_string(k) + " vanishes at dimension " +
                       std::to_string(n));

    const ComplexMatrix ck = circle_integral(grid, samples, static_cast<long long>(k));
    const cplx coeff = ck(bi, bj) / tk(bi, bj);
    series.set(static_cast<int>(k), coeff);

    ComplexMatrix resid = ck;
    resid.add_scaled(-coeff, tk);
    series.band_residual = std::max(series.band_residual, resid.max_abs());
  }
  return series;
}

ComplexMatrix fejer_sum(const FourierSeries& series, int n, std::span<const ComplexMatrix> powers) {
  if (n < 1) throw InputError("fejer_sum: n must be at least 1");
  ComplexMatrix out(series.truncation_dim());
  for (int j : series.support()) {
    if (j >= n) break;
    require_powers(powers, static_cast<std::size_t>(j), "fejer_sum");
    const double w = static_cast<double>(n - j) / static_cast<double>(n);
    out.add_scaled(w * series.coefficient(j), powers[j - 1]);
  }
  return out;
}

double fejer_error_bound(const FourierSeries& series, int n, std::span<const ComplexMatrix> powers) {
  if (n < 1) throw InputError("fejer_error_bound: n must be at least 1");
  const auto support = series.support();
  if (support.empty()) return 0.0;
  require_powers(powers, static_cast<std::size_t>(support.back()), "fejer_error_bound");
  double sum = 0.0;
  for (int j : support) sum += std::abs(series.coefficient(j)) * operator_norm(powers[j - 1]);
  return static_cast<double>(support.back()) / static_cast<double>(n) * sum;
}

std::optional<GaugeWitness> certify_no_gauge_linear_dependence(std::span<const ComplexMatrix> powers) {
  const std::size_t n = powers.size();
  if (n < 2) throw InputError("certify_no_gauge_linear_dependence: need at least T and T^2");
  const std::size_t dim = powers.front().dim();
  const std::size_t len = dim * dim;
  const auto& k = simd::active();

  ComplexMatrix gram(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const cplx g = k.dotc(powers[i].data(), powers[j].data(), len);
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }

  for (std::size_t m = 2; m <= n; ++m) {
    const SvdResult svd = jacobi_svd(gram.corner(m));
    const double smax = svd.singular_values.front();
    if (smax == 0.0) return std::nullopt;
    if (!(svd.singular_values.back() < kRankTolerance * smax)) continue;

    const double top = operator_norm(powers[m - 1]);
    if (!(top > kRankTolerance)) return std::nullopt;

    GaugeWitness w;
    w.kind = WitnessKind::linear_dependence;
    w.dependence.resize(m);
    for (std::size_t j = 0; j < m; ++j) w.dependence[j] = svd.right_vectors(j, m - 1);
    w.top_power_norm = top;
    double scale = 0.0;
    for (std::size_t j = 0; j < m; ++j) scale = std::max(scale, operator_norm(powers[j]));
    w.dependence_residual = operator_norm(polynomial(w.dependence, powers));
    if (!(w.dependence_residual <= kRankTolerance * scale)) return std::nullopt;
    return w;
  }
  return std::nullopt;
}

std::optional<GaugeWitness> certify_no_gauge_norm_scan(std::span<const cplx> coeffs,
                                                       std::span<const ComplexMatrix> powers,
                                                       const CircleGrid& grid, double margin) {
  if (std::none_of(coeffs.begin(), coeffs.end(), [](cplx c) { return c != 0.0; }))
    throw InputError("certify_no_gauge_norm_scan: all coefficients are zero");
  if (!(margin > 0.0)) throw InputError("certify_no_gauge_norm_scan: margin must be positive");
  require_powers(powers, coeffs.size(), "certify_no_gauge_norm_scan");

  std::vector<cplx> rotated(coeffs.begin(), coeffs.end());
  auto r_at = [&](std::size_t m) {
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      rotated[j] = grid.power(m, static_cast<long long>(j + 1)) * coeffs[j];
    return operator_norm(polynomial(rotated, powers));
  };

  const double r1 = r_at(0);
  GaugeWitness best;
  best.kind = WitnessKind::norm_asymmetry;
  best.margin = margin;
  double worst = 0.0;
  for (std::size_t m = 1; m < grid.size(); ++m) {
    const double r = r_at(m);
    const double ratio = r1 > 0.0 ? r / r1 : (r > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    const double dev = std::abs(ratio - 1.0);
    if (dev > worst) {
      worst = dev;
      best.phase = grid.node(m);
      best.ratio = ratio;
    }
  }
  if (worst > margin) return best;
  return std::nullopt;
}

}  // namespace opalg::gauge
