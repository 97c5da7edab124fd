// SPDX-License-Identifier: Apache-2.0
#include "opalg/volterra/volterra.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "opalg/errors.hpp"
#include "opalg/numkit/operator_norm.hpp"

namespace opalg::volterra {

namespace {

std::string num(std::size_t v) { return std::to_string(v); }

std::size_t grid_index(double x, std::size_t n, const char* who) {
  const double scaled = x * static_cast<double>(n);
  const double r = std::round(scaled);
  if (!(x >= 0.0 && x <= 1.0) || std::abs(scaled - r) > 1e-9)
    throw InputError(std::string(who) + ": " + std::to_string(x) + " is not a grid point of the " + num(n) +
                     "-cell grid");
  return static_cast<std::size_t>(r);
}

double norm_or_zero(const ComplexMatrix& a) { return a.dim() == 0 ? 0.0 : operator_norm(a); }

// Symbol of V^^p by repeated causal convolution.
std::vector<cplx> volterra_power_symbol(std::size_t n, unsigned p) {
  const auto v = volterra_matrix(n).toeplitz_symbol();
  std::vector<cplx> out(n, 0.0);
  out[0] = 1.0;
  for (unsigned i = 0; i < p; ++i) out = causal_convolution(out, v, n);
  return out;
}

double factorial(unsigned n) { return std::tgamma(static_cast<double>(n) + 1.0); }

}  // namespace

ComplexMatrix build_vf(const SampledKernel& f) {
  for (const auto& m : f.cell_integrals())
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
      throw InputError("build_vf: kernel '" + f.label() + "' has a non-finite cell integral");
  return ComplexMatrix::lower_toeplitz(f.cell_integrals());
}

ComplexMatrix build_vf(const SampledKernel& f, std::size_t n) {
  if (f.size() != n)
    throw InputError("build_vf: kernel sampled on " + num(f.size()) + " cells, requested " + num(n));
  return build_vf(f);
}

ComplexMatrix volterra_matrix(std::size_t n) { return build_vf(SampledKernel::constant(1.0, n)); }

ExperimentReport power_kernel_check(unsigned n, std::size_t grid) {
  if (n > 8) throw InputError("power_kernel_check: n must be at most 8");
  if (grid < 2) throw InputError("power_kernel_check: grid must have at least 2 cells");

  ExperimentReport rep;
  rep.experiment = "power-kernel";
  rep.param("n", std::to_string(n));
  rep.param("dim", num(grid));

  double e[2];
  for (int i = 0; i < 2; ++i) {
    const std::size_t g = grid << i;
    const auto lhs = ComplexMatrix::lower_toeplitz(volterra_power_symbol(g, n + 1));
    const auto rhs = build_vf(SampledKernel::power_over_factorial(n, g));
    e[i] = norm_or_zero(lhs - rhs);
    rep.row("error_" + num(g), e[i]);
  }
  rep.check("error_shrinks", e[1] < e[0] || (e[0] == 0.0 && e[1] == 0.0));
  return rep;
}

ExperimentReport l1_norm_bound_check(const SampledKernel& f) {
  ExperimentReport rep;
  rep.experiment = "l1-bound";
  rep.param("kernel", f.label());
  rep.param("dim", num(f.size()));
  const double sigma = operator_norm(build_vf(f));
  const double bound = f.cell_l1();
  rep.row("sigma_max", sigma);
  rep.row("cell_l1", bound);
  rep.row("l1_norm", f.l1_total());
  rep.check("sigma_le_cell_l1", sigma <= bound + 1e-10);
  return rep;
}

double hs_norm(const SampledKernel& f) { return std::sqrt(f.sharp_norm_sq()); }

V2Exact v2_exact() {
  const auto g = [](double eta) { return std::cosh(eta) * std::cos(eta) + 1.0; };
  double lo = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double hi = i / 10.0;
    if (g(lo) * g(hi) < 0.0) {
      V2Exact out;
      out.solve = find_root(g, lo, hi, 1e-12);
      out.eta0 = out.solve.root;
      out.norm = 1.0 / (out.eta0 * out.eta0);
      return out;
    }
    lo = hi;
  }
  throw NumericError("v2_exact: no sign change of cosh(eta)cos(eta)+1 on (0, 10]", lo);
}

ExperimentReport v2_convergence(std::span<const std::size_t> grids) {
  if (grids.empty()) throw InputError("v2_convergence: no grid sizes");
  ExperimentReport rep;
  rep.experiment = "v2norm";
  std::string list;
  for (auto g : grids) list += (list.empty() ? "" : ",") + num(g);
  rep.param("dims", list);

  const auto exact = v2_exact();
  const double two_over_pi = 2.0 / std::numbers::pi;
  rep.row("eta0", exact.eta0);
  rep.row("norm", exact.norm);
  rep.row("residual", exact.solve.residual);
  rep.row("two_over_pi", two_over_pi);
  rep.check("root_residual", std::abs(exact.solve.residual) < 1e-10);

  std::vector<double> err_v, err_v2;
  for (auto n : grids) {
    const auto v = volterra_matrix(n);
    const double s1 = operator_norm(v);
    const double s2 = operator_norm(v * v);
    err_v.push_back(std::abs(s1 - two_over_pi));
    err_v2.push_back(std::abs(s2 - exact.norm));
    rep.row("sigma_v_" + num(n), s1);
    rep.row("sigma_v2_" + num(n), s2);
    rep.row("error_v_" + num(n), err_v.back());
    rep.row("error_v2_" + num(n), err_v2.back());
  }
  bool dec_v = true, dec_v2 = true;
  for (std::size_t i = 1; i < grids.size(); ++i) {
    dec_v = dec_v && err_v[i] < err_v[i - 1];
    dec_v2 = dec_v2 && err_v2[i] < err_v2[i - 1];
  }
  rep.check("v_error_decreasing", dec_v);
  rep.check("v2_error_decreasing", dec_v2);
  rep.check("v_within_1e-2", err_v.back() <= 1e-2);
  rep.check("v2_within_1e-2", err_v2.back() <= 1e-2);
  return rep;
}

ExperimentReport power_norm_table(unsigned n_max, std::size_t grid) {
  if (n_max == 0 || n_max > 12) throw InputError("power_norm_table: n_max must be in 1..12");
  if (grid < 512) throw InputError("power_norm_table: grid must have at least 512 cells");

  ExperimentReport rep;
  rep.experiment = "littlereade";
  rep.param("nmax", std::to_string(n_max));
  rep.param("dim", num(grid));

  const auto v = volterra_matrix(grid).toeplitz_symbol();
  std::vector<cplx> sym = v;
  std::vector<double> c;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (n > 1) sym = causal_convolution(sym, v, grid);
    c.push_back(factorial(n) * operator_norm(ComplexMatrix::lower_toeplitz(sym)));
    rep.row("c_" + std::to_string(n), c.back());
  }
  rep.row("limit", 0.5);
  bool dec = true;
  for (std::size_t i = 1; i < c.size() && i < 8; ++i) dec = dec && c[i] < c[i - 1];
  rep.check("strictly_decreasing_to_8", dec);
  if (n_max >= 8) rep.check("c8_in_range", c[7] >= 0.45 && c[7] <= 0.6);
  return rep;
}

SampledKernel convolve(const SampledKernel& f, const SampledKernel& g) {
  if (f.size() != g.size())
    throw InputError("convolve: grids differ (" + num(f.size()) + " vs " + num(g.size()) + " cells)");
  const std::size_t n = f.size();
  const double h = f.step_size();

  auto samples = [&](const SampledKernel& k) {
    std::vector<cplx> s(k.mu_.begin(), k.mu_.end());
    s[0] /= 0.5 * h;
    for (std::size_t i = 1; i < n; ++i) s[i] /= h;
    return s;
  };
  const auto sf = samples(f);
  const auto sg = samples(g);

  SampledKernel out(n, SampleMode::midpoint_sample, "convolve");
  if (n > 1) {
    // c[k-1] = sum_{l<=k-1} s^f_{k-l} s^g_l
    const std::vector<cplx> shifted(sf.begin() + 1, sf.end());
    const auto c = causal_convolution(shifted, sg, n - 1);
    for (std::size_t k = 1; k < n; ++k) out.mu_[k] = h * h * c[k - 1];
  }
  out.half_[0] = out.mu_[0];
  for (std::size_t k = 1; k < n; ++k) out.half_[2 * k - 1] = out.half_[2 * k] = 0.5 * out.mu_[k];
  out.half_[2 * n - 1] = 0.5 * out.mu_[n - 1];
  out.derive_abs_and_sharp();
  return out;
}

bool nilpotency_check(const SampledKernel& f, unsigned n) {
  if (n == 0) throw InputError("nilpotency_check: n must be positive");
  return power(build_vf(f), n).is_zero();
}

NilpotentApproximation nilpotent_approximation(const SampledKernel& f, double delta) {
  const std::size_t n = f.size();
  const std::size_t d = grid_index(delta, n, "nilpotent_approximation");
  NilpotentApproximation out{f.truncated_below(d), f.l1_partial(static_cast<double>(d) / static_cast<double>(n))};
  out.distance = norm_or_zero(build_vf(f) - build_vf(out.kernel));
  out.nilpotency_index = d == 0 ? 0 : (n + d - 1) / d;
  out.within_bound = out.distance <= out.bound + 1e-10;
  return out;
}

SupportEstimate titchmarsh_alpha(const SampledKernel& f, const SampledKernel& g) {
  const auto prod = build_vf(convolve(f, g));
  const double sigma = prod.is_zero() ? 0.0 : operator_norm(prod);
  if (!(sigma < 1e-10))
    throw PreconditionError("titchmarsh_alpha: f * g is not numerically zero (sigma_max = " + std::to_string(sigma) +
                            ")");
  SupportEstimate out;
  out.alpha = f.support_start();
  out.beta = g.support_start();
  out.product_norm = sigma;
  out.consistent = out.alpha + out.beta >= 1.0 - 2.0 / static_cast<double>(f.size());
  return out;
}

ExperimentReport muntz_no_gauge_demo(unsigned degree, std::size_t grid) {
  if (degree < 2) throw InputError("muntz_no_gauge_demo: degree must be at least 2");
  if (degree > 20) throw InputError("muntz_no_gauge_demo: degree above 20 is not supported");
  if (grid < 2) throw InputError("muntz_no_gauge_demo: grid must have at least 2 cells");

  ExperimentReport rep;
  rep.experiment = "muntz";
  rep.param("degree", std::to_string(degree));
  rep.param("dim", num(grid));

  constexpr int kPoints = 1000;
  const int terms = static_cast<int>(degree) - 1;
  Eigen::MatrixXd a(kPoints, terms);
  Eigen::VectorXd b(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    const double x = static_cast<double>(i) / (kPoints - 1);
    b(i) = x;
    double p = x;
    for (int j = 0; j < terms; ++j) {
      p *= x;
      a(i, j) = p;
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < terms)
    throw NumericError("muntz_no_gauge_demo: least-squares design is rank deficient (rank " +
                           std::to_string(qr.rank()) + " of " + std::to_string(terms) + "); conditioning too poor",
                       static_cast<double>(qr.rank()));
  const Eigen::VectorXd coef = qr.solve(b);
  const double eps = (a * coef - b).cwiseAbs().maxCoeff();

  // V^^2 - sum_j j! a_j V^^{j+1}, assembled on the Toeplitz symbol.
  const auto v = volterra_matrix(grid).toeplitz_symbol();
  std::vector<cplx> pw = causal_convolution(v, v, grid);
  std::vector<cplx> sym = pw;
  double max_coef = 0.0;
  for (int j = 0; j < terms; ++j) {
    const unsigned power_j = static_cast<unsigned>(j) + 2;
    pw = causal_convolution(pw, v, grid);
    const double c = factorial(power_j) * coef(j);
    for (std::size_t k = 0; k < grid; ++k) sym[k] -= c * pw[k];
    max_coef = std::max(max_coef, std::abs(coef(j)));
    rep.row("a_" + std::to_string(power_j), coef(j));
  }
  const double resid = operator_norm(ComplexMatrix::lower_toeplitz(sym));
  const double bound = eps + 5.0 / static_cast<double>(grid);
  const double v2 = v2_exact().norm;

  rep.row("epsilon", eps);
  rep.row("max_abs_coefficient", max_coef);
  rep.row("operator_residual", resid);
  rep.row("residual_bound", bound);
  rep.row("v2_norm", v2);
  rep.row("contradiction_margin", v2 / eps);
  rep.check("operator_residual_le_bound", resid <= bound);
  rep.check("contradiction_margin_gt_1", v2 / eps > 1.0);
  return rep;
}

ExperimentReport ideal_restriction_check(const SampledKernel& f, double x0, const SampledKernel& g) {
  if (f.size() != g.size()) throw InputError("ideal_restriction_check: kernels live on different grids");
  const std::size_t n = f.size();
  const std::size_t d = grid_index(x0, n, "ideal_restriction_check");
  const auto halves = f.half_cells();
  for (std::size_t q = 0; q < 2 * d; ++q)
    if (halves[q] != 0.0)
      throw PreconditionError("ideal_restriction_check: f does not vanish on [0, x0]; half-cell " + num(q) +
                              " (from x = " + std::to_string(static_cast<double>(q) / (2.0 * n)) + ") carries mass");

  ExperimentReport rep;
  rep.experiment = "ideal-restriction";
  rep.param("x0", std::to_string(x0));
  rep.param("f", f.label());
  rep.param("g", g.label());
  rep.param("dim", num(n));

  const auto prod = convolve(g, f);
  const double compression_f = norm_or_zero(build_vf(f).corner(d));
  const double compression_g = norm_or_zero(build_vf(g).corner(d));
  rep.row("product_support_start", prod.support_start());
  rep.row("compression_f", compression_f);
  rep.row("compression_g", compression_g);
  rep.check("absorption", prod.support_index() >= d);
  rep.check("compression_f_zero", compression_f == 0.0);
  return rep;
}

ExperimentReport unbounded_witness_check(std::span<const std::size_t> grids) {
  if (grids.size() < 2) throw InputError("unbounded_witness_check: need at least two grid sizes");
  for (std::size_t i = 1; i < grids.size(); ++i)
    if (grids[i] <= grids[i - 1]) throw InputError("unbounded_witness_check: grid sizes must increase");

  ExperimentReport rep;
  rep.experiment = "unbounded-witness";
  std::string list;
  for (auto g : grids) list += (list.empty() ? "" : ",") + num(g);
  rep.param("dims", list);

  // int_0^1 int_0^x (1 - t)^{-3/2} dt dx = 2 int_0^1 ((1 - x)^{-1/2} - 1) dx
  rep.row("kernel_double_integral", 2.0);
  std::vector<double> sigma;
  for (auto n : grids) {
    sigma.push_back(operator_norm(build_vf(SampledKernel::singular32(n))));
    rep.row("sigma_" + num(n), sigma.back());
  }
  bool inc = true;
  for (std::size_t i = 1; i < sigma.size(); ++i) inc = inc && sigma[i] > sigma[i - 1];
  const double ratio = sigma.back() / sigma.front();
  rep.row("growth_ratio", ratio);
  rep.check("strictly_increasing", inc);
  rep.check("growth_ratio_gt_4", ratio > 4.0);
  return rep;
}

}  // namespace opalg::volterra
