// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "opalg/cli/cli.hpp"
#include "opalg/errors.hpp"
#include "opalg/gauge/gauge.hpp"
#include "opalg/numkit/circle.hpp"
#include "opalg/numkit/operator_norm.hpp"
#include "opalg/shift/shift.hpp"
#include "opalg/volterra/volterra.hpp"

namespace opalg::cli {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

struct Entry {
  std::string_view name;
  bool weights = false;
  bool kernel = false;
  bool nodes = false;
};

constexpr Entry kEntries[] = {
    {"v2norm"},
    {"littlereade"},
    {"notell1"},
    {"inequivalence"},
    {"equivalence", true},
    {"fejer", true, false, true},
    {"neumann", true},
    {"titchmarsh"},
    {"muntz"},
    {"nilpotent-density", false, true},
    {"unbounded-witness"},
    {"gauge-scan", true, false, true},
    {"quasinilpotence", true},
};

const Entry* find_entry(std::string_view name) {
  for (const auto& e : kEntries)
    if (e.name == name) return &e;
  return nullptr;
}

std::size_t dim_or(const ExperimentConfig& c, std::size_t d) { return c.dim.value_or(d); }
unsigned nmax_or(const ExperimentConfig& c, unsigned d) { return c.nmax.value_or(d); }

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// ---- experiments -------------------------------------------------------

ExperimentReport run_v2norm(const ExperimentConfig& c, Params& echo) {
  std::vector<std::size_t> dims{250, 500, 1000};
  if (c.dim) dims = {*c.dim / 4, *c.dim / 2, *c.dim};
  echo.emplace_back("dim", std::to_string(dims.back()));
  return volterra::v2_convergence(dims);
}

ExperimentReport run_littlereade(const ExperimentConfig& c, Params& echo) {
  const auto n = dim_or(c, 1024);
  const auto k = nmax_or(c, 8);
  echo.emplace_back("dim", std::to_string(n));
  echo.emplace_back("nmax", std::to_string(k));
  return volterra::power_norm_table(k, n);
}

ExperimentReport run_notell1(const ExperimentConfig& c, Params& echo) {
  const unsigned m = nmax_or(c, 20);
  const std::size_t coarse = dim_or(c, 1024);
  const std::size_t fine = std::max(std::size_t{1} << m, coarse);
  echo.emplace_back("dim", std::to_string(coarse));
  echo.emplace_back("nmax", std::to_string(m));

  const auto f = volterra::SampledKernel::notell1(m, fine);
  ExperimentReport rep;
  rep.experiment = "notell1";
  rep.param("fine_dim", std::to_string(fine));

  double harmonic = 0.0, inv_sq = 0.0;
  for (unsigned n = 1; n <= m; ++n) {
    harmonic += 1.0 / n;
    inv_sq += 1.0 / (static_cast<double>(n) * n);
  }
  const double l1 = f.l1_partial(1.0 - std::ldexp(1.0, -static_cast<int>(m)));
  const double sharp = f.sharp_norm_sq();
  const double sharp_closed = 1.5 * inv_sq;
  const double pi2_4 = std::numbers::pi * std::numbers::pi / 4.0;
  const auto coarse_kernel = f.resample(coarse);
  const double sigma = operator_norm(volterra::build_vf(coarse_kernel));

  rep.row("l1_partial", l1);
  rep.row("harmonic_sum", harmonic);
  rep.row("sharp_norm_sq", sharp);
  rep.row("sharp_closed_form", sharp_closed);
  rep.row("pi_sq_over_4", pi2_4);
  // (3/2) sum_{n>m} 1/n^2 < 3/(2m)
  const double tail_bound = 1.5 / m;
  rep.row("tail_bound", tail_bound);
  rep.row("sigma_max", sigma);
  rep.row("cell_l1", coarse_kernel.cell_l1());
  rep.row("pi_over_2", std::numbers::pi / 2.0);
  rep.check("l1_partial_exact", std::abs(l1 - harmonic) <= 1e-12);
  rep.check("sharp_exact", std::abs(sharp - sharp_closed) <= 1e-12);
  rep.check("sharp_near_limit", std::abs(sharp - pi2_4) <= tail_bound);
  rep.check("sigma_le_pi_over_2", sigma <= std::numbers::pi / 2.0 + 1e-6);
  rep.check("sigma_le_cell_l1", sigma <= coarse_kernel.cell_l1() + 1e-10);
  return rep;
}

ExperimentReport run_inequivalence(const ExperimentConfig& c, Params& echo) {
  const unsigned n = nmax_or(c, 3);
  const std::size_t d = dim_or(c, 2 * static_cast<std::size_t>(n));
  echo.emplace_back("dim", std::to_string(d));
  echo.emplace_back("nmax", std::to_string(n));
  return shift::inequivalence_demo(n, d);
}

shift::WeightSequence weights_of(const ExperimentConfig& c, Params& echo) {
  auto w = shift::WeightSequence::parse(c.weights.value_or("harmonic"));
  echo.emplace_back("weights", w.describe());
  return w;
}

ExperimentReport run_equivalence(const ExperimentConfig& c, Params& echo) {
  const auto w = weights_of(c, echo);
  const std::size_t n = dim_or(c, 64);
  const unsigned trials = nmax_or(c, 100);
  echo.emplace_back("dim", std::to_string(n));
  echo.emplace_back("nmax", std::to_string(trials));
  return shift::norm_equivalence_report(shift::build_shift(w, n), trials, c.seed);
}

ExperimentReport run_fejer(const ExperimentConfig& c, Params& echo) {
  const auto w = weights_of(c, echo);
  const std::size_t n = dim_or(c, 16);
  const std::size_t m = c.nodes.value_or(2 * n);
  const unsigned d = nmax_or(c, 4);
  echo.emplace_back("dim", std::to_string(n));
  echo.emplace_back("nodes", std::to_string(m));
  echo.emplace_back("nmax", std::to_string(d));

  const auto t = shift::build_shift(w, n);
  const auto powers = t.powers();
  const auto coeffs = shift::random_coefficients(d, c.seed, 0);
  const auto s = gauge::polynomial(coeffs, powers);
  const auto series = gauge::fourier_coefficients(s, CircleGrid(m), powers);

  ExperimentReport rep;
  rep.experiment = "fejer";
  double coef_err = 0.0;
  for (unsigned j = 1; j <= d; ++j) coef_err = std::max(coef_err, std::abs(series.raw(j) - coeffs[j - 1]));
  for (std::size_t j = d + 1; j < n; ++j) coef_err = std::max(coef_err, std::abs(series.raw(static_cast<int>(j))));
  rep.row("coefficient_error", coef_err);
  rep.row("band_residual", series.band_residual);
  rep.check("coefficients_exact", coef_err <= 1e-12);

  bool within = true;
  for (int k : {1, 2, 4, 8}) {
    const int nn = k * static_cast<int>(d);
    const double err = operator_norm(s - gauge::fejer_sum(series, nn, powers));
    const double bound = gauge::fejer_error_bound(series, nn, powers);
    rep.row("error_n" + std::to_string(nn), err);
    rep.row("bound_n" + std::to_string(nn), bound);
    within = within && err <= bound * (1.0 + 1e-12) + 1e-14;
  }
  const double err1000 = operator_norm(s - gauge::fejer_sum(series, 1000, powers));
  rep.row("error_n1000", err1000);
  rep.row("bound_n1000", gauge::fejer_error_bound(series, 1000, powers));
  within = within && err1000 <= gauge::fejer_error_bound(series, 1000, powers) * (1.0 + 1e-12) + 1e-14;
  rep.check("fejer_bound", within);
  return rep;
}

ExperimentReport run_neumann(const ExperimentConfig& c, Params& echo) {
  const auto w = weights_of(c, echo);
  const std::size_t n = dim_or(c, 32);
  const unsigned trials = nmax_or(c, 20);
  echo.emplace_back("dim", std::to_string(n));
  echo.emplace_back("nmax", std::to_string(trials));

  const auto t = shift::build_shift(w, n);
  const auto powers = t.powers();
  ExperimentReport rep;
  rep.experiment = "neumann";
  double worst = 0.0;
  bool all = true;
  for (unsigned i = 0; i < trials; ++i) {
    const int k = 1 + static_cast<int>(i % 4);
    auto coeffs = shift::random_coefficients(n - 1, c.seed, i);
    for (int j = 0; j + 1 < k; ++j) coeffs[j] = 0.0;
    const auto s = gauge::polynomial(coeffs, powers);
    const auto r = shift::neumann_factor_check(s, k, t);
    worst = std::max(worst, *r.value("neumann_error"));
    all = all && r.all_passed();
  }
  rep.row("trials", trials);
  rep.row("max_neumann_error", worst);
  rep.check("reproduces_tk", all);
  return rep;
}

volterra::SampledKernel supported_step(double start, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> value(0.5, 2.0);
  const double mid = start + 0.5 * (1.0 - start);
  const volterra::StepSegment segs[] = {{start, mid, value(rng)}, {mid, 1.0, -value(rng)}};
  return volterra::SampledKernel::step(segs, n);
}

ExperimentReport run_titchmarsh(const ExperimentConfig& c, Params& echo) {
  const std::size_t n = dim_or(c, 100);
  echo.emplace_back("dim", std::to_string(n));
  std::mt19937_64 rng(c.seed);

  ExperimentReport rep;
  rep.experiment = "titchmarsh";
  bool consistent = true;
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t a = std::max<std::size_t>(1, (n * (5 + 9 * i)) / 100);
    const std::size_t b = n - a + (i % 2 == 0 ? 0 : std::max<std::size_t>(1, n / 20));
    if (b >= n) continue;
    const auto f = supported_step(static_cast<double>(a) / n, n, rng);
    const auto g = supported_step(static_cast<double>(b) / n, n, rng);
    const auto est = volterra::titchmarsh_alpha(f, g);
    rep.row("alpha_" + std::to_string(i), est.alpha);
    rep.row("beta_" + std::to_string(i), est.beta);
    consistent = consistent && est.consistent;
  }
  rep.check("alpha_plus_beta_ge_1", consistent);

  const std::size_t q = (3 * n) / 10;
  const auto f = supported_step(static_cast<double>(q) / n, n, rng);
  const auto g = supported_step(static_cast<double>(q) / n, n, rng);
  bool rejected = false;
  try {
    (void)volterra::titchmarsh_alpha(f, g);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  rep.check("nonzero_product_rejected", rejected);
  return rep;
}

ExperimentReport run_muntz(const ExperimentConfig& c, Params& echo) {
  const unsigned d = nmax_or(c, 12);
  const std::size_t n = dim_or(c, 1000);
  echo.emplace_back("dim", std::to_string(n));
  echo.emplace_back("nmax", std::to_string(d));
  return volterra::muntz_no_gauge_demo(d, n);
}

ExperimentReport run_nilpotent_density(const ExperimentConfig& c, Params& echo) {
  const std::size_t n = dim_or(c, 100);
  const std::string spec = c.kernel.value_or("const:1");
  echo.emplace_back("dim", std::to_string(n));
  echo.emplace_back("kernel", spec);
  const auto f = volterra::SampledKernel::parse(spec, n);

  ExperimentReport rep;
  rep.experiment = "nilpotent-density";
  bool within = true, nilpotent = true;
  for (double target : {0.5, 0.25, 0.1, 0.05, 0.0}) {
    const double delta = std::round(target * static_cast<double>(n)) / static_cast<double>(n);
    const auto approx = volterra::nilpotent_approximation(f, delta);
    char label[32];
    std::snprintf(label, sizeof label, "%.6g", delta);
    rep.row(std::string("bound_") + label, approx.bound);
    rep.row(std::string("distance_") + label, approx.distance);
    rep.row(std::string("index_") + label, static_cast<double>(approx.nilpotency_index));
    within = within && approx.within_bound;
    if (approx.nilpotency_index > 0)
      nilpotent = nilpotent && volterra::nilpotency_check(approx.kernel, approx.nilpotency_index);
  }
  rep.check("distance_within_l1_bound", within);
  rep.check("truncation_nilpotent", nilpotent);
  return rep;
}

ExperimentReport run_unbounded(const ExperimentConfig& c, Params& echo) {
  std::vector<std::size_t> dims{64, 128, 256};
  if (c.dim) dims = {*c.dim / 4, *c.dim / 2, *c.dim};
  echo.emplace_back("dim", std::to_string(dims.back()));
  return volterra::unbounded_witness_check(dims);
}

ExperimentReport run_gauge_scan(const ExperimentConfig& c, Params& echo) {
  const auto w = weights_of(c, echo);
  const std::size_t n = dim_or(c, 16);
  const std::size_t m = c.nodes.value_or(2 * n);
  echo.emplace_back("dim", std::to_string(n));
  echo.emplace_back("nodes", std::to_string(m));
  const CircleGrid grid(m);

  ExperimentReport rep;
  rep.experiment = "gauge-scan";

  const auto t = shift::build_shift(w, n);
  const auto powers = t.powers();
  const auto coeffs = shift::random_coefficients(n - 1, c.seed, 0);
  const auto s = gauge::polynomial(coeffs, powers);
  const double ns = operator_norm(s);
  double defect = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    defect = std::max(defect, std::abs(operator_norm(gauge::gauge_conjugate(s, grid, i)) - ns));
  rep.row("shift_isometry_defect", defect);
  rep.check("shift_gauge_isometric", defect < 1e-9);
  rep.check("shift_scan_flat", !gauge::certify_no_gauge_norm_scan(coeffs, powers, grid, 1e-8));

  ComplexMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 1.0 / static_cast<double>(i + 1);
  const auto dpow = gauge::powers_of(d, 2);
  const std::vector<cplx> diff{1.0, -1.0};
  const auto asym = gauge::certify_no_gauge_norm_scan(diff, dpow, grid, 1e-8);
  rep.row("diag_ratio", asym ? asym->ratio : 1.0);
  rep.row("diag_phase_re", asym ? asym->phase.real() : 1.0);
  rep.row("diag_phase_im", asym ? asym->phase.imag() : 0.0);
  rep.check("diag_ratio_8", asym && std::abs(asym->ratio - 8.0) <= 1e-12);

  ComplexMatrix p(n);
  p(0, 0) = 1.0;
  const auto dep = gauge::certify_no_gauge_linear_dependence(gauge::powers_of(p, 2));
  rep.row("projection_dependence_residual", dep ? dep->dependence_residual : -1.0);
  rep.check("projection_witness", dep.has_value());

  ComplexMatrix e12(2);
  e12(0, 1) = 1.0;
  rep.check("nilpotent_no_witness", !gauge::certify_no_gauge_linear_dependence(gauge::powers_of(e12, 2)));
  return rep;
}

ExperimentReport run_quasinilpotence(const ExperimentConfig& c, Params& echo) {
  const auto w = weights_of(c, echo);
  const unsigned n = nmax_or(c, 8);
  const std::size_t k = dim_or(c, 64);
  echo.emplace_back("dim", std::to_string(k));
  echo.emplace_back("nmax", std::to_string(n));
  return shift::quasinilpotence_profile(w, n, k);
}

using Runner = ExperimentReport (*)(const ExperimentConfig&, Params&);

const std::map<std::string_view, Runner>& runners() {
  static const std::map<std::string_view, Runner> table{
      {"v2norm", run_v2norm},
      {"littlereade", run_littlereade},
      {"notell1", run_notell1},
      {"inequivalence", run_inequivalence},
      {"equivalence", run_equivalence},
      {"fejer", run_fejer},
      {"neumann", run_neumann},
      {"titchmarsh", run_titchmarsh},
      {"muntz", run_muntz},
      {"nilpotent-density", run_nilpotent_density},
      {"unbounded-witness", run_unbounded},
      {"gauge-scan", run_gauge_scan},
      {"quasinilpotence", run_quasinilpotence},
  };
  return table;
}

void validate_ranges(const ExperimentConfig& c) {
  const std::string_view e = c.experiment;
  const auto dim = c.dim;
  const auto nmax = c.nmax;
  auto dim_in = [&](std::size_t lo, std::size_t hi) {
    if (dim) require(*dim >= lo && *dim <= hi, "dim: must be in " + std::to_string(lo) + ".." + std::to_string(hi) +
                                                     " for " + std::string(e));
  };
  auto nmax_in = [&](unsigned lo, unsigned hi) {
    if (nmax) require(*nmax >= lo && *nmax <= hi, "nmax: must be in " + std::to_string(lo) + ".." +
                                                       std::to_string(hi) + " for " + std::string(e));
  };

  if (e == "v2norm" || e == "unbounded-witness") {
    dim_in(8, 4096);
    if (dim) require(*dim % 4 == 0, "dim: must be divisible by 4 for " + std::string(e));
    require(!nmax, "nmax: not used by " + std::string(e));
  } else if (e == "littlereade") {
    dim_in(512, 4096);
    nmax_in(1, 12);
  } else if (e == "notell1") {
    nmax_in(1, 22);
    dim_in(2, std::size_t{1} << 22);
    if (dim) require(power_of_two(*dim), "dim: must be a power of two for notell1");
  } else if (e == "inequivalence") {
    nmax_in(1, 512);
    const std::size_t n = nmax.value_or(3);
    if (dim) require(*dim >= 2 * n && *dim <= 1024, "dim: must be in 2*nmax..1024 for inequivalence");
  } else if (e == "equivalence") {
    dim_in(2, 512);
    nmax_in(1, 100000);
  } else if (e == "fejer") {
    dim_in(2, 128);
    const std::size_t n = dim.value_or(16);
    if (nmax) require(*nmax >= 1 && *nmax < n, "nmax: polynomial degree must be in 1..dim-1 for fejer");
    if (c.nodes) require(*c.nodes >= 2 * n && *c.nodes <= 4096, "nodes: must be in 2*dim..4096");
  } else if (e == "neumann") {
    dim_in(8, 128);
    nmax_in(1, 10000);
  } else if (e == "titchmarsh") {
    dim_in(20, 4096);
    require(!nmax, "nmax: not used by titchmarsh");
  } else if (e == "muntz") {
    nmax_in(2, 20);
    dim_in(2, 4096);
  } else if (e == "nilpotent-density") {
    dim_in(2, 4096);
    require(!nmax, "nmax: not used by nilpotent-density");
  } else if (e == "gauge-scan") {
    dim_in(2, 128);
    const std::size_t n = dim.value_or(16);
    if (c.nodes) require(*c.nodes >= 2 && *c.nodes <= 4096 && *c.nodes % 2 == 0,
                         "nodes: must be even and in 2..4096 (" + std::to_string(2 * n) + " is alias-free)");
    require(!nmax, "nmax: not used by gauge-scan");
  } else if (e == "quasinilpotence") {
    dim_in(0, 1 << 20);
    nmax_in(1, 100000);
  }
}

}  // namespace

const std::vector<std::string_view>& experiment_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& e : kEntries) v.push_back(e.name);
    return v;
  }();
  return names;
}

void validate(const ExperimentConfig& c) {
  const Entry* e = find_entry(c.experiment);
  if (!e) {
    std::string list;
    for (auto n : experiment_names()) list += (list.empty() ? "" : ", ") + std::string(n);
    throw InputError("experiment: unknown name '" + c.experiment + "' (expected one of " + list + ")");
  }
  require(!c.weights || e->weights, "weights: not used by " + c.experiment);
  require(!c.kernel || e->kernel, "kernel: not used by " + c.experiment);
  require(!c.nodes || e->nodes, "nodes: not used by " + c.experiment);
  validate_ranges(c);
  if (c.weights) {
    const auto w = shift::WeightSequence::parse(*c.weights);
    const std::size_t default_dim = c.experiment == "fejer" || c.experiment == "gauge-scan" ? 16
                                    : c.experiment == "neumann"                              ? 32
                                                                                             : 64;
    const std::size_t need = c.experiment == "quasinilpotence" ? c.dim.value_or(64) + c.nmax.value_or(8) + 1
                                                               : c.dim.value_or(default_dim) - 1;
    require(w.available() >= need, "weights: list has " + std::to_string(w.available()) + " entries, need " +
                                       std::to_string(need));
  }
  if (c.kernel) (void)volterra::SampledKernel::parse(*c.kernel, c.dim.value_or(100));
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Params echo;
  ExperimentReport rep = runners().at(config.experiment)(config, echo);
  const auto stop = std::chrono::steady_clock::now();

  rep.experiment = config.experiment;
  Params params;
  params.emplace_back("seed", std::to_string(config.seed));
  for (auto& p : echo) params.push_back(std::move(p));
  for (auto& p : rep.params)
    if (std::none_of(params.begin(), params.end(), [&](const auto& q) { return q.first == p.first; }))
      params.push_back(std::move(p));
  rep.params = std::move(params);
  if (config.timing) rep.wall_time = std::chrono::duration<double>(stop - start).count();
  return rep;
}

}  // namespace opalg::cli
