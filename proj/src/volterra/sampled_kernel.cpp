// SPDX-License-Identifier: Apache-2.0
#include "opalg/volterra/sampled_kernel.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "opalg/errors.hpp"

namespace opalg::volterra {

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (!std::isfinite(t)) {
      sum = t;
      return;
    }
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return std::isfinite(sum) ? sum + carry : sum; }
};

struct GaussLegendre {
  std::array<double, 16> node{};
  std::array<double, 16> weight{};
};

// Nodes on [-1, 1] by Newton iteration on P_16 from Chebyshev guesses.
const GaussLegendre& gauss_legendre16() {
  static const GaussLegendre rule = [] {
    GaussLegendre g;
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      g.node[i] = x;
      g.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
  }();
  return rule;
}

// int_{x0}^{x1} (1 - t) dt
double ramp_mass(double x0, double x1) { return (x1 - x0) * (1.0 - 0.5 * (x0 + x1)); }

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw InputError("kernel: cannot parse number '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text, char sep) {
  std::vector<double> out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(parse_number(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

unsigned parse_unsigned(std::string_view text) {
  unsigned v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw InputError("kernel: cannot parse integer '" + std::string(text) + "'");
  return v;
}

void require_grid(std::size_t n) {
  if (n == 0) throw InputError("kernel: grid size must be positive");
}

}  // namespace

SampledKernel::SampledKernel(std::size_t n, SampleMode mode, std::string label)
    : mode_(mode), label_(std::move(label)), mu_(n), half_(2 * n), abs_half_(2 * n), sharp_half_(2 * n) {}

void SampledKernel::derive_cells() {
  const std::size_t n = mu_.size();
  mu_[0] = half_[0];
  for (std::size_t k = 1; k < n; ++k) mu_[k] = half_[2 * k - 1] + half_[2 * k];
}

void SampledKernel::derive_abs_and_sharp() {
  const double w = 0.5 * step_size();
  for (std::size_t q = 0; q < half_.size(); ++q) {
    const double x0 = static_cast<double>(q) * w;
    const double a = std::abs(half_[q]);
    abs_half_[q] = a;
    sharp_half_[q] = a * a / w * (1.0 - x0 - 0.5 * w);
  }
}

SampledKernel SampledKernel::constant(cplx c, std::size_t n) {
  require_grid(n);
  SampledKernel k(n, SampleMode::exact_cell_integral, "const");
  const double two_n = 2.0 * static_cast<double>(n);
  const double w = 0.5 / static_cast<double>(n);
  for (std::size_t q = 0; q < 2 * n; ++q) {
    const double x0 = static_cast<double>(q) / two_n;
    const double x1 = static_cast<double>(q + 1) / two_n;
    k.half_[q] = c * w;
    k.abs_half_[q] = std::abs(c) * w;
    k.sharp_half_[q] = std::norm(c) * ramp_mass(x0, x1);
  }
  k.derive_cells();
  return k;
}

SampledKernel SampledKernel::polynomial(std::span<const double> coeffs, std::size_t n) {
  require_grid(n);
  if (coeffs.empty()) throw InputError("kernel: polynomial needs at least one coefficient");
  SampledKernel k(n, SampleMode::exact_cell_integral, "poly");
  const auto& gl = gauss_legendre16();
  const double two_n = 2.0 * static_cast<double>(n);
  auto eval = [&](double t) {
    double p = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) p = p * t + coeffs[j];
    return p;
  };
  for (std::size_t q = 0; q < 2 * n; ++q) {
    const double x0 = static_cast<double>(q) / two_n;
    const double x1 = static_cast<double>(q + 1) / two_n;
    const double mid = 0.5 * (x0 + x1), rad = 0.5 * (x1 - x0);
    double m = 0.0, a = 0.0, s = 0.0;
    for (std::size_t i = 0; i < gl.node.size(); ++i) {
      const double t = mid + rad * gl.node[i];
      const double p = eval(t);
      m += gl.weight[i] * p;
      a += gl.weight[i] * std::abs(p);
      s += gl.weight[i] * p * p * (1.0 - t);
    }
    k.half_[q] = rad * m;
    k.abs_half_[q] = rad * a;
    k.sharp_half_[q] = rad * s;
  }
  k.derive_cells();
  return k;
}

SampledKernel SampledKernel::power_over_factorial(unsigned p, std::size_t n) {
  if (p == 0) {
    auto k = constant(1.0, n);
    k.label_ = "powern:0";
    return k;
  }
  std::vector<double> c(p + 1, 0.0);
  c[p] = 1.0 / std::tgamma(static_cast<double>(p) + 1.0);
  auto k = polynomial(c, n);
  k.label_ = "powern:" + std::to_string(p);
  return k;
}

SampledKernel SampledKernel::step(std::span<const StepSegment> segments, std::size_t n) {
  require_grid(n);
  for (const auto& s : segments)
    if (!(s.a < s.b) || !std::isfinite(s.value)) throw InputError("kernel: step segment needs a < b and finite value");
  SampledKernel k(n, SampleMode::exact_cell_integral, "step");
  const double two_n = 2.0 * static_cast<double>(n);
  std::vector<double> cuts;
  for (std::size_t q = 0; q < 2 * n; ++q) {
    const double x0 = static_cast<double>(q) / two_n;
    const double x1 = static_cast<double>(q + 1) / two_n;
    cuts.assign({x0, x1});
    bool touched = false;
    for (const auto& s : segments) {
      if (s.b <= x0 || s.a >= x1) continue;
      touched = true;
      if (s.a > x0) cuts.push_back(s.a);
      if (s.b < x1) cuts.push_back(s.b);
    }
    if (!touched) continue;
    std::sort(cuts.begin(), cuts.end());
    double m = 0.0, a = 0.0, sh = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double lo = cuts[i], hi = cuts[i + 1];
      if (!(hi > lo)) continue;
      const double c = 0.5 * (lo + hi);
      double v = 0.0;
      for (const auto& s : segments)
        if (s.a <= c && c < s.b) v += s.value;
      m += v * (hi - lo);
      a += std::abs(v) * (hi - lo);
      sh += v * v * ramp_mass(lo, hi);
    }
    k.half_[q] = m;
    k.abs_half_[q] = a;
    k.sharp_half_[q] = sh;
  }
  k.derive_cells();
  return k;
}

SampledKernel SampledKernel::notell1(unsigned m, std::size_t n) {
  if (m == 0 || m > 40) throw InputError("kernel: notell1 block count must be in 1..40");
  if (n == 0 || (n & (n - 1)) != 0 || n < (std::size_t{1} << m))
    throw InputError("kernel: notell1:" + std::to_string(m) + " needs a power-of-two grid of at least 2^" +
                     std::to_string(m) + " cells, got " + std::to_string(n));
  std::vector<StepSegment> segs;
  for (unsigned j = 1; j <= m; ++j)
    segs.push_back({1.0 - std::ldexp(1.0, -static_cast<int>(j - 1)), 1.0 - std::ldexp(1.0, -static_cast<int>(j)),
                    std::ldexp(1.0, static_cast<int>(j)) / static_cast<double>(j)});
  auto k = step(segs, n);
  k.label_ = "notell1:" + std::to_string(m);
  return k;
}

SampledKernel SampledKernel::singular32(std::size_t n) {
  require_grid(n);
  SampledKernel k(n, SampleMode::exact_cell_integral, "singular32");
  const double two_n = 2.0 * static_cast<double>(n);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < 2 * n; ++q) {
    if (q + 1 == 2 * n) {
      k.half_[q] = inf;
      k.abs_half_[q] = inf;
      k.sharp_half_[q] = inf;
      continue;
    }
    const double x0 = static_cast<double>(q) / two_n;
    const double x1 = static_cast<double>(q + 1) / two_n;
    const double u0 = static_cast<double>(2 * n - q) / two_n;  // 1 - x0
    const double u1 = static_cast<double>(2 * n - q - 1) / two_n;
    const double a = std::sqrt(u0), b = std::sqrt(u1);
    // 2 (u1^{-1/2} - u0^{-1/2}) and u1^{-1} - u0^{-1} without cancellation
    const double mass = 2.0 * (x1 - x0) / (a * b * (a + b));
    k.half_[q] = mass;
    k.abs_half_[q] = mass;
    k.sharp_half_[q] = (x1 - x0) / (u0 * u1);
  }
  k.derive_cells();
  return k;
}

SampledKernel SampledKernel::sample(const std::function<cplx(double)>& f, std::size_t n) {
  require_grid(n);
  SampledKernel k(n, SampleMode::midpoint_sample, "sampled");
  const double two_n = 2.0 * static_cast<double>(n);
  const double w = 1.0 / two_n;
  for (std::size_t q = 0; q < 2 * n; ++q) {
    const double mid = (static_cast<double>(q) + 0.5) / two_n;
    const cplx v = f(mid);
    k.half_[q] = v * w;
    k.abs_half_[q] = std::abs(v) * w;
    k.sharp_half_[q] = std::norm(v) * w * (1.0 - mid);
  }
  k.derive_cells();
  return k;
}

SampledKernel SampledKernel::parse(std::string_view spec, std::size_t n) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  SampledKernel k = [&] {
    if (head == "const" && !body.empty()) return constant(parse_number(body), n);
    if (head == "poly" && !body.empty()) return polynomial(parse_list(body, ','), n);
    if (head == "powern" && !body.empty()) return power_over_factorial(parse_unsigned(body), n);
    if (head == "notell1" && !body.empty()) return notell1(parse_unsigned(body), n);
    if (head == "singular32" && colon == std::string_view::npos) return singular32(n);
    if (head == "step" && !body.empty()) {
      std::vector<StepSegment> segs;
      std::string_view rest = body;
      while (true) {
        const auto semi = rest.find(';');
        const auto v = parse_list(rest.substr(0, semi), ',');
        if (v.size() != 3) throw InputError("kernel: step segment needs a,b,v");
        segs.push_back({v[0], v[1], v[2]});
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
      }
      return step(segs, n);
    }
    throw InputError("kernel: unknown spec '" + std::string(spec) +
                     "' (expected const:c | poly:c0,c1,... | powern:n | step:a,b,v;... | notell1:m | singular32)");
  }();
  k.label_ = std::string(spec);
  return k;
}

std::size_t SampledKernel::support_index() const noexcept {
  for (std::size_t k = 0; k < mu_.size(); ++k)
    if (mu_[k] != 0.0) return k;
  return mu_.size();
}

double SampledKernel::support_start() const noexcept {
  return static_cast<double>(support_index()) / static_cast<double>(mu_.size());
}

double SampledKernel::l1_partial(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  const double scaled = x * static_cast<double>(half_.size());
  const auto full = std::min(static_cast<std::size_t>(scaled), half_.size());
  CompensatedSum s;
  for (std::size_t q = 0; q < full; ++q) s.add(abs_half_[q]);
  const double frac = scaled - static_cast<double>(full);
  if (full < half_.size() && frac > 0.0) s.add(frac * abs_half_[full]);
  return s.value();
}

double SampledKernel::cell_l1() const {
  CompensatedSum s;
  for (const auto& m : mu_) s.add(std::abs(m));
  return s.value();
}

double SampledKernel::sharp_norm_sq() const {
  CompensatedSum s;
  for (double v : sharp_half_) s.add(v);
  return s.value();
}

SampledKernel SampledKernel::resample(std::size_t n) const {
  if (n == 0 || mu_.size() % n != 0)
    throw InputError("kernel: cannot resample " + std::to_string(mu_.size()) + " cells onto " + std::to_string(n));
  const std::size_t f = mu_.size() / n;
  SampledKernel k(n, mode_, label_);
  for (std::size_t q = 0; q < 2 * n; ++q) {
    cplx m = 0.0;
    CompensatedSum a, s;
    for (std::size_t r = q * f; r < (q + 1) * f; ++r) {
      m += half_[r];
      a.add(abs_half_[r]);
      s.add(sharp_half_[r]);
    }
    k.half_[q] = m;
    k.abs_half_[q] = a.value();
    k.sharp_half_[q] = s.value();
  }
  k.derive_cells();
  return k;
}

SampledKernel SampledKernel::truncated_below(std::size_t cell) const {
  if (cell > mu_.size()) throw InputError("kernel: truncation point beyond the grid");
  SampledKernel k = *this;
  for (std::size_t q = 0; q < 2 * cell; ++q) {
    k.half_[q] = 0.0;
    k.abs_half_[q] = 0.0;
    k.sharp_half_[q] = 0.0;
  }
  k.derive_cells();
  return k;
}

SampledKernel combine(cplx alpha, const SampledKernel& f, const SampledKernel& g) {
  if (f.size() != g.size()) throw InputError("kernel: combine needs a shared grid");
  SampledKernel k(f.size(), SampleMode::midpoint_sample, "combine");
  for (std::size_t i = 0; i < f.mu_.size(); ++i) k.mu_[i] = alpha * f.mu_[i] + g.mu_[i];
  for (std::size_t q = 0; q < f.half_.size(); ++q) k.half_[q] = alpha * f.half_[q] + g.half_[q];
  k.derive_abs_and_sharp();
  return k;
}

}  // namespace opalg::volterra
