// SPDX-License-Identifier: Apache-2.0
#include "opalg/shift/weights.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "opalg/errors.hpp"

namespace opalg::shift {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw InputError(std::string(what) + ": cannot parse number '" + std::string(text) + "'");
  return v;
}

}  // namespace

WeightSequence WeightSequence::list(std::vector<cplx> values) {
  if (values.empty()) throw InputError("weights: list must not be empty");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InputError("weights: non-finite list entry");
  WeightSequence w;
  w.family_ = WeightFamily::explicit_list;
  w.values_ = std::move(values);
  return w;
}

WeightSequence WeightSequence::harmonic() {
  WeightSequence w;
  w.family_ = WeightFamily::harmonic;
  return w;
}

WeightSequence WeightSequence::geometric(double r) {
  if (!(r > 0.0 && r < 1.0)) throw InputError("weights: geometric ratio must lie in (0, 1)");
  WeightSequence w;
  w.family_ = WeightFamily::geometric;
  w.r_ = r;
  return w;
}

WeightSequence WeightSequence::ones() { return WeightSequence{}; }

WeightSequence WeightSequence::parse(std::string_view spec) {
  if (spec == "harmonic") return harmonic();
  if (spec == "ones") return ones();
  if (spec.starts_with("geometric:")) return geometric(parse_double(spec.substr(10), "weights"));
  if (spec.starts_with("list:")) {
    std::vector<cplx> values;
    std::string_view rest = spec.substr(5);
    while (true) {
      const auto comma = rest.find(',');
      values.emplace_back(parse_double(rest.substr(0, comma), "weights"), 0.0);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return list(std::move(values));
  }
  throw InputError("weights: unknown spec '" + std::string(spec) +
                   "' (expected list:a0,a1,... | harmonic | geometric:r | ones)");
}

std::size_t WeightSequence::available() const noexcept {
  return family_ == WeightFamily::explicit_list ? values_.size() : std::numeric_limits<std::size_t>::max();
}

cplx WeightSequence::at(std::size_t n) const {
  switch (family_) {
    case WeightFamily::explicit_list:
      if (n >= values_.size())
        throw IndexError("weights: index " + std::to_string(n) + " beyond list of length " +
                         std::to_string(values_.size()));
      return values_[n];
    case WeightFamily::harmonic:
      return 1.0 / static_cast<double>(n + 1);
    case WeightFamily::geometric:
      return std::pow(r_, static_cast<double>(n));
    case WeightFamily::ones:
      return 1.0;
  }
  return 0.0;
}

std::vector<cplx> WeightSequence::prefix(std::size_t count) const {
  std::vector<cplx> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = at(n);
  return out;
}

double WeightSequence::l2_sum_sq() const noexcept {
  switch (family_) {
    case WeightFamily::explicit_list: {
      double s = 0.0;
      for (const auto& v : values_) s += std::norm(v);
      return s;
    }
    case WeightFamily::harmonic:
      return std::numbers::pi * std::numbers::pi / 6.0;
    case WeightFamily::geometric:
      return 1.0 / (1.0 - r_ * r_);
    case WeightFamily::ones:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

bool WeightSequence::l2_finite() const noexcept { return std::isfinite(l2_sum_sq()); }

bool WeightSequence::monotone_decreasing(std::size_t count) const {
  if (family_ != WeightFamily::explicit_list) return true;
  for (std::size_t n = 1; n < count && n < values_.size(); ++n)
    if (std::abs(values_[n]) > std::abs(values_[n - 1])) return false;
  return true;
}

std::string WeightSequence::describe() const {
  switch (family_) {
    case WeightFamily::explicit_list: {
      std::string s = "list:";
      char buf[32];
      for (std::size_t i = 0; i < values_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", values_[i].real());
        if (i) s += ',';
        s += buf;
      }
      return s;
    }
    case WeightFamily::harmonic:
      return "harmonic";
    case WeightFamily::geometric: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "geometric:%.17g", r_);
      return buf;
    }
    case WeightFamily::ones:
      return "ones";
  }
  return {};
}

}  // namespace opalg::shift
