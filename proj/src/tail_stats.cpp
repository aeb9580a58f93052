#include "srisk/tail_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "srisk/error.hpp"

namespace srisk {
namespace {

std::vector<double> sorted_descending(std::span<const double> samples) {
  std::vector<double> v(samples.begin(), samples.end());
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hill_estimator: samples must be positive and finite");
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

TailIndexEstimate hill_from_sorted(const std::vector<double>& desc, std::size_t k) {
  const std::size_t n = desc.size();
  if (k < 10 || 2 * k > n) throw DomainError("hill_estimator: need 10 <= k <= n/2");
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(desc[i] / desc[k]);
  if (!(sum > 0.0)) throw DegenerateError("hill_estimator: top order statistics are tied");
  const double alpha = static_cast<double>(k) / sum;
  return {alpha, k, alpha / std::sqrt(static_cast<double>(k)), n};
}

}  // namespace

TailIndexEstimate hill_estimator(std::span<const double> samples, std::size_t k) {
  return hill_from_sorted(sorted_descending(samples), k);
}

std::vector<TailIndexEstimate> hill_plot(std::span<const double> samples, std::span<const std::size_t> ks) {
  const auto desc = sorted_descending(samples);
  std::vector<TailIndexEstimate> out;
  for (std::size_t k : ks) out.push_back(hill_from_sorted(desc, k));
  return out;
}

std::string_view verdict_name(RatioVerdict v) {
  switch (v) {
    case RatioVerdict::Convergent: return "CONVERGENT";
    case RatioVerdict::ConvergentToZero: return "CONVERGENT-TO-0";
    case RatioVerdict::Oscillating: return "OSCILLATING";
  }
  return "?";
}

std::string_view verdict_name(DominatedVerdict v) {
  return v == DominatedVerdict::InD ? "IN-D" : "NOT-IN-D";
}

TailRatioReport tail_ratio_diagnostic(const std::function<double(double)>& tail, double scale,
                                      std::span<const double> x_grid, double tolerance) {
  if (!(scale > 0.0)) throw DomainError("tail_ratio_diagnostic: scale must be positive");
  if (x_grid.empty()) throw DomainError("tail_ratio_diagnostic: empty grid");
  TailRatioReport report;
  report.scale = scale;
  for (double x : x_grid) {
    const double denom = tail(x);
    if (!(denom > 0.0)) {
      report.warning = "truncated grid: tail vanishes at x = " + std::to_string(x);
      break;
    }
    report.curve.push_back({x, tail(x * scale) / denom});
  }
  if (report.curve.empty()) throw DegenerateError("tail_ratio_diagnostic: tail is zero on the whole grid");

  const double top = report.curve.back().x;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : report.curve) {
    if (p.x >= top / 10.0) {
      lo = std::min(lo, p.ratio);
      hi = std::max(hi, p.ratio);
    }
  }
  report.amplitude = hi - lo;
  report.limit = report.curve.back().ratio;
  if (report.amplitude >= tolerance) {
    report.verdict = RatioVerdict::Oscillating;
  } else if (std::abs(report.limit) < tolerance) {
    report.verdict = RatioVerdict::ConvergentToZero;
  } else {
    report.verdict = RatioVerdict::Convergent;
    if (scale != 1.0) report.implied_index = -std::log(report.limit) / std::log(scale);
  }
  return report;
}

TailRatioReport tail_ratio_diagnostic(std::span<const double> samples, double scale, std::span<const double> x_grid,
                                      double tolerance) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto empirical = [&](double x) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(above) / n;
  };
  return tail_ratio_diagnostic(empirical, scale, x_grid, tolerance);
}

DominatedVariationReport dominated_variation_check(const std::function<double(double)>& tail, double scale,
                                                   std::span<const double> x_grid, double growth_tolerance) {
  if (!(scale > 0.0 && scale < 1.0)) throw DomainError("dominated_variation_check: scale must lie in (0, 1)");
  if (x_grid.empty() || !(x_grid.front() > 0.0) || x_grid.back() < 100.0 * x_grid.front()) {
    throw DomainError("dominated_variation_check: grid must span at least two decades");
  }
  DominatedVariationReport report;
  report.scale = scale;
  const double top = x_grid.back();
  for (double x : x_grid) {
    if (x < top / 100.0) continue;
    const double denom = tail(x);
    if (!(denom > 0.0)) {
      report.sup_last_decade = std::numeric_limits<double>::infinity();
      continue;
    }
    const double r = tail(x * scale) / denom;
    if (x >= top / 10.0) {
      report.sup_last_decade = std::max(report.sup_last_decade, r);
    } else {
      report.sup_previous_decade = std::max(report.sup_previous_decade, r);
    }
  }
  report.sup = std::max(report.sup_last_decade, report.sup_previous_decade);
  const bool bounded = std::isfinite(report.sup) &&
                       report.sup_last_decade <= (1.0 + growth_tolerance) * report.sup_previous_decade;
  report.verdict = bounded ? DominatedVerdict::InD : DominatedVerdict::NotInD;
  return report;
}

std::vector<double> log_grid(double from, double to, std::size_t n) {
  if (!(from > 0.0) || !(to > from) || n < 2) throw DomainError("log_grid: need 0 < from < to and n >= 2");
  std::vector<double> g(n);
  const double a = std::log(from);
  const double b = std::log(to);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  g.front() = from;
  g.back() = to;
  return g;
}

}  // namespace srisk
