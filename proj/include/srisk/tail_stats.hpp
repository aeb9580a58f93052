#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srisk {

struct TailIndexEstimate {
  double alpha = 0.0;
  std::size_t k = 0;
  double std_error = 0.0;  // alpha / sqrt(k)
  std::size_t n = 0;
};

/// Hill estimator from the k largest order statistics:
/// alpha = k / sum_{i=1}^{k} log(X_(n-i+1) / X_(n-k)).
TailIndexEstimate hill_estimator(std::span<const double> samples, std::size_t k);

/// Hill plot: one estimate per k (sorting done once).
std::vector<TailIndexEstimate> hill_plot(std::span<const double> samples, std::span<const std::size_t> ks);

enum class RatioVerdict { Convergent, ConvergentToZero, Oscillating };
std::string_view verdict_name(RatioVerdict v);

struct RatioPoint {
  double x = 0.0;
  double ratio = 0.0;
};

struct TailRatioReport {
  double scale = 0.0;
  std::vector<RatioPoint> curve;
  RatioVerdict verdict = RatioVerdict::Convergent;
  double amplitude = 0.0;  // max - min of the ratio over the last decade of the grid
  double limit = 0.0;      // last ratio value
  std::optional<double> implied_index;  // -log(limit) / log(scale) when convergent to a positive limit
  std::optional<std::string> warning;
};

inline constexpr double kRatioTolerance = 0.01;

/// r(x) = tail(x y) / tail(x) on the grid. Grid points where tail(x) = 0 are
/// dropped with a truncated-grid warning.
TailRatioReport tail_ratio_diagnostic(const std::function<double(double)>& tail, double scale,
                                      std::span<const double> x_grid, double tolerance = kRatioTolerance);

/// Same, with the empirical tail of the samples.
TailRatioReport tail_ratio_diagnostic(std::span<const double> samples, double scale, std::span<const double> x_grid,
                                      double tolerance = kRatioTolerance);

enum class DominatedVerdict { InD, NotInD };
std::string_view verdict_name(DominatedVerdict v);

struct DominatedVariationReport {
  double scale = 0.0;
  double sup = 0.0;                  // max of tail(x y)/tail(x) over the last two decades
  double sup_last_decade = 0.0;
  double sup_previous_decade = 0.0;
  DominatedVerdict verdict = DominatedVerdict::InD;
};

inline constexpr double kDominatedGrowthTolerance = 0.1;

/// Checks limsup tail(x y)/tail(x) < inf for y in (0, 1): IN-D when the sup over
/// the last decade does not exceed the previous decade's sup by more than the
/// growth tolerance. The grid must span at least two decades.
DominatedVariationReport dominated_variation_check(const std::function<double(double)>& tail, double scale,
                                                   std::span<const double> x_grid,
                                                   double growth_tolerance = kDominatedGrowthTolerance);

/// n points log-spaced over [from, to].
std::vector<double> log_grid(double from, double to, std::size_t n);

}  // namespace srisk
