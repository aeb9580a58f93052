#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "srisk/mellin.hpp"
#include "srisk/monte_carlo.hpp"
#include "srisk/sarmanov.hpp"

namespace srisk {

/// State after step i of S_i = sum_{k<=i} X_k prod_{j<=k} Y_j.
struct PathState {
  std::size_t step = 0;
  double discount = 1.0;  // prod_{j<=i} Y_j
  double partial_sum = 0.0;
  double running_max = 0.0;
};

std::vector<PathState> simulate_path(const SarmanovModel& model, std::size_t n, SeedStream& stream);

struct RuinEstimate {
  double threshold = 0.0;
  Horizon horizon;
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;  // 99%: estimate -/+ 2.576 SE, clipped to [0, 1]
  double ci_high = 0.0;
  std::size_t samples = 0;
  std::size_t hits = 0;
  // Infinite horizon only.
  std::optional<std::size_t> truncation_depth;
  std::optional<double> truncation_bound;
  std::optional<double> truncation_order;
};

/// Psi(x, n) = P[max_{k<=n} S_k > x] for every x, on common paths.
std::vector<RuinEstimate> estimate_finite_ruin(const SarmanovModel& model, std::span<const double> thresholds,
                                               std::size_t n, const McOptions& options);
RuinEstimate estimate_finite_ruin(const SarmanovModel& model, double threshold, std::size_t n,
                                  const McOptions& options);

/// P[X* Y*_theta > x] with X* ~ F and Y*_theta ~ twist(model) drawn independently.
std::vector<RuinEstimate> estimate_twisted_product_tail(const SarmanovModel& model,
                                                        std::span<const double> thresholds,
                                                        const McOptions& options);

/// Markov-type bound on the remainder R_m = sum_{i>m} X_i prod_{j<=i} Y_j:
/// P[R_m > x] <= E[(XY)^s] m_s^m / ((1 - m_s) x^s), m_s = E[Y^s].
struct TruncationPlan {
  std::size_t depth = 0;
  double bound = 0.0;
  double order = 1.0;           // s
  double discount_moment = 0.0;  // m_s
  double product_moment = 0.0;   // E[(X Y)^s] under the Sarmanov law
};

/// Smallest depth with bound < tolerance, trying orders s = 1, 3/4, 1/2, 1/4.
/// Throws TruncationError when no order has m_s < 1 and E[X^s] finite.
TruncationPlan plan_truncation(const SarmanovModel& model, double threshold, double tolerance);

/// Psi(x) = P[sup_n S_n > x], simulated to the truncation depth of the smallest threshold.
std::vector<RuinEstimate> estimate_infinite_ruin(const SarmanovModel& model, std::span<const double> thresholds,
                                                 double tolerance, const McOptions& options);
RuinEstimate estimate_infinite_ruin(const SarmanovModel& model, double threshold, double tolerance,
                                    const McOptions& options);

/// E[Y^alpha] + theta d1 E[phi2(Y) Y^alpha].
double asymptotic_constant_product(const SarmanovModel& model, double alpha);
/// (1 - m^n) / (1 - m) times the product constant, m = E[Y^alpha]. m = 1 is rejected.
double asymptotic_constant_finite(const SarmanovModel& model, double alpha, std::size_t n);
/// Product constant / (1 - m); requires m < 1.
double asymptotic_constant_infinite(const SarmanovModel& model, double alpha);

/// Expectation E[(X Y)^s] under the Sarmanov law.
double product_moment(const SarmanovModel& model, double s);

struct NegligibilityRow {
  double threshold = 0.0;
  BinomialEstimate single;  // X1 Y1 > x
  std::size_t joint_hits = 0;  // X1 Y1 > x and X2 Y2 Y1 > x
  double ratio = 0.0;
  double ratio_se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

std::vector<NegligibilityRow> joint_tail_negligibility(const SarmanovModel& model, std::span<const double> thresholds,
                                                       const McOptions& options);

struct HtildeReport {
  std::vector<double> v;
  std::vector<double> htilde;
  double integral = 0.0;  // int Htilde dG with Htilde interpolated linearly on the v grid
  bool finite = true;
  bool extrapolated = false;  // G has mass above the v grid; integral is then a lower bound there
};

/// Htilde(v) = sup_{x in grid} Hbar(x / v) / Hbar(x), integrated against G.
HtildeReport htilde_integrability_check(const std::function<double(double)>& product_tail, const UnivariateLaw& G,
                                        std::span<const double> v_grid, std::span<const double> x_grid);
/// Uses Hbar = tail of X* Y*_theta computed by multiplicative convolution.
HtildeReport htilde_integrability_check(const SarmanovModel& model, std::span<const double> v_grid,
                                        std::span<const double> x_grid);

}  // namespace srisk
