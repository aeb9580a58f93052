#include "srisk/ruin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srisk/error.hpp"

namespace srisk {
namespace {

RuinEstimate make_estimate(double x, Horizon horizon, const BinomialEstimate& b) {
  RuinEstimate r;
  r.threshold = x;
  r.horizon = horizon;
  r.estimate = b.p();
  r.std_error = b.se();
  r.ci_low = b.ci_low();
  r.ci_high = b.ci_high();
  r.samples = b.trials;
  r.hits = b.hits;
  return r;
}

void check_thresholds(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("ruin: empty threshold list");
  for (double x : xs) {
    if (!std::isfinite(x)) throw DomainError("ruin: thresholds must be finite");
  }
}

// Runs `depth` steps per path and counts max_k S_k > x for each threshold.
HitCounts count_ruin(const SarmanovModel& model, std::span<const double> xs, std::size_t depth,
                     const McOptions& options) {
  const PairSampler sampler(model);
  const bool nonnegative = model.insurance()->support().lower >= 0.0;
  const std::vector<double> thresholds(xs.begin(), xs.end());
  return run_chunked<HitCounts>(options, [&](std::size_t, SeedStream& stream, HitCounts& acc) {
    if (acc.hits.empty()) acc.hits.assign(thresholds.size(), 0);
    double discount = 1.0;
    double sum = 0.0;
    double running_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < depth; ++i) {
      const auto [x, y] = sampler(stream);
      discount *= y;
      sum += x * discount;
      running_max = std::max(running_max, sum);
    }
    ++acc.trials;
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      const bool ruined = running_max > thresholds[k];
      if (nonnegative && ruined != (sum > thresholds[k])) {
        throw std::logic_error("ruin: running maximum differs from final sum on a nonnegative path");
      }
      acc.hits[k] += ruined ? 1 : 0;
    }
  });
}

}  // namespace

std::vector<PathState> simulate_path(const SarmanovModel& model, std::size_t n, SeedStream& stream) {
  if (n == 0) throw DomainError("simulate_path: horizon must be >= 1");
  const PairSampler sampler(model);
  std::vector<PathState> path;
  path.reserve(n);
  PathState state;
  state.running_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= n; ++i) {
    const auto [x, y] = sampler(stream);
    state.step = i;
    state.discount *= y;
    state.partial_sum += x * state.discount;
    state.running_max = std::max(state.running_max, state.partial_sum);
    path.push_back(state);
  }
  return path;
}

std::vector<RuinEstimate> estimate_finite_ruin(const SarmanovModel& model, std::span<const double> thresholds,
                                               std::size_t n, const McOptions& options) {
  check_thresholds(thresholds);
  if (n == 0) throw DomainError("estimate_finite_ruin: horizon must be >= 1");
  const auto counts = count_ruin(model, thresholds, n, options);
  std::vector<RuinEstimate> out;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    out.push_back(make_estimate(thresholds[k], Horizon::finite(n), {counts.hits[k], counts.trials}));
  }
  return out;
}

RuinEstimate estimate_finite_ruin(const SarmanovModel& model, double threshold, std::size_t n,
                                  const McOptions& options) {
  return estimate_finite_ruin(model, std::span<const double>(&threshold, 1), n, options).front();
}

std::vector<RuinEstimate> estimate_twisted_product_tail(const SarmanovModel& model,
                                                        std::span<const double> thresholds,
                                                        const McOptions& options) {
  check_thresholds(thresholds);
  const auto& F = *model.insurance();
  const auto twisted = twist(model);
  const std::vector<double> xs(thresholds.begin(), thresholds.end());
  const auto counts = run_chunked<HitCounts>(options, [&](std::size_t, SeedStream& stream, HitCounts& acc) {
    if (acc.hits.empty()) acc.hits.assign(xs.size(), 0);
    const double y = twisted->sample(stream);
    const double product = F.sample(stream) * y;
    ++acc.trials;
    for (std::size_t k = 0; k < xs.size(); ++k) acc.hits[k] += product > xs[k] ? 1 : 0;
  });
  std::vector<RuinEstimate> out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out.push_back(make_estimate(xs[k], Horizon::finite(1), {counts.hits.empty() ? 0 : counts.hits[k], counts.trials}));
  }
  return out;
}

double product_moment(const SarmanovModel& model, double s) {
  const auto& F = *model.insurance();
  const auto& G = *model.financial();
  double v = F.fractional_moment(s).value.real() * G.fractional_moment(s).value.real();
  if (model.theta() != 0.0) {
    v += model.theta() * kernel_weighted_moment(F, model.insurance_kernel(), s).value.real() *
         kernel_weighted_moment(G, model.financial_kernel(), s).value.real();
  }
  return v;
}

TruncationPlan plan_truncation(const SarmanovModel& model, double threshold, double tolerance) {
  if (!(threshold > 0.0)) throw DomainError("plan_truncation: threshold must be positive");
  if (!(tolerance > 0.0)) throw DomainError("plan_truncation: tolerance must be positive");
  const auto& F = *model.insurance();
  const auto& G = *model.financial();
  for (double s : {1.0, 0.75, 0.5, 0.25}) {
    if (!(s < F.moment_strip().second) || !(s < G.moment_strip().second)) continue;
    const double ms = G.fractional_moment(s).value.real();
    if (!(ms < 1.0)) continue;
    TruncationPlan plan;
    plan.order = s;
    plan.discount_moment = ms;
    plan.product_moment = product_moment(model, s);
    const double scale = plan.product_moment / ((1.0 - ms) * std::pow(threshold, s));
    double power = ms;
    for (std::size_t m = 1; m < 100000; ++m, power *= ms) {
      const double bound = scale * power;
      if (bound < tolerance) {
        plan.depth = m;
        plan.bound = bound;
        return plan;
      }
    }
  }
  throw TruncationError("infinite-horizon truncation unjustified: no order s in {1, 3/4, 1/2, 1/4} has "
                        "E[Y^s] < 1 with E[X^s] finite");
}

std::vector<RuinEstimate> estimate_infinite_ruin(const SarmanovModel& model, std::span<const double> thresholds,
                                                 double tolerance, const McOptions& options) {
  check_thresholds(thresholds);
  const double smallest = *std::min_element(thresholds.begin(), thresholds.end());
  const auto plan = plan_truncation(model, smallest, tolerance);
  const auto counts = count_ruin(model, thresholds, plan.depth, options);
  std::vector<RuinEstimate> out;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    auto r = make_estimate(thresholds[k], Horizon::infinite(), {counts.hits[k], counts.trials});
    r.truncation_depth = plan.depth;
    // The bound decreases in x, so the plan for the smallest threshold covers all.
    r.truncation_bound = plan.product_moment * std::pow(plan.discount_moment, static_cast<double>(plan.depth)) /
                         ((1.0 - plan.discount_moment) * std::pow(thresholds[k], plan.order));
    r.truncation_order = plan.order;
    out.push_back(r);
  }
  return out;
}

RuinEstimate estimate_infinite_ruin(const SarmanovModel& model, double threshold, double tolerance,
                                    const McOptions& options) {
  return estimate_infinite_ruin(model, std::span<const double>(&threshold, 1), tolerance, options).front();
}

double asymptotic_constant_product(const SarmanovModel& model, double alpha) {
  return twisted_mellin(model, alpha, 0.0).value.real();
}

double asymptotic_constant_finite(const SarmanovModel& model, double alpha, std::size_t n) {
  if (n == 0) throw DomainError("asymptotic_constant_finite: horizon must be >= 1");
  const double m = model.financial()->fractional_moment(alpha).value.real();
  if (std::abs(1.0 - m) < 1e-12) throw SingularRatioError("asymptotic_constant_finite: E[Y^alpha] = 1");
  return (1.0 - std::pow(m, static_cast<double>(n))) / (1.0 - m) * asymptotic_constant_product(model, alpha);
}

double asymptotic_constant_infinite(const SarmanovModel& model, double alpha) {
  const double m = model.financial()->fractional_moment(alpha).value.real();
  if (!(m < 1.0)) throw SingularRatioError("asymptotic_constant_infinite: requires E[Y^alpha] < 1");
  return asymptotic_constant_product(model, alpha) / (1.0 - m);
}

std::vector<NegligibilityRow> joint_tail_negligibility(const SarmanovModel& model, std::span<const double> thresholds,
                                                       const McOptions& options) {
  check_thresholds(thresholds);
  const PairSampler sampler(model);
  const std::vector<double> xs(thresholds.begin(), thresholds.end());
  const std::size_t k = xs.size();
  // hits[0..k): single, hits[k..2k): joint
  const auto counts = run_chunked<HitCounts>(options, [&](std::size_t, SeedStream& stream, HitCounts& acc) {
    if (acc.hits.empty()) acc.hits.assign(2 * k, 0);
    const auto [x1, y1] = sampler(stream);
    const auto [x2, y2] = sampler(stream);
    const double first = x1 * y1;
    const double second = x2 * y2 * y1;
    ++acc.trials;
    for (std::size_t i = 0; i < k; ++i) {
      if (first > xs[i]) {
        ++acc.hits[i];
        if (second > xs[i]) ++acc.hits[k + i];
      }
    }
  });
  std::vector<NegligibilityRow> rows;
  for (std::size_t i = 0; i < k; ++i) {
    NegligibilityRow row;
    row.threshold = xs[i];
    row.single = {counts.hits[i], counts.trials};
    row.joint_hits = counts.hits[k + i];
    const BinomialEstimate conditional{row.joint_hits, row.single.hits};
    if (row.single.hits == 0) {
      row.ratio = std::numeric_limits<double>::quiet_NaN();
      row.ratio_se = std::numeric_limits<double>::quiet_NaN();
      row.ci_low = 0.0;
      row.ci_high = 1.0;
    } else {
      row.ratio = conditional.p();
      row.ratio_se = conditional.se();
      row.ci_low = conditional.ci_low();
      row.ci_high = conditional.ci_high();
    }
    rows.push_back(row);
  }
  return rows;
}

HtildeReport htilde_integrability_check(const std::function<double(double)>& product_tail, const UnivariateLaw& G,
                                        std::span<const double> v_grid, std::span<const double> x_grid) {
  if (v_grid.empty() || x_grid.empty()) throw DomainError("htilde: empty grid");
  if (!std::is_sorted(v_grid.begin(), v_grid.end())) throw DomainError("htilde: v grid must be increasing");
  HtildeReport report;
  for (double v : v_grid) {
    if (!(v > 0.0)) throw DomainError("htilde: v must be positive");
    double sup = 0.0;
    for (double x : x_grid) {
      const double denom = product_tail(x);
      if (denom > 0.0) sup = std::max(sup, product_tail(x / v) / denom);
    }
    report.v.push_back(v);
    report.htilde.push_back(sup);
  }
  // Exact integral of the piecewise-linear interpolant against G, using
  // G-probabilities and first moments of each cell; constant beyond the grid ends.
  const auto& v = report.v;
  const auto& h = report.htilde;
  double total = h.front() * G.cdf(v.front());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double slope = (h[i + 1] - h[i]) / (v[i + 1] - v[i]);
    const double intercept = h[i] - slope * v[i];
    const double mass = G.tail(v[i]) - G.tail(v[i + 1]);
    const double first =
        G.truncated_moment(1.0, v[i]).value.real() - G.truncated_moment(1.0, v[i + 1]).value.real();
    total += intercept * mass + slope * first;
  }
  const double above = G.tail(v.back());
  total += h.back() * above;
  report.extrapolated = above > 0.0;
  report.integral = total;
  report.finite = std::isfinite(total) && total < 1e12;
  return report;
}

HtildeReport htilde_integrability_check(const SarmanovModel& model, std::span<const double> v_grid,
                                        std::span<const double> x_grid) {
  const auto twisted = twist(model);
  const auto& F = *model.insurance();
  return htilde_integrability_check([&](double x) { return x > 0.0 ? mult_convolution_tail(F, twisted, x) : 1.0; },
                                    *model.financial(), v_grid, x_grid);
}

}  // namespace srisk
