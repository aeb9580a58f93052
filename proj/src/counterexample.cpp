#include "srisk/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srisk/error.hpp"
#include "srisk/mellin.hpp"

namespace srisk {
namespace {

constexpr double kRootTolerance = 1e-10;
constexpr double kRootStep = 1e-8;
constexpr double kSignNoise = 1e-13;

double partial_kernel_integral(const UnivariateLaw& law, const Kernel& kernel, double x) {
  return law.expect([&kernel](double y) { return Complex(kernel(y)); }, x).value.real();
}

// Points above the support bottom at which the partial integral is sampled.
std::vector<double> centering_grid(const UnivariateLaw& law, double bottom) {
  std::vector<double> xs;
  const double start = law.cdf(bottom);
  for (int i = 1; i < 2000; ++i) {
    const double p = start + (1.0 - start) * i / 2000.0;
    if (p > 0.0 && p < 1.0) xs.push_back(law.quantile(p));
  }
  for (int k = 4; k <= 12; ++k) xs.push_back(law.quantile(1.0 - std::pow(10.0, -k)));
  xs.push_back(bottom * (1.0 + 1e-9));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return !(x > bottom); }), xs.end());
  return xs;
}

}  // namespace

LawPtr build_vanishing_mellin_law(double alpha, double beta0) {
  if (beta0 == 0.0 || !std::isfinite(beta0)) throw DomainError("vanishing Mellin law: beta0 must be nonzero");
  if (!(alpha > 0.0)) throw DomainError("vanishing Mellin law: alpha must be positive");
  const double high = std::exp(M_PI / std::abs(beta0));
  const double k = std::pow(high, alpha);
  return UnivariateLaw::two_atom(1.0, k / (1.0 + k), high);
}

LawPtr build_vanishing_mellin_law_fgm(double alpha, double beta0, double theta, double d1) {
  if (theta == 0.0 || d1 == 0.0) return build_vanishing_mellin_law(alpha, beta0);
  if (beta0 == 0.0 || !std::isfinite(beta0)) throw DomainError("vanishing Mellin law: beta0 must be nonzero");
  if (std::abs(theta * d1) > 1.0) throw InvalidModelError("vanishing Mellin law: |theta d1| must not exceed 1");
  const double high = std::exp(M_PI / std::abs(beta0));
  const Complex s{alpha, beta0};
  const double scale = theta * d1;
  auto residual = [&](double p) {
    const auto law = UnivariateLaw::two_atom(1.0, p, high);
    const auto k = Kernel::fgm(law);
    return (law->fractional_moment(s).value + scale * kernel_weighted_moment(*law, k, s).value).real();
  };
  // residual < 0 near p = 0 (high atom dominates, sign flipped by e^{i pi}), > 0 near p = 1.
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  if (!(residual(lo) < 0.0 && residual(hi) > 0.0)) throw HypothesisError("vanishing Mellin law: no sign change");
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) < 0.0 ? lo : hi) = mid;
  }
  return UnivariateLaw::two_atom(1.0, 0.5 * (lo + hi), high);
}

LawPtr build_oscillating_law(double alpha, double beta0, double a, double b) {
  return UnivariateLaw::oscillating_pareto({alpha, beta0, a, b});
}

LawPtr flatten_below(const LawPtr& oscillating, double cut) {
  if (!(oscillating->tail(cut) < 1.0)) throw InvalidModelError("flatten_below: need tail(c) < 1");
  return UnivariateLaw::flattened(oscillating, cut);
}

double default_flattening_cut(const UnivariateLaw& oscillating) {
  for (int k = 1; k < 100000; ++k) {
    const double c = 1.0 + 0.01 * k;
    if (oscillating.tail(c) <= 0.9) return c;
  }
  throw HypothesisError("default_flattening_cut: tail never drops below 0.9");
}

std::string_view case_name(CenteringCase c) {
  switch (c) {
    case CenteringCase::RootFound: return "root-found";
    case CenteringCase::PositiveAtom: return "positive-atom";
    case CenteringCase::NegativeAtom: return "negative-atom";
  }
  return "?";
}

CenteringResult center_kernel(const LawPtr& flattened, const Kernel& kernel) {
  const auto& law = *flattened;
  const double bottom = law.support().lower;
  CenteringResult result;

  const double total = law.expect([&kernel](double y) { return Complex(kernel(y)); }).value.real();
  if (std::abs(total) < kRootTolerance) {
    result.law = flattened;
    result.root = bottom;
    result.residual = total;
    return result;
  }

  const auto xs = centering_grid(law, bottom);
  std::vector<double> values;
  values.reserve(xs.size());
  bool positive = false;
  bool negative = false;
  for (double x : xs) {
    const double v = partial_kernel_integral(law, kernel, x);
    values.push_back(v);
    positive = positive || v > kSignNoise;
    negative = negative || v < -kSignNoise;
  }

  if (positive && negative) {
    std::size_t i = 0;
    while (i + 1 < xs.size() && (values[i] > 0.0) == (values[i + 1] > 0.0)) ++i;
    double lo = xs[i];
    double hi = xs[i + 1];
    double f_lo = values[i];
    double mid = 0.5 * (lo + hi);
    double f_mid = partial_kernel_integral(law, kernel, mid);
    for (int it = 0; it < 300; ++it) {
      if (std::abs(f_mid) < kRootTolerance && hi - lo < kRootStep * std::max(1.0, mid)) break;
      if ((f_mid > 0.0) == (f_lo > 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
      mid = 0.5 * (lo + hi);
      f_mid = partial_kernel_integral(law, kernel, mid);
    }
    result.tag = CenteringCase::RootFound;
    result.root = mid;
    result.law = UnivariateLaw::atom_mixture(flattened, mid, 1.0, {});
    result.tail_proportionality = 1.0 / law.tail(mid);
  } else if (!positive && !negative) {
    // Mass on (bottom, inf) already centered; only the bottom atom is dropped.
    result.tag = CenteringCase::RootFound;
    result.root = bottom;
    result.law = UnivariateLaw::atom_mixture(flattened, bottom, 1.0, {});
    result.tail_proportionality = 1.0 / law.tail(bottom);
  } else {
    const double c0 = partial_kernel_integral(law, kernel, bottom);
    result.c0 = c0;
    result.tag = c0 > 0.0 ? CenteringCase::PositiveAtom : CenteringCase::NegativeAtom;
    // Atom where the kernel has the opposite sign to c0, as large in modulus as the candidates allow.
    std::vector<double> candidates{0.5 * bottom, 0.25 * bottom, bottom};
    candidates.insert(candidates.end(), xs.begin(), xs.end());
    double best_x = 0.0;
    double best_v = 0.0;
    for (double x : candidates) {
      const double v = kernel(x);
      if (v * c0 < 0.0 && std::abs(v) > std::abs(best_v)) {
        best_v = v;
        best_x = x;
      }
    }
    if (best_v == 0.0) throw HypothesisError("center_kernel: kernel does not take both signs");
    const double extra = std::abs(c0) / std::abs(best_v);
    const double q = law.tail(bottom);
    const double norm = q + extra;
    result.atom = Atom{best_x, extra / norm};
    result.law = UnivariateLaw::atom_mixture(flattened, bottom, q / norm, {{best_x, extra / norm}});
    result.tail_proportionality = 1.0 / norm;
  }
  result.residual = result.law->expect([&kernel](double y) { return Complex(kernel(y)); }).value.real();
  return result;
}

SarmanovModel CounterexampleBundle::model() const {
  return SarmanovModel(F, G, insurance_kernel, financial_kernel, params.theta);
}

CounterexampleBundle build_counterexample(const CounterexampleParams& params) {
  CounterexampleBundle bundle;
  bundle.params = params;
  bundle.F_tilde = build_oscillating_law(params.alpha, params.beta0, params.a, params.b);
  bundle.oscillation_mass = OscillatingParetoParams{params.alpha, params.beta0, params.a, params.b}.raw_mass();
  bundle.cut = params.cut ? *params.cut : default_flattening_cut(*bundle.F_tilde);
  bundle.F1 = flatten_below(bundle.F_tilde, bundle.cut);
  bundle.insurance_kernel = Kernel::cdf_polynomial(bundle.F1, params.kernel_coefficients);
  if (std::abs(params.theta) * bundle.insurance_kernel.sup_bound() > 1.0) {
    throw InvalidModelError("counterexample: |theta| b1 b2 exceeds 1");
  }

  const double d1 = bundle.insurance_kernel.limit_at_infinity();
  bundle.G = build_vanishing_mellin_law_fgm(params.alpha, params.beta0, params.theta, d1);
  bundle.financial_kernel = Kernel::fgm(bundle.G);
  bundle.centering = center_kernel(bundle.F1, bundle.insurance_kernel);
  bundle.F = bundle.centering.law;

  const auto model = bundle.model();
  bundle.G_theta = twist(model);
  bundle.mellin_zero_modulus = std::abs(twisted_mellin(model, params.alpha, params.beta0).value);
  return bundle;
}

DemonstrationReport demonstrate(const CounterexampleBundle& bundle, std::span<const double> x_grid,
                                double tolerance) {
  if (x_grid.empty()) throw DomainError("demonstrate: empty grid");
  const auto& F = *bundle.F;
  const auto& Gt = bundle.G_theta;
  const double alpha = bundle.params.alpha;

  DemonstrationReport report;
  report.kappa = bundle.centering.tail_proportionality / bundle.oscillation_mass;
  report.limit_constant = report.kappa * Gt->fractional_moment(alpha).value.real();

  auto product_tail = [&](double x) { return mult_convolution_tail(F, Gt, x); };
  auto law_tail = [&](double x) { return F.tail(x); };
  for (double x : x_grid) {
    DemonstrationRow row;
    row.x = x;
    row.product_tail = product_tail(x);
    row.product_ratio = product_tail(2.0 * x) / row.product_tail;
    row.law_tail = law_tail(x);
    row.law_ratio = law_tail(2.0 * x) / row.law_tail;
    row.constant_ratio = std::pow(x, alpha) * row.product_tail / report.limit_constant;
    report.rows.push_back(row);
  }
  // Same statistic and tolerance for both curves.
  report.product = tail_ratio_diagnostic(product_tail, 2.0, x_grid, tolerance);
  report.law = tail_ratio_diagnostic(law_tail, 2.0, x_grid, tolerance);
  const double target = std::pow(2.0, -alpha);
  report.product_ratio_error = std::abs(report.rows.back().product_ratio - target) / target;
  return report;
}

}  // namespace srisk
