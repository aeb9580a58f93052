#include "srisk/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>

#include "srisk/error.hpp"

namespace srisk {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Complex cpow(double base, Complex s) {
  if (base == 1.0) return 1.0;
  return std::exp(s * std::log(base));
}

}  // namespace

ComplexMoment kernel_weighted_moment(const UnivariateLaw& law, const Kernel& kernel, Complex s) {
  const auto [lo, hi] = law.moment_strip();
  if (!(s.real() > lo && s.real() < hi)) throw DivergentMomentError("kernel moment: Re(s) outside moment strip");
  if (kernel.coefficients().empty() || kernel.is_zero()) return {};

  const bool self_ref = kernel.reference().get() == &law;
  if (law.family() == Family::Uniform01 && self_ref) {
    // E[p(Y) Y^s] = sum_k c_k / (s + k + 1)
    Complex v{};
    const auto& c = kernel.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) v += c[k] / (s + static_cast<double>(k) + 1.0);
    return {v, 16 * kEps * (std::abs(v) + 1.0)};
  }
  if (!law.continuous_range()) {
    ComplexMoment r{};
    for (const auto& at : law.atoms()) r.value += at.weight * kernel(at.location) * cpow(at.location, s);
    r.error = 16 * kEps * (std::abs(r.value) + 1.0);
    return r;
  }
  if (!law.is_continuous() || law.unbounded()) {
    // Atoms exactly, continuous part in log x; heavy tails are singular in the quantile domain.
    const auto q = law.expect([&](double y) { return kernel(y) * cpow(y, s); }, -1.0, s.imag());
    return {q.value, q.error};
  }
  const auto q = integrate_unit_interval([&](double u) {
    const double y = law.quantile(u);
    const double k = self_ref ? kernel.at_level(u) : kernel(y);
    return k * cpow(y, s);
  });
  return {q.value, q.error};
}

ComplexMoment twisted_mellin(const SarmanovModel& model, double alpha, double beta) {
  const Complex s{alpha, beta};
  const auto& G = *model.financial();
  ComplexMoment m = G.fractional_moment(s);
  const double scale = model.theta() * model.d1();
  if (scale != 0.0) {
    const auto k = kernel_weighted_moment(G, model.financial_kernel(), s);
    m.value += scale * k.value;
    m.error += std::abs(scale) * k.error;
  }
  return m;
}

Complex geometric_mellin_sum(const UnivariateLaw& law, double alpha, double beta, Horizon n) {
  const Complex z = law.fractional_moment({alpha, beta}).value;
  if (n.is_infinite()) {
    if (std::abs(z) >= 1.0) throw DivergentMomentError("geometric_mellin_sum: |E[Y^s]| >= 1, series diverges");
    return 1.0 / (1.0 - z);
  }
  Complex sum{};
  Complex power{1.0};
  for (std::size_t k = 0; k < *n.steps; ++k) {
    sum += power;
    power *= z;
  }
  return sum;
}

double default_beta_max(double alpha) { return 100.0 / alpha; }

MellinScanResult scan_nonvanishing(const std::function<Complex(double)>& transform, double alpha, double beta_max,
                                   const ScanOptions& options) {
  if (!(beta_max > 0.0)) throw DomainError("scan_nonvanishing: beta_max must be positive");
  // Symmetric grid: linear points plus log-spaced points mirrored through 0.
  std::vector<double> half;
  const std::size_t lin = std::max<std::size_t>(options.resolution / 2, 1);
  for (std::size_t i = 0; i <= lin; ++i) half.push_back(beta_max * static_cast<double>(i) / static_cast<double>(lin));
  if (options.log_points > 1) {
    const double lo = std::log10(beta_max) - 4.0;
    const double hi = std::log10(beta_max);
    for (std::size_t i = 0; i < options.log_points; ++i) {
      half.push_back(std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(options.log_points - 1)));
    }
  }
  half.back() = beta_max;
  std::sort(half.begin(), half.end());
  half.erase(std::unique(half.begin(), half.end()), half.end());
  half.erase(std::remove_if(half.begin(), half.end(), [&](double b) { return b > beta_max; }), half.end());

  std::vector<double> grid;
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it > 0.0) grid.push_back(-*it);
  }
  grid.insert(grid.end(), half.begin(), half.end());

  // Evaluate in chunks; each chunk writes its own slice so the merge is deterministic.
  std::vector<Complex> values(grid.size());
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = transform(grid[i]);
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (grid.size() + workers - 1) / workers;
    for (std::size_t start = 0; start < grid.size(); start += chunk) {
      const std::size_t end = std::min(grid.size(), start + chunk);
      jobs.push_back(std::async(std::launch::async, [&, start, end] {
        for (std::size_t i = start; i < end; ++i) values[i] = transform(grid[i]);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  std::map<double, Complex> points;
  for (std::size_t i = 0; i < grid.size(); ++i) points.emplace(grid[i], values[i]);

  MellinScanResult result;
  result.alpha = alpha;

  // Golden-section refinement around interior local minima of the grid modulus.
  constexpr double g = 0.6180339887498949;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double m = std::abs(values[i]);
    if (!(m <= std::abs(values[i - 1]) && m <= std::abs(values[i + 1]))) continue;
    double a = grid[i - 1];
    double b = grid[i + 1];
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = std::abs(transform(c));
    double fd = std::abs(transform(d));
    // Near a simple zero |transform| <= L |beta - beta0| with L <= 2 slope, so polishing
    // continues while the bracket is still V-shaped and stops at a smooth positive minimum.
    const double slope = std::max(std::abs(values[i - 1]), std::abs(values[i + 1])) / (b - a);
    auto keep_going = [&] {
      if (b - a > options.refine_tolerance) return true;
      const double scale = std::max(1.0, std::abs(a) + std::abs(b));
      return std::min(fc, fd) < 4.0 * slope * (b - a) && b - a > 8 * eps * scale;
    };
    while (keep_going()) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = std::abs(transform(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = std::abs(transform(d));
      }
    }
    double best = fc < fd ? c : d;
    Complex best_v = transform(best);
    if (m <= std::abs(best_v)) {
      best = grid[i];
      best_v = values[i];
    }
    points.emplace(best, best_v);
    if (std::abs(best_v) < options.zero_threshold) result.zeros.push_back({best, std::abs(best_v)});
  }

  result.min_modulus = std::numeric_limits<double>::infinity();
  for (const auto& [beta, v] : points) {
    result.betas.push_back(beta);
    result.values.push_back(v);
    result.moduli.push_back(std::abs(v));
    if (std::abs(v) < result.min_modulus) {
      result.min_modulus = std::abs(v);
      result.argmin_beta = beta;
    }
  }
  // Deduplicate zeros found from neighbouring cells.
  std::sort(result.zeros.begin(), result.zeros.end(), [](const auto& l, const auto& r) { return l.beta < r.beta; });
  std::vector<ScanZero> unique;
  for (const auto& z : result.zeros) {
    if (!unique.empty() && std::abs(unique.back().beta - z.beta) < 10 * options.refine_tolerance) {
      if (z.modulus < unique.back().modulus) unique.back() = z;
    } else {
      unique.push_back(z);
    }
  }
  result.zeros = std::move(unique);
  return result;
}

double FiniteMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& c : components) m += c.weight;
  return m;
}

FiniteMeasure product_power_measure(const LawPtr& financial, std::size_t n) {
  if (financial->continuous_range()) throw DomainError("product_power_measure: financial law must be purely atomic");
  const auto atoms = financial->atoms();
  FiniteMeasure rho;
  // Distribution of prod_{j<k} Y_j, k = 1..n, built by repeated atom convolution.
  std::map<double, double> current{{1.0, 1.0}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Atom> list;
    for (const auto& [loc, w] : current) list.push_back({loc, w});
    rho.components.push_back({1.0, UnivariateLaw::atom_mixture(nullptr, 0.0, 0.0, list)});
    std::map<double, double> next;
    for (const auto& [loc, w] : current) {
      for (const auto& at : atoms) next[loc * at.location] += w * at.weight;
    }
    current = std::move(next);
  }
  return rho;
}

double mult_convolution_tail(const UnivariateLaw& nu, const FiniteMeasure& rho, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mult_convolution_tail: x must be positive and finite");
  double total = 0.0;
  for (const auto& comp : rho.components) {
    const auto& law = *comp.law;
    // nubar(x/u) has kinks where x/u hits a breakpoint of nu.
    std::vector<double> kinks;
    for (double b : nu.breakpoints()) {
      if (b > 0.0) kinks.push_back(x / b);
    }
    double part = 0.0;
    for (const auto& at : law.atoms()) {
      if (at.location > 0.0) part += at.weight * nu.tail(x / at.location);
    }
    if (const auto range = law.continuous_range()) {
      LogQuadratureOptions opts;
      opts.breakpoints = law.breakpoints();
      opts.breakpoints.insert(opts.breakpoints.end(), kinks.begin(), kinks.end());
      opts.rel_tol = 1e-14;
      const auto q = integrate_log_domain(
          [&](double u) { return Complex(nu.tail(x / u) * law.density(u)); }, range->first, range->second, opts);
      part += q.value.real();
    }
    total += comp.weight * std::clamp(part, 0.0, 1.0);
  }
  return total;
}

double mult_convolution_tail(const UnivariateLaw& nu, const LawPtr& rho, double x) {
  return mult_convolution_tail(nu, FiniteMeasure::of(rho), x);
}

}  // namespace srisk
