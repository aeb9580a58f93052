#include "srisk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace srisk {
namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureResult panel(const std::function<Complex(double)>& h, double a, double b) {
  double err = 0.0;
  const Complex v = GK::integrate(h, a, b, 6, 1e-14, &err);
  return {v, err};
}

double panel_width(const LogQuadratureOptions& o) {
  double w = 0.5;
  if (o.log_frequency != 0.0) w = std::min(w, M_PI / std::abs(o.log_frequency));
  return w;
}

bool negligible(const Complex& v, double scale, const LogQuadratureOptions& o) {
  return std::abs(v) <= o.abs_tol + o.rel_tol * scale;
}

// March from t0 toward +inf (direction = +1) or -inf (direction = -1).
QuadratureResult march(const std::function<Complex(double)>& h, double t0, int direction,
                       const Complex& running, const LogQuadratureOptions& o) {
  QuadratureResult acc{};
  const double base = panel_width(o);
  const bool oscillatory = o.log_frequency != 0.0;
  double w = base;
  double t = t0;
  int quiet = 0;
  for (std::size_t k = 0; k < o.max_panels; ++k) {
    const double t1 = t + direction * w;
    const auto p = direction > 0 ? panel(h, t, t1) : panel(h, t1, t);
    acc.value += p.value;
    acc.error += p.error;
    const double scale = std::abs(running + acc.value);
    const Complex edge = h(t1) * w;
    if (negligible(p.value, scale, o) && negligible(edge, scale, o)) {
      if (++quiet >= 3) return acc;
    } else {
      quiet = 0;
    }
    t = t1;
    // Smooth non-oscillatory tails: widen panels geometrically.
    if (!oscillatory) w = std::min(w * 1.25, 8.0);
  }
  acc.error += std::abs(h(t)) * w;
  return acc;
}

}  // namespace

QuadratureResult integrate_log_domain(const std::function<Complex(double)>& f, double lo, double hi,
                                      const LogQuadratureOptions& options) {
  if (!(hi > lo)) return {};
  const auto h = [&f](double t) -> Complex {
    const double x = std::exp(t);
    if (x == 0.0 || !std::isfinite(x)) return {};
    return f(x) * x;
  };

  std::vector<double> edges;
  if (lo > 0.0) edges.push_back(std::log(lo));
  if (std::isfinite(hi)) edges.push_back(std::log(hi));
  for (double bp : options.breakpoints) {
    if (bp > lo && bp < hi && bp > 0.0 && std::isfinite(bp)) edges.push_back(std::log(bp));
  }
  if (edges.empty()) edges.push_back(std::log(options.anchor));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const double w = panel_width(options);
  QuadratureResult total{};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / w));
    const double step = (b - a) / static_cast<double>(std::max<std::size_t>(n, 1));
    for (std::size_t j = 0; j < std::max<std::size_t>(n, 1); ++j) {
      const double pa = a + step * static_cast<double>(j);
      const double pb = j + 1 == std::max<std::size_t>(n, 1) ? b : pa + step;
      const auto p = panel(h, pa, pb);
      total.value += p.value;
      total.error += p.error;
    }
  }
  if (hi == kInf) {
    const auto tail = march(h, edges.back(), +1, total.value, options);
    total.value += tail.value;
    total.error += tail.error;
  }
  if (lo == 0.0) {
    const auto tail = march(h, edges.front(), -1, total.value, options);
    total.value += tail.value;
    total.error += tail.error;
  }
  return total;
}

QuadratureResult integrate_finite(const std::function<Complex(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return {};
  double err = 0.0;
  const Complex v = GK::integrate(f, a, b, 15, tol, &err);
  return {v, err};
}

QuadratureResult integrate_unit_interval(const std::function<Complex(double)>& f, double tol) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  double err_re = 0.0;
  double err_im = 0.0;
  const double re = integrator.integrate([&f](double u) { return f(u).real(); }, 0.0, 1.0, tol, &err_re);
  const double im = integrator.integrate([&f](double u) { return f(u).imag(); }, 0.0, 1.0, tol, &err_im);
  return {{re, im}, std::abs(err_re * re) + std::abs(err_im * im)};
}

}  // namespace srisk
