#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace srisk {

using Complex = std::complex<double>;

struct QuadratureResult {
  Complex value;
  double error = 0.0;  // absolute error estimate
};

/// Options for integrate_log_domain.
struct LogQuadratureOptions {
  // Frequency of oscillation in log x (e.g. beta for y^{i beta}); panels are
  // cut at half-periods so each panel sees at most half an oscillation.
  double log_frequency = 0.0;
  // Points in x where the integrand has a kink or jump; used as panel edges.
  std::vector<double> breakpoints;
  // Anchor in x used when both ends are infinite (lo == 0, hi == inf).
  double anchor = 1.0;
  double rel_tol = 1e-13;
  double abs_tol = 1e-300;
  std::size_t max_panels = 400000;
};

/// Integrates f(x) dx over (lo, hi) with lo >= 0 and hi possibly infinite,
/// after the substitution x = e^t. Infinite ends are handled by marching
/// panels outward until the contributions fall below tolerance.
QuadratureResult integrate_log_domain(const std::function<Complex(double)>& f, double lo, double hi,
                                      const LogQuadratureOptions& options = {});

/// Adaptive Gauss-Kronrod on a finite interval.
QuadratureResult integrate_finite(const std::function<Complex(double)>& f, double a, double b,
                                  double tol = 1e-13);

/// tanh-sinh on (0, 1); tolerates integrable endpoint singularities.
QuadratureResult integrate_unit_interval(const std::function<Complex(double)>& f, double tol = 1e-12);

}  // namespace srisk
