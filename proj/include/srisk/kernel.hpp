#pragma once

#include <memory>
#include <string>
#include <vector>

namespace srisk {

class UnivariateLaw;

/// Sarmanov kernel phi(x) = p(u(x)), p a polynomial and u(x) = (F(x) + F(x-)) / 2
/// the mid-distribution level of a reference law F. For continuous F, u = F and
/// the FGM kernel p(u) = 1 - 2u gives phi = 1 - 2F.
class Kernel {
 public:
  /// Zero kernel (independence).
  Kernel() = default;

  static Kernel fgm(std::shared_ptr<const UnivariateLaw> reference);
  static Kernel cdf_polynomial(std::shared_ptr<const UnivariateLaw> reference, std::vector<double> coefficients);

  double operator()(double x) const;

  /// p(u) for a level u in [0, 1].
  double at_level(double u) const;

  /// sup |p(u)| over u in [0, 1].
  double sup_bound() const { return bound_; }

  /// lim_{x -> inf} phi(x) = p(1).
  double limit_at_infinity() const { return at_level(1.0); }

  bool is_zero() const;
  bool is_fgm() const;
  const std::vector<double>& coefficients() const { return coefficients_; }
  const std::shared_ptr<const UnivariateLaw>& reference() const { return reference_; }

 private:
  Kernel(std::shared_ptr<const UnivariateLaw> reference, std::vector<double> coefficients);

  std::shared_ptr<const UnivariateLaw> reference_;
  std::vector<double> coefficients_;
  double bound_ = 0.0;
};

}  // namespace srisk
