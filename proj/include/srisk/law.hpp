#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "srisk/kernel.hpp"
#include "srisk/quadrature.hpp"
#include "srisk/rng.hpp"

namespace srisk {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// E[Z^s] (or a weighted variant) with an absolute error estimate.
struct ComplexMoment {
  Complex value;
  double error = 0.0;
};

enum class Family { Pareto, Uniform01, TwoAtom, LogNormal, OscillatingPareto, Flattened, AtomMixture, Twisted };

std::string_view family_name(Family family);

/// Closed interval hull of a support; upper may be +inf.
struct SupportHull {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return x >= lower && x <= upper; }
};

/// Parameters of the oscillating Pareto law with density
/// g(x) * alpha * x^{-(alpha+1)} / M on (1, inf), where
/// g(x) = 1 + a cos(beta0 log x) + b sin(beta0 log x) and M normalizes the mass.
struct OscillatingParetoParams {
  double alpha = 2.0;
  double beta0 = 0.0;
  double a = 0.0;
  double b = 0.0;

  double modulation(double x) const;
  /// Total mass of g(x) alpha x^{-(alpha+1)} dx over (1, inf).
  double raw_mass() const;
};

/// A probability law on [0, inf). Immutable; share through shared_ptr.
class UnivariateLaw {
 public:
  struct Pareto {
    double alpha;
    double scale;
  };
  struct Uniform01 {};
  struct TwoAtom {
    double low;
    double low_weight;
    double high;
  };
  struct LogNormal {
    double mu;
    double sigma;
  };
  struct Oscillating {
    OscillatingParetoParams params;
    double mass;  // raw_mass(), cached
  };
  // Base law with its mass below `cut` collapsed: tail is base.tail(x) above cut,
  // base.tail(cut) on [1, cut], and 1 below 1 (atom at 1).
  struct Flattened {
    std::shared_ptr<const UnivariateLaw> base;
    double cut;
  };
  // base_weight * Law(Z | Z > lower), Z ~ base, plus atoms.
  struct AtomMixture {
    std::shared_ptr<const UnivariateLaw> base;
    double lower;
    double base_weight;
    std::vector<Atom> atoms;
  };
  // base reweighted by 1 + scale * kernel(y).
  struct Twisted {
    std::shared_ptr<const UnivariateLaw> base;
    Kernel kernel;
    double scale;
  };

  using Variant = std::variant<Pareto, Uniform01, TwoAtom, LogNormal, Oscillating, Flattened, AtomMixture, Twisted>;

  static std::shared_ptr<const UnivariateLaw> pareto(double alpha, double scale = 1.0);
  static std::shared_ptr<const UnivariateLaw> uniform01();
  static std::shared_ptr<const UnivariateLaw> two_atom(double low, double low_weight, double high);
  static std::shared_ptr<const UnivariateLaw> lognormal(double mu, double sigma);
  static std::shared_ptr<const UnivariateLaw> oscillating_pareto(const OscillatingParetoParams& params);
  static std::shared_ptr<const UnivariateLaw> flattened(std::shared_ptr<const UnivariateLaw> base, double cut);
  static std::shared_ptr<const UnivariateLaw> atom_mixture(std::shared_ptr<const UnivariateLaw> base, double lower,
                                                           double base_weight, std::vector<Atom> atoms);
  static std::shared_ptr<const UnivariateLaw> point_mass(double location);
  static std::shared_ptr<const UnivariateLaw> twisted(std::shared_ptr<const UnivariateLaw> base, Kernel kernel,
                                                      double scale);

  Family family() const;
  const Variant& variant() const { return v_; }

  /// P[Z > x].
  double tail(double x) const;
  /// P[Z >= x].
  double tail_left(double x) const;
  double cdf(double x) const { return 1.0 - tail(x); }
  /// (F(x) + F(x-)) / 2.
  double mid_level(double x) const { return 1.0 - 0.5 * (tail(x) + tail_left(x)); }

  /// Left-continuous generalized inverse inf{x : F(x) >= p}, p in (0, 1).
  double quantile(double p) const;

  double sample(SeedStream& stream) const;
  std::vector<double> sample(SeedStream& stream, std::size_t n) const;

  /// E[Z^s]. Throws DivergentMomentError outside the moment strip.
  ComplexMoment fractional_moment(Complex s) const;
  /// E[Z^s ; Z > lower].
  ComplexMoment truncated_moment(Complex s, double lower) const;

  /// Open strip (lo, hi) of Re(s) with E[Z^s] finite.
  std::pair<double, double> moment_strip() const;

  /// E[f(Z) ; Z > lower]: exact over atoms, log-domain quadrature over the
  /// continuous part. `log_frequency` is a hint for oscillatory integrands.
  QuadratureResult expect(const std::function<Complex(double)>& f, double lower = -1.0,
                          double log_frequency = 0.0) const;
  double expect_real(const std::function<double(double)>& f, double lower = -1.0) const;

  /// Atoms of the law (location, mass), sorted by location.
  std::vector<Atom> atoms() const;
  /// Density of the absolutely continuous part (mass-weighted; 0 off-support).
  double density(double x) const;
  /// Interval (lo, hi) carrying the absolutely continuous part; empty when purely atomic.
  std::optional<std::pair<double, double>> continuous_range() const;
  /// Points where tail() has a jump or kink.
  std::vector<double> breakpoints() const;

  SupportHull support() const;
  bool unbounded() const { return support().upper == std::numeric_limits<double>::infinity(); }
  bool is_continuous() const { return atoms().empty(); }

  /// Tail index alpha of a regularly varying or dominated-variation family, if known.
  std::optional<double> tail_index() const;

  explicit UnivariateLaw(Variant v) : v_(std::move(v)) {}

 private:
  double sample_oscillating(const Oscillating& o, SeedStream& stream) const;
  double quantile_numeric(double p) const;

  Variant v_;
};

using LawPtr = std::shared_ptr<const UnivariateLaw>;

}  // namespace srisk
