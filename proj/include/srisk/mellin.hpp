#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "srisk/law.hpp"
#include "srisk/sarmanov.hpp"

namespace srisk {

/// Number of terms in a finite sum / ruin horizon; nullopt stands for infinity.
struct Horizon {
  std::optional<std::size_t> steps;

  static Horizon finite(std::size_t n) { return {n}; }
  static Horizon infinite() { return {std::nullopt}; }
  bool is_infinite() const { return !steps.has_value(); }
};

/// E[Y^{alpha+i beta}] + theta d1 E[phi2(Y) Y^{alpha+i beta}], Y ~ G.
ComplexMoment twisted_mellin(const SarmanovModel& model, double alpha, double beta);

/// E[phi(Y) Y^s] for a kernel phi: closed form for Uniform01, exact over atoms,
/// quantile-domain tanh-sinh otherwise.
ComplexMoment kernel_weighted_moment(const UnivariateLaw& law, const Kernel& kernel, Complex s);

/// sum_{k=0}^{n-1} z^k with z = E[Y^{alpha+i beta}]; 1/(1-z) for an infinite horizon.
Complex geometric_mellin_sum(const UnivariateLaw& law, double alpha, double beta, Horizon n);

struct ScanZero {
  double beta = 0.0;
  double modulus = 0.0;
};

struct MellinScanResult {
  double alpha = 0.0;
  std::vector<double> betas;  // sorted; grid plus refinement points
  std::vector<Complex> values;
  std::vector<double> moduli;
  double min_modulus = 0.0;
  double argmin_beta = 0.0;
  std::vector<ScanZero> zeros;
};

struct ScanOptions {
  std::size_t resolution = 2001;  // linear grid points over [-beta_max, beta_max]
  std::size_t log_points = 200;   // log-spaced points per side
  double zero_threshold = 1e-10;
  double refine_tolerance = 1e-6;
  unsigned workers = 1;
};

/// Evaluates |transform(beta)| on a symmetric grid over [-beta_max, beta_max],
/// refines local minima by golden section and flags those below zero_threshold.
/// A "no zeros" result is relative to the grid.
MellinScanResult scan_nonvanishing(const std::function<Complex(double)>& transform, double alpha, double beta_max,
                                   const ScanOptions& options = {});

/// Default beta_max = 100 / alpha.
double default_beta_max(double alpha);

/// Finite measure sum_k weight_k * law_k on (0, inf).
struct FiniteMeasure {
  struct Component {
    double weight;
    LawPtr law;
  };
  std::vector<Component> components;

  static FiniteMeasure of(LawPtr law) { return {{{1.0, std::move(law)}}}; }
  double total_mass() const;
};

/// sum_{k=1}^{n} Law(prod_{j<k} Y_j) for a purely atomic G (atoms enumerated exactly).
FiniteMeasure product_power_measure(const LawPtr& financial, std::size_t n);

/// (nu (*) rho)-bar(x) = int nubar(x/u) rho(du), x > 0.
double mult_convolution_tail(const UnivariateLaw& nu, const FiniteMeasure& rho, double x);
double mult_convolution_tail(const UnivariateLaw& nu, const LawPtr& rho, double x);

}  // namespace srisk
