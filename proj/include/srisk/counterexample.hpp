#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "srisk/law.hpp"
#include "srisk/sarmanov.hpp"
#include "srisk/tail_stats.hpp"

namespace srisk {

/// Two-atom law on {1, exp(pi/|beta0|)} whose Mellin transform vanishes at alpha + i beta0.
LawPtr build_vanishing_mellin_law(double alpha, double beta0);

/// Two-atom law on {1, exp(pi/|beta0|)} whose twisted Mellin transform
/// E[Y^s] + theta d1 E[phi2(Y) Y^s] (phi2 the FGM kernel of the law itself)
/// vanishes at s = alpha + i beta0; the low-atom weight is found by bisection.
LawPtr build_vanishing_mellin_law_fgm(double alpha, double beta0, double theta, double d1);

LawPtr build_oscillating_law(double alpha, double beta0, double a, double b);

/// F1 with tail Fbar(y) above c, Fbar(c) on [1, c] and 1 below 1: the mass 1 - Fbar(c) sits in an atom at 1.
LawPtr flatten_below(const LawPtr& oscillating, double cut);

/// Smallest c = 1 + 0.01 k with tail(c) <= 0.9.
double default_flattening_cut(const UnivariateLaw& oscillating);

enum class CenteringCase { RootFound, PositiveAtom, NegativeAtom };
std::string_view case_name(CenteringCase c);

struct CenteringResult {
  LawPtr law;
  CenteringCase tag = CenteringCase::RootFound;
  std::optional<double> root;  // x0 for RootFound
  std::optional<Atom> atom;    // added atom (location, final mass) for the atom cases
  double c0 = 0.0;             // int_{(1, inf)} phi1 dF1
  double residual = 0.0;       // int phi1 dF of the result
  double tail_proportionality = 1.0;  // Fbar(x) / F1bar(x) for large x
};

/// Adjusts F1 so that int kernel dF = 0: conditional law above a root x0 of
/// x -> int_{(x, inf)} kernel dF1 when that function changes sign on (1, inf),
/// otherwise the restriction to (1, inf) plus one atom where the kernel has the
/// opposite sign. Throws HypothesisError when the kernel is single-signed.
CenteringResult center_kernel(const LawPtr& flattened, const Kernel& kernel);

struct CounterexampleParams {
  double alpha = 2.0;
  double beta0 = M_PI;
  double a = 0.5;
  double b = 0.3;
  double theta = 0.0;
  std::optional<double> cut;
  std::vector<double> kernel_coefficients{1.0, -2.0};  // phi1 = p(mid-level of F1)
};

struct CounterexampleBundle {
  CounterexampleParams params;
  double cut = 0.0;
  LawPtr G;
  LawPtr G_theta;
  LawPtr F_tilde;
  LawPtr F1;
  LawPtr F;
  Kernel insurance_kernel;
  Kernel financial_kernel;
  CenteringResult centering;
  double mellin_zero_modulus = 0.0;  // |E[Y_theta^{alpha + i beta0}]|
  double oscillation_mass = 1.0;     // normalization M of the oscillating density

  SarmanovModel model() const;
};

CounterexampleBundle build_counterexample(const CounterexampleParams& params);

struct DemonstrationRow {
  double x = 0.0;
  double product_tail = 0.0;
  double product_ratio = 0.0;  // product_tail(2x) / product_tail(x)
  double law_tail = 0.0;       // Fbar(x)
  double law_ratio = 0.0;      // Fbar(2x) / Fbar(x)
  double constant_ratio = 0.0; // x^alpha product_tail(x) / (kappa int u^alpha G_theta(du))
};

struct DemonstrationReport {
  std::vector<DemonstrationRow> rows;
  TailRatioReport product;
  TailRatioReport law;
  double kappa = 0.0;
  double limit_constant = 0.0;  // kappa * int u^alpha G_theta(du)
  double product_ratio_error = 0.0;  // |product ratio at grid top - 2^{-alpha}| / 2^{-alpha}
};

DemonstrationReport demonstrate(const CounterexampleBundle& bundle, std::span<const double> x_grid,
                                double tolerance = kRatioTolerance);

}  // namespace srisk
