#pragma once

#include <atomic>
#include <string>
#include <utility>
#include <vector>

#include "srisk/kernel.hpp"
#include "srisk/law.hpp"
#include "srisk/rng.hpp"

namespace srisk {

/// Bivariate Sarmanov law (1 + theta phi1(x) phi2(y)) F(dx) G(dy).
/// X ~ F is the insurance risk, Y ~ G the financial (discount) risk.
class SarmanovModel {
 public:
  SarmanovModel(LawPtr insurance, LawPtr financial, Kernel insurance_kernel, Kernel financial_kernel, double theta);

  /// FGM special case: phi1 = 1 - 2F, phi2 = 1 - 2G (mid-distribution form).
  static SarmanovModel fgm(LawPtr insurance, LawPtr financial, double theta);
  static SarmanovModel independent(LawPtr insurance, LawPtr financial);

  const LawPtr& insurance() const { return insurance_; }
  const LawPtr& financial() const { return financial_; }
  const Kernel& insurance_kernel() const { return kernel1_; }
  const Kernel& financial_kernel() const { return kernel2_; }
  double theta() const { return theta_; }
  double b1() const { return kernel1_.sup_bound(); }
  double b2() const { return kernel2_.sup_bound(); }
  /// lim_{x -> inf} phi1(x).
  double d1() const { return kernel1_.limit_at_infinity(); }
  bool is_fgm() const { return kernel1_.is_fgm() && kernel2_.is_fgm(); }

 private:
  LawPtr insurance_;
  LawPtr financial_;
  Kernel kernel1_;
  Kernel kernel2_;
  double theta_;
};

struct KernelTriple {
  Kernel insurance;
  Kernel financial;
  double b1;
  double b2;
  double d1;
};

KernelTriple fgm_kernels(const LawPtr& insurance, const LawPtr& financial);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double slack = 0.0;  // distance to the failure boundary; negative when failed
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
  const ValidationCheck* find(const std::string& name) const;
};

ValidationReport validate(const SarmanovModel& model);

/// Minimum of 1 + theta phi1 phi2 over the kernel ranges on the support grids (corner products).
double min_density_factor(const SarmanovModel& model);

/// 1 + theta phi1(x) phi2(y). Throws DomainError outside the support hulls.
double joint_density_factor(const SarmanovModel& model, double x, double y);

/// Draws (X, Y): Y ~ G by inversion, then X from (1 + theta phi1(x) phi2(Y)) F(dx)
/// by rejection against F with envelope 1 + |theta| b1 b2. Throws InvalidModelError
/// when the density factor can be negative.
class PairSampler {
 public:
  explicit PairSampler(const SarmanovModel& model);

  std::pair<double, double> operator()(SeedStream& stream) const;

  double envelope() const { return envelope_; }

  /// Proposals consumed by the draws of this sampler object, for acceptance-rate checks.
  std::size_t proposals() const { return proposals_.load(std::memory_order_relaxed); }
  std::size_t draws() const { return draws_.load(std::memory_order_relaxed); }

 private:
  double draw_level_value(const LawPtr& law, bool law_is_kernel_ref, const Kernel& k, SeedStream& s,
                          double& kernel_value) const;

  const SarmanovModel* model_;
  double envelope_;
  bool fast_x_;  // F continuous and phi1 references F: phi1(Q(u)) = p1(u)
  bool fast_y_;
  mutable std::atomic<std::size_t> proposals_{0};
  mutable std::atomic<std::size_t> draws_{0};
};

std::pair<double, double> sample_pair(const SarmanovModel& model, SeedStream& stream);

/// Law of Y*_theta: G reweighted by 1 + theta d1 phi2(y). Returns G itself when theta d1 = 0.
/// Throws InvalidModelError when |theta d1| b2 > 1.
LawPtr twist(const SarmanovModel& model);

}  // namespace srisk
