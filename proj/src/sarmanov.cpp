#include "srisk/sarmanov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srisk/error.hpp"

namespace srisk {
namespace {

constexpr double kCenteringTol = 1e-9;
constexpr double kLimitTol = 1e-6;
constexpr int kGridLevels = 512;

// Points spread over the law's support: quantiles at midpoints of a level grid
// plus atoms and hull endpoints.
std::vector<double> support_grid(const UnivariateLaw& law) {
  std::vector<double> xs;
  for (int i = 0; i < kGridLevels; ++i) xs.push_back(law.quantile((i + 0.5) / kGridLevels));
  for (double p : {1e-9, 1e-6, 1.0 - 1e-6, 1.0 - 1e-9}) xs.push_back(law.quantile(p));
  for (const auto& at : law.atoms()) xs.push_back(at.location);
  const auto hull = law.support();
  xs.push_back(hull.lower);
  if (std::isfinite(hull.upper)) xs.push_back(hull.upper);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::pair<double, double> kernel_range(const Kernel& k, const std::vector<double>& xs) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double x : xs) {
    const double v = k(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace

SarmanovModel::SarmanovModel(LawPtr insurance, LawPtr financial, Kernel insurance_kernel, Kernel financial_kernel,
                             double theta)
    : insurance_(std::move(insurance)),
      financial_(std::move(financial)),
      kernel1_(std::move(insurance_kernel)),
      kernel2_(std::move(financial_kernel)),
      theta_(theta) {
  if (!insurance_ || !financial_) throw InvalidModelError("sarmanov: both marginals are required");
  if (!std::isfinite(theta_)) throw InvalidModelError("sarmanov: theta must be finite");
  if (financial_->support().lower < 0.0) throw InvalidModelError("sarmanov: financial risk must be nonnegative");
}

SarmanovModel SarmanovModel::fgm(LawPtr insurance, LawPtr financial, double theta) {
  auto k = fgm_kernels(insurance, financial);
  return SarmanovModel(std::move(insurance), std::move(financial), std::move(k.insurance), std::move(k.financial),
                       theta);
}

SarmanovModel SarmanovModel::independent(LawPtr insurance, LawPtr financial) {
  return fgm(std::move(insurance), std::move(financial), 0.0);
}

KernelTriple fgm_kernels(const LawPtr& insurance, const LawPtr& financial) {
  auto k1 = Kernel::fgm(insurance);
  auto k2 = Kernel::fgm(financial);
  const double b1 = k1.sup_bound();
  const double b2 = k2.sup_bound();
  const double d1 = k1.limit_at_infinity();
  return {std::move(k1), std::move(k2), b1, b2, d1};
}

namespace {

struct FactorRange {
  double lo1, hi1, lo2, hi2;
  double min_factor;
};

// Kernel ranges on the support grids, closed up with the limits at the support ends.
FactorRange factor_range(const SarmanovModel& model) {
  const auto& k1 = model.insurance_kernel();
  const auto& k2 = model.financial_kernel();
  const auto [lo1, hi1] = kernel_range(k1, support_grid(*model.insurance()));
  const auto [lo2, hi2] = kernel_range(k2, support_grid(*model.financial()));
  const double lim1 = k1.limit_at_infinity();
  const double lim2 = k2.limit_at_infinity();
  FactorRange r{std::min(lo1, lim1), std::max(hi1, lim1), std::min(lo2, lim2), std::max(hi2, lim2), 0.0};
  r.min_factor = std::numeric_limits<double>::infinity();
  for (double a : {r.lo1, r.hi1}) {
    for (double b : {r.lo2, r.hi2}) r.min_factor = std::min(r.min_factor, 1.0 + model.theta() * a * b);
  }
  return r;
}

}  // namespace

double min_density_factor(const SarmanovModel& model) { return factor_range(model).min_factor; }

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate(const SarmanovModel& model) {
  ValidationReport report;
  const auto& F = *model.insurance();
  const auto& G = *model.financial();
  const auto& k1 = model.insurance_kernel();
  const auto& k2 = model.financial_kernel();

  auto centered = [&](const std::string& name, const UnivariateLaw& law, const Kernel& k) {
    const auto q = law.expect([&k](double x) { return Complex(k(x)); });
    const double m = std::abs(q.value);
    report.checks.push_back({name, m <= kCenteringTol, m, kCenteringTol - m, "|E[phi]| by quadrature"});
  };
  centered("insurance_kernel_centered", F, k1);
  centered("financial_kernel_centered", G, k2);

  const auto range = factor_range(model);
  const double min_factor = range.min_factor;
  report.checks.push_back({"density_factor_nonnegative", min_factor >= 0.0, min_factor, min_factor,
                           "min of 1 + theta phi1 phi2 over the support grid"});

  const double m1 = std::max(std::abs(range.lo1), std::abs(range.hi1));
  const double m2 = std::max(std::abs(range.lo2), std::abs(range.hi2));
  const double tol = 1e-12;
  report.checks.push_back(
      {"insurance_kernel_bounded", m1 <= model.b1() + tol, m1, model.b1() - m1, "max |phi1| on grid vs b1"});
  report.checks.push_back(
      {"financial_kernel_bounded", m2 <= model.b2() + tol, m2, model.b2() - m2, "max |phi2| on grid vs b2"});

  const double far = F.unbounded() ? F.quantile(1.0 - 1e-10) : 2.0 * F.support().upper + 1.0;
  const double gap = std::abs(k1(far) - model.d1());
  report.checks.push_back({"insurance_kernel_limit", gap <= kLimitTol, gap, kLimitTol - gap,
                           "|phi1(quantile(1 - 1e-10)) - d1|"});
  return report;
}

double joint_density_factor(const SarmanovModel& model, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("joint_density_factor: non-finite argument");
  if (!model.insurance()->support().contains(x)) throw DomainError("joint_density_factor: x outside support of F");
  if (!model.financial()->support().contains(y)) throw DomainError("joint_density_factor: y outside support of G");
  if (model.theta() == 0.0) return 1.0;
  return 1.0 + model.theta() * model.insurance_kernel()(x) * model.financial_kernel()(y);
}

PairSampler::PairSampler(const SarmanovModel& model)
    : model_(&model), envelope_(1.0 + std::abs(model.theta()) * model.b1() * model.b2()) {
  if (model.theta() != 0.0 && min_density_factor(model) < 0.0) {
    throw InvalidModelError("sampler: 1 + theta phi1 phi2 takes negative values");
  }
  fast_x_ = model.insurance()->is_continuous() && model.insurance_kernel().reference() == model.insurance();
  fast_y_ = model.financial()->is_continuous() && model.financial_kernel().reference() == model.financial();
}

double PairSampler::draw_level_value(const LawPtr& law, bool fast, const Kernel& k, SeedStream& s,
                                     double& kernel_value) const {
  const double u = s.uniform();
  const double x = law->quantile(u);
  kernel_value = fast ? k.at_level(u) : k(x);
  return x;
}

std::pair<double, double> PairSampler::operator()(SeedStream& stream) const {
  const auto& m = *model_;
  draws_.fetch_add(1, std::memory_order_relaxed);
  double phi2 = 0.0;
  double y;
  if (m.theta() == 0.0) {
    y = m.financial()->sample(stream);
    proposals_.fetch_add(1, std::memory_order_relaxed);
    return {m.insurance()->sample(stream), y};
  }
  y = draw_level_value(m.financial(), fast_y_, m.financial_kernel(), stream, phi2);
  const double scaled = m.theta() * phi2;
  for (;;) {
    proposals_.fetch_add(1, std::memory_order_relaxed);
    double phi1 = 0.0;
    const double x = draw_level_value(m.insurance(), fast_x_, m.insurance_kernel(), stream, phi1);
    if (stream.uniform() * envelope_ <= 1.0 + scaled * phi1) return {x, y};
  }
}

std::pair<double, double> sample_pair(const SarmanovModel& model, SeedStream& stream) {
  return PairSampler(model)(stream);
}

LawPtr twist(const SarmanovModel& model) {
  const double scale = model.theta() * model.d1();
  if (scale == 0.0) return model.financial();
  if (std::abs(scale) * model.b2() > 1.0 + 1e-12) {
    throw InvalidModelError("twist: |theta d1| b2 > 1, twisted density would be negative");
  }
  return UnivariateLaw::twisted(model.financial(), model.financial_kernel(), scale);
}

}  // namespace srisk
