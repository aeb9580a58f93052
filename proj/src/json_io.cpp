#include "srisk/json_io.hpp"

#include <cmath>
#include <string>

#include "srisk/error.hpp"

namespace srisk {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ConfigError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<double> coefficient_list(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + ": expected a non-empty number array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(std::string(what) + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json atoms_to_json(const std::vector<Atom>& atoms) {
  Json out = Json::array();
  for (const auto& a : atoms) out.push_back({{"location", a.location}, {"weight", a.weight}});
  return out;
}

}  // namespace

double require_number(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return require_number(j, key);
}

std::vector<double> number_list(const Json& j, const char* key) {
  return coefficient_list(field(j, key), key);
}

LawPtr law_from_json(const Json& j) {
  const auto& family = field(j, "family");
  if (!family.is_string()) throw ConfigError("law: 'family' must be a string");
  const auto name = family.get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (!params.is_object()) throw ConfigError("law: 'params' must be an object");

  if (name == "pareto") return UnivariateLaw::pareto(require_number(params, "alpha"), number_or(params, "scale", 1.0));
  if (name == "uniform01") return UnivariateLaw::uniform01();
  if (name == "two_atom") {
    return UnivariateLaw::two_atom(require_number(params, "low"), require_number(params, "low_weight"),
                                   require_number(params, "high"));
  }
  if (name == "lognormal") return UnivariateLaw::lognormal(require_number(params, "mu"), require_number(params, "sigma"));
  if (name == "point_mass") return UnivariateLaw::point_mass(require_number(params, "location"));
  if (name == "oscillating_pareto") {
    return UnivariateLaw::oscillating_pareto({require_number(params, "alpha"), require_number(params, "beta0"),
                                              require_number(params, "a"), require_number(params, "b")});
  }
  if (name == "flattened") return UnivariateLaw::flattened(law_from_json(field(params, "base")), require_number(params, "cut"));
  if (name == "atom_mixture") {
    std::vector<Atom> atoms;
    if (params.contains("atoms")) {
      const auto& list = params.at("atoms");
      if (!list.is_array()) throw ConfigError("atom_mixture: 'atoms' must be an array");
      for (const auto& a : list) atoms.push_back({require_number(a, "location"), require_number(a, "weight")});
    }
    const auto& base = field(params, "base");
    return UnivariateLaw::atom_mixture(base.is_null() ? nullptr : law_from_json(base), number_or(params, "lower", 0.0),
                                       require_number(params, "base_weight"), std::move(atoms));
  }
  if (name == "twisted") {
    const auto base = law_from_json(field(params, "base"));
    const auto reference = params.contains("reference") ? law_from_json(params.at("reference")) : base;
    return UnivariateLaw::twisted(
        base, Kernel::cdf_polynomial(reference, coefficient_list(field(params, "coefficients"), "coefficients")),
        require_number(params, "scale"));
  }
  throw ConfigError("law: unknown family '" + name + "'");
}

Json law_to_json(const UnivariateLaw& law) {
  Json params = Json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UnivariateLaw::Pareto>) {
          params = {{"alpha", v.alpha}, {"scale", v.scale}};
        } else if constexpr (std::is_same_v<T, UnivariateLaw::TwoAtom>) {
          params = {{"low", v.low}, {"low_weight", v.low_weight}, {"high", v.high}};
        } else if constexpr (std::is_same_v<T, UnivariateLaw::LogNormal>) {
          params = {{"mu", v.mu}, {"sigma", v.sigma}};
        } else if constexpr (std::is_same_v<T, UnivariateLaw::Oscillating>) {
          params = {{"alpha", v.params.alpha}, {"beta0", v.params.beta0}, {"a", v.params.a}, {"b", v.params.b}};
        } else if constexpr (std::is_same_v<T, UnivariateLaw::Flattened>) {
          params = {{"base", law_to_json(*v.base)}, {"cut", v.cut}};
        } else if constexpr (std::is_same_v<T, UnivariateLaw::AtomMixture>) {
          params = {{"base", v.base ? law_to_json(*v.base) : Json(nullptr)},
                    {"lower", v.lower},
                    {"base_weight", v.base_weight},
                    {"atoms", atoms_to_json(v.atoms)}};
        } else if constexpr (std::is_same_v<T, UnivariateLaw::Twisted>) {
          params = {{"base", law_to_json(*v.base)}, {"coefficients", v.kernel.coefficients()}, {"scale", v.scale}};
          if (v.kernel.reference() != v.base) params["reference"] = law_to_json(*v.kernel.reference());
        }
      },
      law.variant());
  return {{"family", family_name(law.family())}, {"params", params}};
}

SarmanovModel model_from_json(const Json& j) {
  const auto F = law_from_json(field(j, "F"));
  const auto G = law_from_json(field(j, "G"));
  const double theta = number_or(j, "theta", 0.0);
  const Json kernel = j.contains("kernel") ? j.at("kernel") : Json("fgm");
  if (kernel.is_string()) {
    const auto k = kernel.get<std::string>();
    if (k == "fgm") return SarmanovModel::fgm(F, G, theta);
    if (k == "independent") return SarmanovModel::independent(F, G);
    throw ConfigError("model: unknown kernel '" + k + "'");
  }
  if (!kernel.is_object()) throw ConfigError("model: 'kernel' must be a string or an object");
  const auto& type = field(kernel, "type");
  if (!type.is_string() || type.get<std::string>() != "cdf_polynomial") {
    throw ConfigError("model: kernel type must be 'cdf_polynomial'");
  }
  return SarmanovModel(F, G, Kernel::cdf_polynomial(F, coefficient_list(field(kernel, "insurance"), "insurance")),
                       Kernel::cdf_polynomial(G, coefficient_list(field(kernel, "financial"), "financial")), theta);
}

Json model_to_json(const SarmanovModel& model) {
  Json kernel;
  if (model.insurance_kernel().is_zero() && model.financial_kernel().is_zero()) {
    kernel = "independent";
  } else if (model.is_fgm()) {
    kernel = "fgm";
  } else {
    kernel = {{"type", "cdf_polynomial"},
              {"insurance", model.insurance_kernel().coefficients()},
              {"financial", model.financial_kernel().coefficients()}};
  }
  return {{"F", law_to_json(*model.insurance())},
          {"G", law_to_json(*model.financial())},
          {"kernel", kernel},
          {"theta", model.theta()}};
}

Json to_json(const ValidationReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"measured", number_or_null(c.measured)},
                      {"slack", number_or_null(c.slack)},
                      {"detail", c.detail}});
  }
  return {{"all_passed", report.all_passed()}, {"checks", checks}};
}

Json to_json(const RuinEstimate& e) {
  Json out = {{"threshold", e.threshold},
              {"horizon", e.horizon.is_infinite() ? Json("inf") : Json(*e.horizon.steps)},
              {"estimate", e.estimate},
              {"std_error", e.std_error},
              {"ci_low", e.ci_low},
              {"ci_high", e.ci_high},
              {"samples", e.samples},
              {"hits", e.hits}};
  if (e.truncation_depth) {
    out["truncation_depth"] = *e.truncation_depth;
    out["truncation_bound"] = *e.truncation_bound;
    out["truncation_order"] = *e.truncation_order;
  }
  return out;
}

Json to_json(const TruncationPlan& plan) {
  return {{"depth", plan.depth},
          {"bound", plan.bound},
          {"order", plan.order},
          {"discount_moment", plan.discount_moment},
          {"product_moment", plan.product_moment}};
}

Json to_json(const MellinScanResult& scan) {
  Json zeros = Json::array();
  std::string summary = "zeros: none (grid-relative)";
  if (!scan.zeros.empty()) {
    summary = "zeros:";
    for (const auto& z : scan.zeros) {
      zeros.push_back({{"beta", z.beta}, {"modulus", z.modulus}});
      summary += " " + std::to_string(z.beta);
    }
  }
  return {{"alpha", scan.alpha},
          {"beta_max", scan.betas.empty() ? 0.0 : scan.betas.back()},
          {"points", scan.betas.size()},
          {"min_modulus", scan.min_modulus},
          {"argmin_beta", scan.argmin_beta},
          {"zeros", zeros},
          {"summary", summary}};
}

Json to_json(const TailIndexEstimate& e) {
  return {{"alpha", e.alpha}, {"k", e.k}, {"std_error", e.std_error}, {"n", e.n}};
}

Json to_json(const TailRatioReport& r) {
  Json out = {{"scale", r.scale},
              {"verdict", verdict_name(r.verdict)},
              {"amplitude", r.amplitude},
              {"limit", r.limit},
              {"implied_index", r.implied_index ? Json(*r.implied_index) : Json(nullptr)},
              {"points", r.curve.size()}};
  if (r.warning) out["warning"] = *r.warning;
  return out;
}

Json to_json(const DominatedVariationReport& r) {
  return {{"scale", r.scale},
          {"verdict", verdict_name(r.verdict)},
          {"sup", r.sup},
          {"sup_last_decade", r.sup_last_decade},
          {"sup_previous_decade", r.sup_previous_decade}};
}

Json to_json(const CounterexampleParams& p) {
  return {{"alpha", p.alpha},
          {"beta0", p.beta0},
          {"a", p.a},
          {"b", p.b},
          {"theta", p.theta},
          {"cut", p.cut ? Json(*p.cut) : Json(nullptr)},
          {"kernel_coefficients", p.kernel_coefficients}};
}

Json to_json(const CounterexampleBundle& b) {
  const auto& c = b.centering;
  Json centering = {{"case", case_name(c.tag)},
                    {"c0", c.c0},
                    {"residual", c.residual},
                    {"tail_proportionality", c.tail_proportionality}};
  centering["root"] = c.root ? Json(*c.root) : Json(nullptr);
  centering["atom"] = c.atom ? Json{{"location", c.atom->location}, {"weight", c.atom->weight}} : Json(nullptr);
  return {{"parameters", to_json(b.params)},
          {"cut", b.cut},
          {"oscillation_mass", b.oscillation_mass},
          {"mellin_zero_modulus", b.mellin_zero_modulus},
          {"centering", centering},
          {"G", law_to_json(*b.G)},
          {"G_theta", law_to_json(*b.G_theta)},
          {"F", law_to_json(*b.F)}};
}

Json to_json(const DemonstrationReport& r) {
  return {{"kappa", r.kappa},
          {"limit_constant", r.limit_constant},
          {"product_ratio_error", r.product_ratio_error},
          {"product", to_json(r.product)},
          {"law", to_json(r.law)}};
}

}  // namespace srisk
