#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "srisk/counterexample.hpp"
#include "srisk/error.hpp"
#include "srisk/json_io.hpp"
#include "srisk/mellin.hpp"
#include "srisk/monte_carlo.hpp"
#include "srisk/ruin.hpp"
#include "srisk/sarmanov.hpp"
#include "srisk/tail_stats.hpp"

namespace srisk::cli {
namespace {

namespace fs = std::filesystem;

struct Context {
  Json config;  // resolved configuration, echoed into the sidecar
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::ostream* out = nullptr;
};

struct Output {
  Json results = Json::object();
  std::string csv;
  int status = kOk;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::size_t v) { return std::to_string(v); }

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

const Json& section(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return cfg.at(key);
}

std::size_t positive_integer(const Json& cfg, const char* key, std::size_t fallback) {
  if (!cfg.contains(key)) return fallback;
  const auto& v = cfg.at(key);
  if (v.is_number_integer() && v.get<std::int64_t>() > 0) return v.get<std::size_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 1.0 && d == std::floor(d) && d < 1e18) return static_cast<std::size_t>(d);
  }
  throw ConfigError(std::string("field '") + key + "' must be a positive integer");
}

std::vector<double> strictly_increasing(std::vector<double> xs, const char* key) {
  if (xs.empty()) throw ConfigError(std::string("'") + key + "' grid is empty");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || xs[i] <= 0.0) throw ConfigError(std::string("'") + key + "' must be positive");
    if (i > 0 && xs[i] <= xs[i - 1]) throw ConfigError(std::string("'") + key + "' must be strictly increasing");
  }
  return xs;
}

// Either an explicit list or {"from", "to", "points"} (log-spaced).
std::vector<double> grid(Json& cfg, const char* key, std::optional<Json> fallback = std::nullopt) {
  if (!cfg.contains(key)) {
    if (!fallback) throw ConfigError(std::string("missing field '") + key + "'");
    cfg[key] = *fallback;
  }
  const auto& g = cfg.at(key);
  if (g.is_array()) {
    std::vector<double> xs;
    for (const auto& v : g) {
      if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must hold numbers");
      xs.push_back(v.get<double>());
    }
    return strictly_increasing(std::move(xs), key);
  }
  if (g.is_object()) {
    const double from = require_number(g, "from");
    const double to = require_number(g, "to");
    const auto points = positive_integer(g, "points", 0);
    if (!(from > 0.0 && to > from && points >= 2)) throw ConfigError(std::string("'") + key + "': need 0 < from < to, points >= 2");
    return strictly_increasing(log_grid(from, to, points), key);
  }
  throw ConfigError(std::string("'") + key + "' must be a list or a {from, to, points} object");
}

McOptions mc_options(Context& ctx, std::size_t default_samples) {
  if (!ctx.seed) throw ConfigError("a root seed is required: set 'seed' in the config or pass --seed");
  McOptions o;
  o.seed = *ctx.seed;
  o.samples = positive_integer(ctx.config, "samples", default_samples);
  o.chunk_size = positive_integer(ctx.config, "chunk_size", o.chunk_size);
  o.workers = ctx.workers;
  ctx.config["samples"] = o.samples;
  ctx.config["chunk_size"] = o.chunk_size;
  return o;
}

std::optional<double> tail_alpha(const Json& cfg, const SarmanovModel& model) {
  if (cfg.contains("alpha")) return require_number(cfg, "alpha");
  return model.insurance()->tail_index();
}

// Validates before any simulation; on failure the report goes to stdout.
std::optional<Output> reject_invalid(const Context& ctx, const SarmanovModel& model) {
  const auto report = validate(model);
  if (report.all_passed()) return std::nullopt;
  Output o;
  o.results = {{"report", to_json(report)}};
  o.status = kValidation;
  *ctx.out << to_json(report).dump(2) << '\n';
  return o;
}

Output cmd_validate(Context& ctx) {
  const auto model = model_from_json(section(ctx.config, "model"));
  const auto report = validate(model);
  Output o;
  o.results = {{"model", model_to_json(model)}, {"report", to_json(report)}};
  o.status = report.all_passed() ? kOk : kValidation;
  *ctx.out << to_json(report).dump(2) << '\n';
  return o;
}

std::vector<Horizon> horizons(Json& cfg) {
  Json list = Json::array();
  if (cfg.contains("horizons")) {
    list = cfg.at("horizons");
  } else if (cfg.contains("horizon")) {
    list.push_back(cfg.at("horizon"));
  } else {
    list.push_back(1);
  }
  if (!list.is_array() || list.empty()) throw ConfigError("'horizons' must be a non-empty list");
  std::vector<Horizon> out;
  for (const auto& h : list) {
    if (h.is_string() && h.get<std::string>() == "inf") {
      out.push_back(Horizon::infinite());
    } else if (h.is_number_integer() && h.get<std::int64_t>() > 0) {
      out.push_back(Horizon::finite(static_cast<std::size_t>(h.get<std::int64_t>())));
    } else {
      throw ConfigError("horizon entries must be positive integers or \"inf\"");
    }
  }
  cfg.erase("horizon");
  cfg["horizons"] = list;
  return out;
}

Output cmd_ruin(Context& ctx) {
  const auto model = model_from_json(section(ctx.config, "model"));
  const auto xs = grid(ctx.config, "x");
  const auto hs = horizons(ctx.config);
  const double tolerance = number_or(ctx.config, "truncation_tolerance", 1e-4);
  ctx.config["truncation_tolerance"] = tolerance;
  const auto options = mc_options(ctx, 1'000'000);
  if (auto rejected = reject_invalid(ctx, model)) return *rejected;
  const auto alpha = tail_alpha(ctx.config, model);

  Output o;
  o.csv = join({"x", "horizon", "estimate", "std_error", "ci_low", "ci_high", "hits", "samples", "constant", "ratio",
                "truncation_depth", "truncation_bound"});
  Json rows = Json::array();
  for (const auto& h : hs) {
    const auto estimates = h.is_infinite() ? estimate_infinite_ruin(model, xs, tolerance, options)
                                           : estimate_finite_ruin(model, xs, *h.steps, options);
    std::optional<double> constant;
    if (alpha) {
      try {
        constant = h.is_infinite() ? asymptotic_constant_infinite(model, *alpha)
                                   : asymptotic_constant_finite(model, *alpha, *h.steps);
      } catch (const SingularRatioError&) {
      }
    }
    for (const auto& e : estimates) {
      const std::optional<double> ratio =
          constant ? std::optional(e.estimate * std::pow(e.threshold, *alpha) / *constant) : std::nullopt;
      o.csv += join({num(e.threshold), h.is_infinite() ? "inf" : num(*h.steps), num(e.estimate), num(e.std_error),
                     num(e.ci_low), num(e.ci_high), num(e.hits), num(e.samples), constant ? num(*constant) : "",
                     ratio ? num(*ratio) : "", e.truncation_depth ? num(*e.truncation_depth) : "",
                     e.truncation_bound ? num(*e.truncation_bound) : ""});
      auto row = to_json(e);
      row["constant"] = constant ? Json(*constant) : Json(nullptr);
      row["ratio"] = ratio ? Json(*ratio) : Json(nullptr);
      rows.push_back(row);
    }
  }
  o.results = {{"alpha", alpha ? Json(*alpha) : Json(nullptr)}, {"rows", rows}};
  return o;
}

Output cmd_product_tail(Context& ctx) {
  const auto model = model_from_json(section(ctx.config, "model"));
  const auto xs = grid(ctx.config, "x");
  const bool twin = ctx.config.value("twin", false);
  ctx.config["twin"] = twin;
  const auto options = mc_options(ctx, 1'000'000);
  if (auto rejected = reject_invalid(ctx, model)) return *rejected;
  const auto alpha = tail_alpha(ctx.config, model);
  const auto twisted = twist(model);

  const auto estimates = estimate_finite_ruin(model, xs, 1, options);
  std::vector<RuinEstimate> twin_estimates;
  if (twin) {
    auto twin_options = options;
    twin_options.seed = sub_seed(options.seed, 1);
    twin_estimates = estimate_twisted_product_tail(model, xs, twin_options);
  }
  const std::optional<double> constant =
      alpha ? std::optional(asymptotic_constant_product(model, *alpha)) : std::nullopt;

  Output o;
  std::vector<std::string> header{"x", "estimate", "std_error", "ci_low", "ci_high", "hits", "samples",
                                  "twisted_tail", "constant", "ratio"};
  if (twin) header.insert(header.end(), {"twin_estimate", "twin_std_error", "twin_ci_low", "twin_ci_high"});
  o.csv = join(header);
  Json rows = Json::array();
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const auto& e = estimates[i];
    const double exact = mult_convolution_tail(*model.insurance(), twisted, e.threshold);
    const std::optional<double> ratio =
        constant ? std::optional(e.estimate * std::pow(e.threshold, *alpha) / *constant) : std::nullopt;
    std::vector<std::string> cells{num(e.threshold), num(e.estimate), num(e.std_error), num(e.ci_low),
                                   num(e.ci_high), num(e.hits), num(e.samples), num(exact),
                                   constant ? num(*constant) : "", ratio ? num(*ratio) : ""};
    auto row = to_json(e);
    row.erase("horizon");
    row["twisted_tail"] = exact;
    row["constant"] = constant ? Json(*constant) : Json(nullptr);
    row["ratio"] = ratio ? Json(*ratio) : Json(nullptr);
    if (twin) {
      const auto& t = twin_estimates[i];
      cells.insert(cells.end(), {num(t.estimate), num(t.std_error), num(t.ci_low), num(t.ci_high)});
      row["twin"] = {{"estimate", t.estimate}, {"std_error", t.std_error}, {"ci_low", t.ci_low}, {"ci_high", t.ci_high}};
    }
    o.csv += join(cells);
    rows.push_back(row);
  }
  o.results = {{"alpha", alpha ? Json(*alpha) : Json(nullptr)}, {"rows", rows}};
  return o;
}

Output cmd_mellin_scan(Context& ctx) {
  const double alpha = require_number(ctx.config, "alpha");
  if (!(alpha > 0.0)) throw ConfigError("'alpha' must be positive");
  const double beta_max = number_or(ctx.config, "beta_max", default_beta_max(alpha));
  if (!(beta_max > 0.0)) throw ConfigError("'beta_max' must be positive");
  ctx.config["beta_max"] = beta_max;
  ScanOptions options;
  options.resolution = positive_integer(ctx.config, "resolution", options.resolution);
  options.log_points = positive_integer(ctx.config, "log_points", options.log_points);
  options.zero_threshold = number_or(ctx.config, "zero_threshold", options.zero_threshold);
  options.workers = ctx.workers;

  std::function<Complex(double)> transform;
  std::optional<SarmanovModel> model;
  LawPtr law;
  if (ctx.config.contains("model")) {
    model.emplace(model_from_json(ctx.config.at("model")));
    transform = [&](double beta) { return twisted_mellin(*model, alpha, beta).value; };
  } else {
    law = law_from_json(section(ctx.config, "law"));
    transform = [&](double beta) { return law->fractional_moment(Complex(alpha, beta)).value; };
  }
  const auto scan = scan_nonvanishing(transform, alpha, beta_max, options);

  Output o;
  o.csv = join({"beta", "re", "im", "modulus"});
  for (std::size_t i = 0; i < scan.betas.size(); ++i) {
    o.csv += join({num(scan.betas[i]), num(scan.values[i].real()), num(scan.values[i].imag()), num(scan.moduli[i])});
  }
  o.results = to_json(scan);
  return o;
}

Output cmd_hill(Context& ctx) {
  const auto law = law_from_json(section(ctx.config, "law"));
  std::vector<std::size_t> ks;
  const auto& kcfg = section(ctx.config, "k");
  if (kcfg.is_array()) {
    for (const auto& k : kcfg) {
      if (!k.is_number_unsigned()) throw ConfigError("'k' entries must be positive integers");
      ks.push_back(k.get<std::size_t>());
    }
  } else {
    ks.push_back(positive_integer(ctx.config, "k", 0));
  }
  const auto runs = positive_integer(ctx.config, "runs", 1);
  ctx.config["runs"] = runs;
  const auto options = mc_options(ctx, 100'000);
  const auto alpha = law->tail_index();

  Output o;
  o.csv = join({"run", "k", "alpha", "std_error"});
  std::map<std::size_t, std::vector<double>> by_k;
  for (std::size_t r = 0; r < runs; ++r) {
    auto run_options = options;
    run_options.seed = sub_seed(options.seed, r);
    const auto samples = draw_iid([&](SeedStream& s) { return law->sample(s); }, run_options);
    for (const auto& e : hill_plot(samples, ks)) {
      o.csv += join({num(r), num(e.k), num(e.alpha), num(e.std_error)});
      by_k[e.k].push_back(e.alpha);
    }
  }
  Json summary = Json::array();
  for (const auto& [k, values] : by_k) {
    double sum = 0.0;
    std::size_t within = 0;
    for (double a : values) {
      sum += a;
      if (alpha && std::abs(a - *alpha) <= 0.1 * *alpha) ++within;
    }
    Json row = {{"k", k},
                {"mean", sum / values.size()},
                {"min", *std::min_element(values.begin(), values.end())},
                {"max", *std::max_element(values.begin(), values.end())},
                {"runs", values.size()}};
    if (alpha) row["within_10pct"] = within;
    summary.push_back(row);
  }
  o.results = {{"true_alpha", alpha ? Json(*alpha) : Json(nullptr)}, {"by_k", summary}};
  return o;
}

Output cmd_tail_ratio(Context& ctx) {
  const double scale = number_or(ctx.config, "scale", 2.0);
  if (!(scale > 0.0) || scale == 1.0) throw ConfigError("'scale' must be positive and different from 1");
  ctx.config["scale"] = scale;
  const auto xs = grid(ctx.config, "x");
  const std::string source = ctx.config.value("source", std::string("exact"));
  if (source != "exact" && source != "samples") throw ConfigError("'source' must be \"exact\" or \"samples\"");
  ctx.config["source"] = source;

  std::optional<SarmanovModel> model;
  LawPtr law;
  LawPtr twisted;
  if (ctx.config.contains("model")) {
    model.emplace(model_from_json(ctx.config.at("model")));
    twisted = twist(*model);
  } else {
    law = law_from_json(section(ctx.config, "law"));
  }
  std::function<double(double)> tail = [&](double x) {
    return model ? mult_convolution_tail(*model->insurance(), twisted, x) : law->tail(x);
  };

  TailRatioReport report;
  std::optional<DominatedVariationReport> dominated;
  if (source == "samples") {
    const auto options = mc_options(ctx, 1'000'000);
    std::vector<double> samples;
    if (model) {
      const PairSampler sampler(*model);
      samples = draw_iid([&](SeedStream& s) {
        const auto [x, y] = sampler(s);
        return x * y;
      }, options);
    } else {
      samples = draw_iid([&](SeedStream& s) { return law->sample(s); }, options);
    }
    report = tail_ratio_diagnostic(samples, scale, xs);
  } else {
    report = tail_ratio_diagnostic(tail, scale, xs);
    if (xs.back() >= 100.0 * xs.front()) {
      const double y = number_or(ctx.config, "dominated_scale", 0.5);
      ctx.config["dominated_scale"] = y;
      dominated = dominated_variation_check(tail, y, xs);
    }
  }

  Output o;
  o.csv = join({"x", "ratio"});
  for (const auto& p : report.curve) o.csv += join({num(p.x), num(p.ratio)});
  o.results = {{"ratio", to_json(report)}};
  if (dominated) o.results["dominated_variation"] = to_json(*dominated);
  return o;
}

Output cmd_counterexample(Context& ctx) {
  auto& cfg = ctx.config;
  CounterexampleParams p;
  p.alpha = number_or(cfg, "alpha", p.alpha);
  p.beta0 = number_or(cfg, "beta0", p.beta0);
  p.a = number_or(cfg, "a", p.a);
  p.b = number_or(cfg, "b", p.b);
  p.theta = number_or(cfg, "theta", p.theta);
  if (cfg.contains("cut") && !cfg.at("cut").is_null()) p.cut = require_number(cfg, "cut");
  if (cfg.contains("kernel_coefficients")) p.kernel_coefficients = number_list(cfg, "kernel_coefficients");
  const auto xs = grid(cfg, "x", Json{{"from", 100.0}, {"to", 1e4}, {"points", 41}});
  if (p.beta0 == 0.0) throw ConfigError("'beta0' must be nonzero");
  const Json resolved = to_json(p);
  for (const auto& [key, value] : resolved.items()) cfg[key] = value;

  const auto bundle = build_counterexample(p);
  const auto report = demonstrate(bundle, xs);

  Output o;
  o.csv = join({"x", "product_tail", "product_ratio", "law_tail", "law_ratio", "constant_ratio"});
  for (const auto& r : report.rows) {
    o.csv += join({num(r.x), num(r.product_tail), num(r.product_ratio), num(r.law_tail), num(r.law_ratio),
                   num(r.constant_ratio)});
  }
  o.results = {{"bundle", to_json(bundle)}, {"demonstration", to_json(report)}};
  return o;
}

using Command = Output (*)(Context&);

const std::map<std::string, std::pair<Command, const char*>>& commands() {
  static const std::map<std::string, std::pair<Command, const char*>> table{
      {"validate", {cmd_validate, "Check a Sarmanov model's kernel and density constraints"}},
      {"ruin", {cmd_ruin, "Monte Carlo ruin probabilities with asymptotic constants"}},
      {"product-tail", {cmd_product_tail, "Monte Carlo P[XY > x] against the twisted-law tail"}},
      {"mellin-scan", {cmd_mellin_scan, "Scan |E[Y^(alpha+i beta)]| for zeros"}},
      {"hill", {cmd_hill, "Hill estimates of the tail index from simulated samples"}},
      {"tail-ratio", {cmd_tail_ratio, "Tail ratio and dominated-variation diagnostics"}},
      {"counterexample", {cmd_counterexample, "Build the vanishing-Mellin counterexample and its demonstration"}},
  };
  return table;
}

std::optional<std::uint64_t> config_seed(const Json& cfg) {
  if (!cfg.contains("seed")) return std::nullopt;
  const auto& s = cfg.at("seed");
  if (!s.is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
  return s.get<std::uint64_t>();
}

std::string file_stem(const std::string& command) {
  std::string stem = command;
  std::replace(stem.begin(), stem.end(), '-', '_');
  return stem;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sarmanov-dependent ruin models: simulation, Mellin scans and tail diagnostics", "srisk"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out_dir = ".";
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands()) {
    auto* sub = app.add_subcommand(name, entry.second);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--seed", seed, "Root seed (overrides the config)");
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "Output directory");
    subs[name] = sub;
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  std::string name;
  for (const auto& [n, sub] : subs) {
    if (sub->parsed()) name = n;
  }
  CLI::App* sub = subs.at(name);
  const auto start = std::chrono::steady_clock::now();

  std::ifstream config_file(config_path);
  if (!config_file) {
    err << "error: cannot open config " << config_path << '\n';
    return kUsage;
  }
  Context ctx;
  ctx.out = &out;
  try {
    ctx.config = Json::parse(config_file);
  } catch (const Json::parse_error& e) {
    err << "error: " << config_path << ": " << e.what() << '\n';
    return kUsage;
  }
  if (!ctx.config.is_object()) {
    err << "error: " << config_path << ": top level must be an object\n";
    return kUsage;
  }

  std::string workers_source = "default";
  if (ctx.config.contains("workers") && ctx.config.at("workers").is_number_unsigned()) {
    ctx.workers = std::max(1u, ctx.config.at("workers").get<unsigned>());
    workers_source = "config";
  }
  if (sub->count("--workers")) {
    ctx.workers = workers;
    workers_source = "flag";
  }
  if (const char* env = std::getenv("SRISK_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) {
      ctx.workers = static_cast<unsigned>(v);
      workers_source = "env:SRISK_WORKERS";
    } else {
      err << "warning: ignoring invalid SRISK_WORKERS=" << env << '\n';
    }
  }
  // Worker count never changes results, so it stays out of the deterministic sidecar.
  ctx.config.erase("workers");

  Output result;
  try {
    ctx.seed = sub->count("--seed") ? std::optional(seed) : config_seed(ctx.config);
    if (ctx.seed) ctx.config["seed"] = *ctx.seed;
    result = commands().at(name).first(ctx);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidModelError& e) {
    err << "error: invalid model: " << e.what() << '\n';
    return kValidation;
  } catch (const HypothesisError& e) {
    err << "error: hypothesis violated: " << e.what() << '\n';
    return kValidation;
  } catch (const TruncationError& e) {
    err << "error: infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const SingularRatioError& e) {
    err << "error: infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const DivergentMomentError& e) {
    err << "error: infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const DegenerateError& e) {
    err << "error: infeasible: " << e.what() << '\n';
    return kInfeasible;
  }
  if (result.status != kOk) return result.status;

  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const auto stem = file_stem(name);
    const Json sidecar = {{"command", name}, {"version", kVersion}, {"config", ctx.config}, {"results", result.results}};
    write_file(dir / (stem + ".json"), sidecar.dump(2) + '\n');
    if (!result.csv.empty()) write_file(dir / (stem + ".csv"), result.csv);
    const Json timing = {{"command", name},
                         {"version", kVersion},
                         {"elapsed_seconds", elapsed},
                         {"workers", ctx.workers},
                         {"workers_source", workers_source}};
    write_file(dir / (stem + ".timing.json"), timing.dump(2) + '\n');
    if (name != "validate") {
      out << (dir / (stem + ".json")).string() << '\n';
      if (!result.csv.empty()) out << (dir / (stem + ".csv")).string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace srisk::cli
