#include "srisk/law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <boost/math/special_functions/erf.hpp>

#include "srisk/error.hpp"

namespace srisk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Complex kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": argument must be finite");
}

Complex cpow(double base, Complex s) {
  if (base == 1.0) return 1.0;
  return std::exp(s * std::log(base));
}

// Truncated moment of the oscillating Pareto law, closed form:
// E[Z^s; Z > L] for L >= 1.
Complex oscillating_truncated(const UnivariateLaw::Oscillating& o, Complex s, double lower) {
  const auto& p = o.params;
  const double l = std::max(lower, 1.0);
  const double a = p.alpha;
  const Complex w = Complex(p.a, -p.b) * 0.5;
  const Complex ib = kI * p.beta0;
  Complex v = cpow(l, s - a) / (a - s);
  v += w * cpow(l, s + ib - a) / (a - s - ib);
  v += std::conj(w) * cpow(l, s - ib - a) / (a - s + ib);
  return a * v / o.mass;
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  std::map<double, double> merged;
  for (const auto& at : atoms) {
    if (at.weight > 0.0) merged[at.location] += at.weight;
  }
  std::vector<Atom> out;
  out.reserve(merged.size());
  for (const auto& [loc, w] : merged) out.push_back({loc, w});
  return out;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Pareto: return "pareto";
    case Family::Uniform01: return "uniform01";
    case Family::TwoAtom: return "two_atom";
    case Family::LogNormal: return "lognormal";
    case Family::OscillatingPareto: return "oscillating_pareto";
    case Family::Flattened: return "flattened";
    case Family::AtomMixture: return "atom_mixture";
    case Family::Twisted: return "twisted";
  }
  return "unknown";
}

double OscillatingParetoParams::modulation(double x) const {
  const double t = beta0 * std::log(x);
  return 1.0 + a * std::cos(t) + b * std::sin(t);
}

double OscillatingParetoParams::raw_mass() const {
  return 1.0 + alpha * (a * alpha + b * beta0) / (alpha * alpha + beta0 * beta0);
}

// ---------------------------------------------------------------------------
// Construction

LawPtr UnivariateLaw::pareto(double alpha, double scale) {
  if (!(alpha > 0.0) || !(scale > 0.0) || !std::isfinite(alpha) || !std::isfinite(scale)) {
    throw InvalidModelError("pareto: alpha and scale must be positive and finite");
  }
  return std::make_shared<const UnivariateLaw>(Pareto{alpha, scale});
}

LawPtr UnivariateLaw::uniform01() { return std::make_shared<const UnivariateLaw>(Uniform01{}); }

LawPtr UnivariateLaw::two_atom(double low, double low_weight, double high) {
  if (!(low > 0.0) || !(high > low) || !std::isfinite(high)) {
    throw InvalidModelError("two_atom: need 0 < low < high < inf");
  }
  if (!(low_weight > 0.0 && low_weight < 1.0)) throw InvalidModelError("two_atom: low_weight must lie in (0, 1)");
  return std::make_shared<const UnivariateLaw>(TwoAtom{low, low_weight, high});
}

LawPtr UnivariateLaw::lognormal(double mu, double sigma) {
  if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidModelError("lognormal: need finite mu and sigma > 0");
  }
  return std::make_shared<const UnivariateLaw>(LogNormal{mu, sigma});
}

LawPtr UnivariateLaw::oscillating_pareto(const OscillatingParetoParams& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw InvalidModelError("oscillating_pareto: alpha must be > 0");
  if (p.beta0 == 0.0 || !std::isfinite(p.beta0)) throw InvalidModelError("oscillating_pareto: beta0 must be nonzero");
  if (!(p.a > 0.0) || !(p.b > 0.0) || p.a + p.b > 1.0) {
    throw InvalidModelError("oscillating_pareto: need a > 0, b > 0, a + b <= 1");
  }
  return std::make_shared<const UnivariateLaw>(Oscillating{p, p.raw_mass()});
}

LawPtr UnivariateLaw::flattened(LawPtr base, double cut) {
  if (!base) throw InvalidModelError("flattened: missing base law");
  if (!(cut > 1.0) || !std::isfinite(cut)) throw InvalidModelError("flattened: cut must exceed 1");
  if (base->support().lower < 1.0) throw InvalidModelError("flattened: base law must live on [1, inf)");
  if (!(base->tail(cut) < 1.0)) throw InvalidModelError("flattened: need base tail at the cut < 1");
  return std::make_shared<const UnivariateLaw>(Flattened{std::move(base), cut});
}

LawPtr UnivariateLaw::atom_mixture(LawPtr base, double lower, double base_weight, std::vector<Atom> atoms) {
  if (base_weight < 0.0 || base_weight > 1.0) throw InvalidModelError("atom_mixture: base_weight must lie in [0, 1]");
  double total = base_weight;
  for (const auto& at : atoms) {
    if (!(at.weight >= 0.0) || !std::isfinite(at.location) || at.location < 0.0) {
      throw InvalidModelError("atom_mixture: atoms need nonnegative weight and finite location >= 0");
    }
    total += at.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidModelError("atom_mixture: weights must sum to 1");
  if (base_weight > 0.0) {
    if (!base) throw InvalidModelError("atom_mixture: positive base_weight without a base law");
    if (!(base->tail(lower) > 0.0)) throw InvalidModelError("atom_mixture: base has no mass above lower");
  } else {
    base.reset();
  }
  return std::make_shared<const UnivariateLaw>(AtomMixture{std::move(base), lower, base_weight, merge_atoms(atoms)});
}

LawPtr UnivariateLaw::point_mass(double location) {
  return atom_mixture(nullptr, 0.0, 0.0, {{location, 1.0}});
}

LawPtr UnivariateLaw::twisted(LawPtr base, Kernel kernel, double scale) {
  if (!base) throw InvalidModelError("twisted: missing base law");
  if (std::abs(scale) * kernel.sup_bound() > 1.0 + 1e-12) {
    throw InvalidModelError("twisted: density multiplier 1 + scale * kernel takes negative values");
  }
  return std::make_shared<const UnivariateLaw>(Twisted{std::move(base), std::move(kernel), scale});
}

Family UnivariateLaw::family() const {
  return std::visit(Overloaded{[](const Pareto&) { return Family::Pareto; },
                               [](const Uniform01&) { return Family::Uniform01; },
                               [](const TwoAtom&) { return Family::TwoAtom; },
                               [](const LogNormal&) { return Family::LogNormal; },
                               [](const Oscillating&) { return Family::OscillatingPareto; },
                               [](const Flattened&) { return Family::Flattened; },
                               [](const AtomMixture&) { return Family::AtomMixture; },
                               [](const Twisted&) { return Family::Twisted; }},
                    v_);
}

// ---------------------------------------------------------------------------
// Tails

double UnivariateLaw::tail(double x) const {
  require_finite(x, "tail");
  return std::visit(
      Overloaded{
          [&](const Pareto& p) { return x <= p.scale ? 1.0 : std::pow(x / p.scale, -p.alpha); },
          [&](const Uniform01&) { return x <= 0.0 ? 1.0 : (x >= 1.0 ? 0.0 : 1.0 - x); },
          [&](const TwoAtom& t) { return x < t.low ? 1.0 : (x < t.high ? 1.0 - t.low_weight : 0.0); },
          [&](const LogNormal& l) {
            if (x <= 0.0) return 1.0;
            return 0.5 * std::erfc((std::log(x) - l.mu) / (l.sigma * M_SQRT2));
          },
          [&](const Oscillating& o) {
            if (x <= 1.0) return 1.0;
            return std::clamp(oscillating_truncated(o, 0.0, x).real(), 0.0, 1.0);
          },
          [&](const Flattened& f) {
            if (x < 1.0) return 1.0;
            return f.base->tail(std::max(x, f.cut));
          },
          [&](const AtomMixture& m) {
            double t = 0.0;
            if (m.base_weight > 0.0) t += x < m.lower ? m.base_weight : m.base_weight * m.base->tail(x) / m.base->tail(m.lower);
            for (const auto& at : m.atoms) {
              if (at.location > x) t += at.weight;
            }
            return std::min(t, 1.0);
          },
          [&](const Twisted& t) {
            const double base = t.base->tail(x);
            if (base == 0.0 || t.scale == 0.0) return base;
            const auto k = t.base->expect([&t](double y) { return Complex(t.kernel(y)); }, x);
            return std::clamp(base + t.scale * k.value.real(), 0.0, 1.0);
          }},
      v_);
}

double UnivariateLaw::tail_left(double x) const {
  require_finite(x, "tail_left");
  double mass_at_x = 0.0;
  for (const auto& at : atoms()) {
    if (at.location == x) mass_at_x += at.weight;
  }
  return std::min(1.0, tail(x) + mass_at_x);
}

// ---------------------------------------------------------------------------
// Quantiles and sampling

double UnivariateLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0, 1)");
  return std::visit(Overloaded{[&](const Pareto& q) { return q.scale * std::pow(1.0 - p, -1.0 / q.alpha); },
                               [&](const Uniform01&) { return p; },
                               [&](const TwoAtom& t) { return p <= t.low_weight ? t.low : t.high; },
                               [&](const LogNormal& l) {
                                 const double z = -M_SQRT2 * boost::math::erfc_inv(2.0 * p);
                                 return std::exp(l.mu + l.sigma * z);
                               },
                               [&](const Flattened& f) {
                                 const double below = 1.0 - f.base->tail(f.cut);
                                 return p <= below ? 1.0 : std::max(f.cut, f.base->quantile(p));
                               },
                               [&](const auto&) { return quantile_numeric(p); }},
                    v_);
}

double UnivariateLaw::quantile_numeric(double p) const {
  const double target_tail = 1.0 - p;
  // Jumps first: if p falls inside an atom's jump, that atom is the answer.
  for (const auto& at : atoms()) {
    if (tail_left(at.location) > target_tail && tail(at.location) <= target_tail) return at.location;
  }
  const auto hull = support();
  double lo = hull.lower;
  double hi;
  if (std::isfinite(hull.upper)) {
    hi = hull.upper;
  } else {
    hi = std::max(1.0, 2.0 * std::abs(lo));
    while (tail(hi) > target_tail) hi *= 2.0;
  }
  // Invariant: tail(lo) > target or lo at the bottom; tail(hi) <= target.
  for (int it = 0; it < 400 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail(mid) <= target_tail) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double UnivariateLaw::sample_oscillating(const Oscillating& o, SeedStream& stream) const {
  const auto& p = o.params;
  const double envelope = 1.0 + p.a + p.b;
  for (;;) {
    const double x = std::pow(stream.uniform(), -1.0 / p.alpha);
    if (stream.uniform() * envelope <= p.modulation(x)) return x;
  }
}

double UnivariateLaw::sample(SeedStream& stream) const {
  return std::visit(Overloaded{[&](const Oscillating& o) { return sample_oscillating(o, stream); },
                               [&](const AtomMixture& m) {
                                 const double u = stream.uniform();
                                 if (u < m.base_weight) {
                                   const double t = m.base->tail(m.lower);
                                   return m.base->quantile(1.0 - t * stream.uniform());
                                 }
                                 double acc = m.base_weight;
                                 for (const auto& at : m.atoms) {
                                   acc += at.weight;
                                   if (u < acc) return at.location;
                                 }
                                 return m.atoms.back().location;
                               },
                               [&](const Twisted& t) {
                                 const double envelope = 1.0 + std::abs(t.scale) * t.kernel.sup_bound();
                                 for (;;) {
                                   const double y = t.base->sample(stream);
                                   if (stream.uniform() * envelope <= 1.0 + t.scale * t.kernel(y)) return y;
                                 }
                               },
                               [&](const auto&) { return quantile(stream.uniform()); }},
                    v_);
}

std::vector<double> UnivariateLaw::sample(SeedStream& stream, std::size_t n) const {
  std::vector<double> out(n);
  for (auto& v : out) v = sample(stream);
  return out;
}

// ---------------------------------------------------------------------------
// Moments

std::pair<double, double> UnivariateLaw::moment_strip() const {
  return std::visit(Overloaded{[](const Pareto& p) { return std::pair{-kInf, p.alpha}; },
                               [](const Uniform01&) { return std::pair{-1.0, kInf}; },
                               [](const TwoAtom&) { return std::pair{-kInf, kInf}; },
                               [](const LogNormal&) { return std::pair{-kInf, kInf}; },
                               [](const Oscillating& o) { return std::pair{-kInf, o.params.alpha}; },
                               [](const Flattened& f) { return std::pair{-kInf, f.base->moment_strip().second}; },
                               [](const AtomMixture& m) {
                                 double lo = -kInf;
                                 double hi = kInf;
                                 for (const auto& at : m.atoms) {
                                   if (at.location == 0.0) lo = 0.0;
                                 }
                                 if (m.base_weight > 0.0) {
                                   const auto s = m.base->moment_strip();
                                   hi = s.second;
                                   if (m.lower <= 0.0) lo = std::max(lo, s.first);
                                 }
                                 return std::pair{lo, hi};
                               },
                               [](const Twisted& t) { return t.base->moment_strip(); }},
                    v_);
}

ComplexMoment UnivariateLaw::fractional_moment(Complex s) const { return truncated_moment(s, -1.0); }

ComplexMoment UnivariateLaw::truncated_moment(Complex s, double lower) const {
  const auto [lo, hi] = moment_strip();
  if (!(s.real() > lo && s.real() < hi)) {
    throw DivergentMomentError("fractional moment: Re(s) outside the finite-moment strip");
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return std::visit(
      Overloaded{
          [&](const Pareto& p) -> ComplexMoment {
            const double l = std::max(lower, p.scale);
            const Complex v = p.alpha * cpow(l, s) * cpow(l / p.scale, Complex(-p.alpha)) / (p.alpha - s);
            return {v, 8 * eps * std::abs(v)};
          },
          [&](const Uniform01&) -> ComplexMoment {
            const double l = std::clamp(lower, 0.0, 1.0);
            const Complex v = (l == 0.0 ? Complex(1.0) : 1.0 - cpow(l, s + 1.0)) / (s + 1.0);
            return {v, 8 * eps * std::abs(v)};
          },
          [&](const TwoAtom& t) -> ComplexMoment {
            Complex v{};
            if (t.low > lower) v += t.low_weight * cpow(t.low, s);
            if (t.high > lower) v += (1.0 - t.low_weight) * cpow(t.high, s);
            return {v, 8 * eps * (std::abs(v) + 1.0)};
          },
          [&](const LogNormal& l) -> ComplexMoment {
            if (lower <= 0.0) {
              const Complex v = std::exp(s * l.mu + 0.5 * s * s * l.sigma * l.sigma);
              return {v, 8 * eps * std::abs(v)};
            }
            const auto q = expect([&](double x) { return cpow(x, s); }, lower, s.imag());
            return {q.value, q.error};
          },
          [&](const Oscillating& o) -> ComplexMoment {
            const Complex v = oscillating_truncated(o, s, lower);
            return {v, 16 * eps * (std::abs(v) + 1.0)};
          },
          [&](const Flattened& f) -> ComplexMoment {
            ComplexMoment m = f.base->truncated_moment(s, std::max(lower, f.cut));
            if (lower < 1.0) m.value += 1.0 - f.base->tail(f.cut);
            return m;
          },
          [&](const AtomMixture& m) -> ComplexMoment {
            ComplexMoment r{};
            for (const auto& at : m.atoms) {
              if (at.location > lower) r.value += at.weight * cpow(at.location, s);
            }
            if (m.base_weight > 0.0) {
              const auto b = m.base->truncated_moment(s, std::max(lower, m.lower));
              const double norm = m.base_weight / m.base->tail(m.lower);
              r.value += norm * b.value;
              r.error += norm * b.error;
            }
            r.error += 8 * eps * (std::abs(r.value) + 1.0);
            return r;
          },
          [&](const Twisted& t) -> ComplexMoment {
            const auto q = t.base->expect(
                [&](double y) { return cpow(y, s) * (1.0 + t.scale * t.kernel(y)); }, lower, s.imag());
            return {q.value, q.error};
          }},
      v_);
}

// ---------------------------------------------------------------------------
// Structure

std::vector<Atom> UnivariateLaw::atoms() const {
  return std::visit(Overloaded{[](const TwoAtom& t) {
                                 return std::vector<Atom>{{t.low, t.low_weight}, {t.high, 1.0 - t.low_weight}};
                               },
                               [](const Flattened& f) {
                                 std::vector<Atom> out{{1.0, 1.0 - f.base->tail(f.cut)}};
                                 for (const auto& at : f.base->atoms()) {
                                   if (at.location > f.cut) out.push_back(at);
                                 }
                                 return merge_atoms(out);
                               },
                               [](const AtomMixture& m) {
                                 std::vector<Atom> out = m.atoms;
                                 if (m.base_weight > 0.0) {
                                   const double norm = m.base_weight / m.base->tail(m.lower);
                                   for (const auto& at : m.base->atoms()) {
                                     if (at.location > m.lower) out.push_back({at.location, norm * at.weight});
                                   }
                                 }
                                 return merge_atoms(out);
                               },
                               [](const Twisted& t) {
                                 std::vector<Atom> out = t.base->atoms();
                                 for (auto& at : out) at.weight *= 1.0 + t.scale * t.kernel(at.location);
                                 return merge_atoms(out);
                               },
                               [](const auto&) { return std::vector<Atom>{}; }},
                    v_);
}

double UnivariateLaw::density(double x) const {
  return std::visit(
      Overloaded{[&](const Pareto& p) {
                   return x <= p.scale ? 0.0 : p.alpha / x * std::pow(x / p.scale, -p.alpha);
                 },
                 [&](const Uniform01&) { return x > 0.0 && x < 1.0 ? 1.0 : 0.0; },
                 [&](const TwoAtom&) { return 0.0; },
                 [&](const LogNormal& l) {
                   if (x <= 0.0) return 0.0;
                   const double z = (std::log(x) - l.mu) / l.sigma;
                   return std::exp(-0.5 * z * z) / (x * l.sigma * std::sqrt(2.0 * M_PI));
                 },
                 [&](const Oscillating& o) {
                   if (x <= 1.0) return 0.0;
                   const auto& p = o.params;
                   return p.modulation(x) * p.alpha * std::pow(x, -p.alpha - 1.0) / o.mass;
                 },
                 [&](const Flattened& f) { return x > f.cut ? f.base->density(x) : 0.0; },
                 [&](const AtomMixture& m) {
                   if (m.base_weight == 0.0 || x <= m.lower) return 0.0;
                   return m.base_weight * m.base->density(x) / m.base->tail(m.lower);
                 },
                 [&](const Twisted& t) {
                   const double d = t.base->density(x);
                   return d == 0.0 ? 0.0 : d * (1.0 + t.scale * t.kernel(x));
                 }},
      v_);
}

std::optional<std::pair<double, double>> UnivariateLaw::continuous_range() const {
  using Range = std::optional<std::pair<double, double>>;
  return std::visit(Overloaded{[](const Pareto& p) -> Range { return std::pair{p.scale, kInf}; },
                               [](const Uniform01&) -> Range { return std::pair{0.0, 1.0}; },
                               [](const TwoAtom&) -> Range { return std::nullopt; },
                               [](const LogNormal&) -> Range { return std::pair{0.0, kInf}; },
                               [](const Oscillating&) -> Range { return std::pair{1.0, kInf}; },
                               [](const Flattened& f) -> Range {
                                 auto r = f.base->continuous_range();
                                 if (!r || r->second <= f.cut) return std::nullopt;
                                 return std::pair{std::max(r->first, f.cut), r->second};
                               },
                               [](const AtomMixture& m) -> Range {
                                 if (m.base_weight == 0.0) return std::nullopt;
                                 auto r = m.base->continuous_range();
                                 if (!r || r->second <= m.lower) return std::nullopt;
                                 return std::pair{std::max(r->first, m.lower), r->second};
                               },
                               [](const Twisted& t) -> Range { return t.base->continuous_range(); }},
                    v_);
}

std::vector<double> UnivariateLaw::breakpoints() const {
  std::vector<double> out = std::visit(
      Overloaded{[](const Pareto& p) { return std::vector<double>{p.scale}; },
                 [](const Uniform01&) { return std::vector<double>{0.0, 1.0}; },
                 [](const TwoAtom& t) { return std::vector<double>{t.low, t.high}; },
                 [](const LogNormal&) { return std::vector<double>{}; },
                 [](const Oscillating&) { return std::vector<double>{1.0}; },
                 [](const Flattened& f) {
                   std::vector<double> b{1.0, f.cut};
                   for (double x : f.base->breakpoints()) {
                     if (x > f.cut) b.push_back(x);
                   }
                   return b;
                 },
                 [](const AtomMixture& m) {
                   std::vector<double> b;
                   for (const auto& at : m.atoms) b.push_back(at.location);
                   if (m.base_weight > 0.0) {
                     b.push_back(m.lower);
                     for (double x : m.base->breakpoints()) {
                       if (x > m.lower) b.push_back(x);
                     }
                   }
                   return b;
                 },
                 [](const Twisted& t) { return t.base->breakpoints(); }},
      v_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SupportHull UnivariateLaw::support() const {
  return std::visit(Overloaded{[](const Pareto& p) { return SupportHull{p.scale, kInf}; },
                               [](const Uniform01&) { return SupportHull{0.0, 1.0}; },
                               [](const TwoAtom& t) { return SupportHull{t.low, t.high}; },
                               [](const LogNormal&) { return SupportHull{0.0, kInf}; },
                               [](const Oscillating&) { return SupportHull{1.0, kInf}; },
                               [](const Flattened& f) { return SupportHull{1.0, f.base->support().upper}; },
                               [](const AtomMixture& m) {
                                 SupportHull h{kInf, -kInf};
                                 for (const auto& at : m.atoms) {
                                   if (at.weight > 0.0) {
                                     h.lower = std::min(h.lower, at.location);
                                     h.upper = std::max(h.upper, at.location);
                                   }
                                 }
                                 if (m.base_weight > 0.0) {
                                   const auto b = m.base->support();
                                   h.lower = std::min(h.lower, std::max(b.lower, m.lower));
                                   h.upper = std::max(h.upper, b.upper);
                                 }
                                 return h;
                               },
                               [](const Twisted& t) { return t.base->support(); }},
                    v_);
}

std::optional<double> UnivariateLaw::tail_index() const {
  return std::visit(Overloaded{[](const Pareto& p) -> std::optional<double> { return p.alpha; },
                               [](const Oscillating& o) -> std::optional<double> { return o.params.alpha; },
                               [](const Flattened& f) { return f.base->tail_index(); },
                               [](const AtomMixture& m) -> std::optional<double> {
                                 if (m.base_weight == 0.0) return std::nullopt;
                                 return m.base->tail_index();
                               },
                               [](const Twisted& t) { return t.base->tail_index(); },
                               [](const auto&) -> std::optional<double> { return std::nullopt; }},
                    v_);
}

// ---------------------------------------------------------------------------
// Expectations

QuadratureResult UnivariateLaw::expect(const std::function<Complex(double)>& f, double lower,
                                       double log_frequency) const {
  QuadratureResult r{};
  for (const auto& at : atoms()) {
    if (at.location > lower) r.value += at.weight * f(at.location);
  }
  const auto range = continuous_range();
  if (!range) return r;
  const double lo = std::max(range->first, lower);
  const double hi = range->second;
  if (!(hi > lo)) return r;

  LogQuadratureOptions opts;
  opts.log_frequency = log_frequency;
  opts.breakpoints = breakpoints();
  if (const auto* l = std::get_if<LogNormal>(&v_)) opts.anchor = std::exp(l->mu);
  const auto q = integrate_log_domain([&](double x) { return f(x) * density(x); }, lo, hi, opts);
  r.value += q.value;
  r.error += q.error;
  return r;
}

double UnivariateLaw::expect_real(const std::function<double(double)>& f, double lower) const {
  return expect([&f](double x) { return Complex(f(x)); }, lower).value.real();
}

// ---------------------------------------------------------------------------
// Kernel

Kernel::Kernel(std::shared_ptr<const UnivariateLaw> reference, std::vector<double> coefficients)
    : reference_(std::move(reference)), coefficients_(std::move(coefficients)) {
  if (!reference_) throw InvalidModelError("kernel: missing reference law");
  // Grid maximum of |p| on [0, 1], refined by golden section around the best cell.
  constexpr int n = 4096;
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i <= n; ++i) {
    const double v = std::abs(at_level(static_cast<double>(i) / n));
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = std::max(0, best - 1) / static_cast<double>(n);
  double b = std::min(n, best + 1) / static_cast<double>(n);
  constexpr double g = 0.6180339887498949;
  for (int it = 0; it < 60; ++it) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (std::abs(at_level(c)) > std::abs(at_level(d))) {
      b = d;
    } else {
      a = c;
    }
  }
  bound_ = std::max(best_v, std::abs(at_level(0.5 * (a + b))));
}

Kernel Kernel::fgm(std::shared_ptr<const UnivariateLaw> reference) {
  return Kernel(std::move(reference), {1.0, -2.0});
}

Kernel Kernel::cdf_polynomial(std::shared_ptr<const UnivariateLaw> reference, std::vector<double> coefficients) {
  if (coefficients.empty()) throw InvalidModelError("kernel: empty coefficient list");
  return Kernel(std::move(reference), std::move(coefficients));
}

double Kernel::at_level(double u) const {
  double v = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) v = v * u + *it;
  return v;
}

double Kernel::operator()(double x) const {
  if (coefficients_.empty()) return 0.0;
  return at_level(reference_->mid_level(x));
}

bool Kernel::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return c == 0.0; });
}

bool Kernel::is_fgm() const { return coefficients_ == std::vector<double>{1.0, -2.0}; }

}  // namespace srisk
