#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "srisk/error.hpp"
#include "srisk/law.hpp"
#include "srisk/tail_stats.hpp"

using namespace srisk;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> pareto_plugin(std::size_t n) {
  // Exact order statistics plug-in: Q(i/(n+1)) = (1 - i/(n+1))^{-1/2}.
  std::vector<double> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(std::pow(1.0 - static_cast<double>(i) / (n + 1.0), -0.5));
  return xs;
}

}  // namespace

TEST_CASE("hill_estimator") {
  SUBCASE("geometric grid 2^j has a closed-form estimate") {
    // log(X_(n-i+1)/X_(n-k)) = (k - i + 1) log 2, summing to k(k+1)/2 log 2.
    std::vector<double> xs;
    for (int j = 1; j <= 200; ++j) xs.push_back(std::ldexp(1.0, j));
    for (std::size_t k : {10u, 37u, 100u}) {
      const auto e = hill_estimator(xs, k);
      CHECK(e.alpha == doctest::Approx(2.0 / ((k + 1.0) * std::log(2.0))).epsilon(1e-13));
      CHECK(e.k == k);
      CHECK(e.n == xs.size());
      CHECK(e.std_error == doctest::Approx(e.alpha / std::sqrt(static_cast<double>(k))));
    }
  }
  SUBCASE("deterministic quantile plug-in recovers the index within 2%") {
    const auto e = hill_estimator(pareto_plugin(100000), 1000);
    CHECK(std::abs(e.alpha - 2.0) < 0.04);
  }
  SUBCASE("scale invariance") {
    const auto xs = pareto_plugin(5000);
    const auto base = hill_estimator(xs, 200);
    for (int p : {-3, 1, 7}) {
      std::vector<double> ys;
      for (double x : xs) ys.push_back(std::ldexp(x, p));
      CHECK(hill_estimator(ys, 200).alpha == base.alpha);
    }
    for (double c : {0.37, 3.0, 1234.5}) {
      std::vector<double> ys;
      for (double x : xs) ys.push_back(c * x);
      CHECK(hill_estimator(ys, 200).alpha == doctest::Approx(base.alpha).epsilon(1e-12));
    }
  }
  SUBCASE("input order does not matter and the caller's data is untouched") {
    auto xs = pareto_plugin(1000);
    const auto copy = xs;
    const auto a = hill_estimator(xs, 50);
    std::vector<double> rev(xs.rbegin(), xs.rend());
    CHECK(hill_estimator(rev, 50).alpha == a.alpha);
    CHECK(xs == copy);
  }
  SUBCASE("hill_plot matches single estimates") {
    const auto xs = pareto_plugin(3000);
    const std::vector<std::size_t> ks{10, 100, 1000};
    const auto plot = hill_plot(xs, ks);
    REQUIRE(plot.size() == 3);
    for (std::size_t i = 0; i < ks.size(); ++i) CHECK(plot[i].alpha == hill_estimator(xs, ks[i]).alpha);
  }
  SUBCASE("errors") {
    const auto xs = pareto_plugin(100);
    CHECK_THROWS_AS(hill_estimator(xs, 9), DomainError);
    CHECK_THROWS_AS(hill_estimator(xs, 51), DomainError);
    std::vector<double> bad = xs;
    bad[3] = 0.0;
    CHECK_THROWS_AS(hill_estimator(bad, 10), DomainError);
    const std::vector<double> ties(100, 2.0);
    CHECK_THROWS_AS(hill_estimator(ties, 10), DegenerateError);
  }
}

TEST_CASE("tail_ratio_diagnostic") {
  SUBCASE("exact Pareto is constant at machine precision") {
    const auto law = UnivariateLaw::pareto(2.0);
    const auto r = tail_ratio_diagnostic([&](double x) { return law->tail(x); }, 2.0, log_grid(1.0, 1e6, 61));
    CHECK(r.verdict == RatioVerdict::Convergent);
    for (const auto& p : r.curve) CHECK(std::abs(p.ratio - 0.25) < 1e-15);
    REQUIRE(r.implied_index.has_value());
    CHECK(*r.implied_index == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(r.warning.has_value());
  }
  SUBCASE("oscillating Pareto oscillates") {
    const auto law = UnivariateLaw::oscillating_pareto({2.0, kPi, 0.5, 0.3});
    const auto r = tail_ratio_diagnostic([&](double x) { return law->tail(x); }, 2.0, log_grid(10.0, 1e4, 301));
    CHECK(r.verdict == RatioVerdict::Oscillating);
    CHECK(r.amplitude >= 0.05);
    CHECK_FALSE(r.implied_index.has_value());
  }
  SUBCASE("exponential tail converges to zero") {
    const auto r = tail_ratio_diagnostic([](double x) { return std::exp(-x); }, 2.0, log_grid(1.0, 500.0, 50));
    CHECK(r.verdict == RatioVerdict::ConvergentToZero);
    CHECK(r.limit < 1e-100);
  }
  SUBCASE("empirical tail warns and drops points where it vanishes") {
    std::vector<double> xs;
    for (int i = 1; i <= 1000; ++i) xs.push_back(static_cast<double>(i));
    const auto r = tail_ratio_diagnostic(xs, 2.0, std::vector<double>{10.0, 100.0, 2000.0});
    REQUIRE(r.warning.has_value());
    CHECK(r.curve.size() == 2);
    CHECK(r.curve[0].ratio == doctest::Approx(980.0 / 990.0));
  }
  SUBCASE("verdicts are deterministic") {
    const auto law = UnivariateLaw::oscillating_pareto({2.0, kPi, 0.5, 0.3});
    const auto grid = log_grid(10.0, 1e4, 101);
    const auto a = tail_ratio_diagnostic([&](double x) { return law->tail(x); }, 2.0, grid);
    const auto b = tail_ratio_diagnostic([&](double x) { return law->tail(x); }, 2.0, grid);
    CHECK(a.amplitude == b.amplitude);
    CHECK(a.verdict == b.verdict);
  }
  CHECK_THROWS_AS(tail_ratio_diagnostic([](double) { return 1.0; }, 0.0, std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(tail_ratio_diagnostic([](double) { return 0.0; }, 2.0, std::vector<double>{1.0}), DegenerateError);
}

TEST_CASE("dominated_variation_check") {
  const auto grid = log_grid(10.0, 1e5, 201);
  SUBCASE("Pareto sup is exactly 4") {
    const auto law = UnivariateLaw::pareto(2.0);
    const auto r = dominated_variation_check([&](double x) { return law->tail(x); }, 0.5, grid);
    CHECK(r.sup == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(r.verdict == DominatedVerdict::InD);
  }
  SUBCASE("oscillating Pareto stays under the crude envelope") {
    const auto law = UnivariateLaw::oscillating_pareto({2.0, kPi, 0.5, 0.3});
    const auto r = dominated_variation_check([&](double x) { return law->tail(x); }, 0.5, grid);
    CHECK(r.sup <= 4.0 * 1.8 / 0.2);
    CHECK(r.sup > 1.0);
    CHECK(r.verdict == DominatedVerdict::InD);
  }
  SUBCASE("lognormal ratio grows") {
    const auto law = UnivariateLaw::lognormal(0.0, 1.0);
    const auto r = dominated_variation_check([&](double x) { return law->tail(x); }, 0.5, log_grid(10.0, 1e8, 200));
    CHECK(r.verdict == DominatedVerdict::NotInD);
    CHECK(r.sup_last_decade > r.sup_previous_decade);
    // Closed-form oracle at the last grid point.
    const double x = 1e8;
    const double oracle = std::erfc(std::log(0.5 * x) / std::sqrt(2.0)) / std::erfc(std::log(x) / std::sqrt(2.0));
    CHECK(r.sup_last_decade == doctest::Approx(oracle).epsilon(1e-9));
  }
  CHECK_THROWS_AS(dominated_variation_check([](double) { return 1.0; }, 1.5, grid), DomainError);
  CHECK_THROWS_AS(dominated_variation_check([](double) { return 1.0; }, 0.5, log_grid(1.0, 50.0, 10)), DomainError);
}

TEST_CASE("log_grid") {
  const auto g = log_grid(1.0, 1e4, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 1e4);
  CHECK(g[2] == doctest::Approx(100.0).epsilon(1e-14));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(log_grid(2.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), DomainError);
}
