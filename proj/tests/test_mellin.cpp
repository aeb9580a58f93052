#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "srisk/counterexample.hpp"
#include "srisk/error.hpp"
#include "srisk/mellin.hpp"
#include "srisk/sarmanov.hpp"
#include "srisk/tail_stats.hpp"

using namespace srisk;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kE = std::exp(1.0);

LawPtr pareto2() { return UnivariateLaw::pareto(2.0); }

}  // namespace

TEST_CASE("twisted_mellin") {
  const auto G = UnivariateLaw::uniform01();
  CHECK(twisted_mellin(SarmanovModel::independent(pareto2(), G), 2.0, 0.0).value.real() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const auto fgm = SarmanovModel::fgm(pareto2(), G, 0.5);
  const auto v = twisted_mellin(fgm, 2.0, 0.0).value;
  CHECK(v.real() == doctest::Approx(5.0 / 12.0).epsilon(1e-14));
  CHECK(std::abs(v.imag()) < 1e-15);
  CHECK(v.real() == doctest::Approx(twist(fgm)->fractional_moment(2.0).value.real()).epsilon(1e-10));
  const auto zero_model = SarmanovModel::independent(pareto2(), build_vanishing_mellin_law(2.0, kPi));
  CHECK(std::abs(twisted_mellin(zero_model, 2.0, kPi).value) < 1e-12);
  CHECK_THROWS_AS(twisted_mellin(SarmanovModel::independent(pareto2(), pareto2()), 2.0, 0.0), DivergentMomentError);
}

TEST_CASE("twisted_mellin equals the twisted law's moment on two code paths") {
  const std::vector<SarmanovModel> models{
      SarmanovModel::fgm(pareto2(), UnivariateLaw::uniform01(), 0.5),
      SarmanovModel::fgm(pareto2(), UnivariateLaw::uniform01(), -0.8),
      SarmanovModel::fgm(pareto2(), UnivariateLaw::lognormal(-0.5, 0.4), 0.7),
      SarmanovModel::fgm(pareto2(), UnivariateLaw::two_atom(0.5, 0.3, 1.2), -0.6),
  };
  for (const auto& model : models) {
    const auto t = twist(model);
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
      for (double beta : {0.0, 0.7, 3.0, 15.0, 40.0}) {
        CAPTURE(alpha);
        CAPTURE(beta);
        const Complex a = twisted_mellin(model, alpha, beta).value;
        const Complex b = t->fractional_moment(Complex(alpha, beta)).value;
        CHECK(std::abs(a - b) < 1e-10);
      }
    }
  }
}

TEST_CASE("geometric_mellin_sum") {
  const auto G = UnivariateLaw::uniform01();
  CHECK(geometric_mellin_sum(*G, 2.0, 0.0, Horizon::finite(2)).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(geometric_mellin_sum(*G, 2.0, 0.0, Horizon::infinite()).real() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(geometric_mellin_sum(*G, 2.0, 0.0, Horizon::finite(1)) == Complex(1.0, 0.0));
  CHECK(geometric_mellin_sum(*build_vanishing_mellin_law(2.0, kPi), 2.0, 0.3, Horizon::finite(1)) == Complex(1.0, 0.0));
  const Complex z = 1.0 / (3.0 + Complex(0.0, 2.0));
  CHECK(std::abs(geometric_mellin_sum(*G, 2.0, 2.0, Horizon::finite(5)) - (1.0 - std::pow(z, 5)) / (1.0 - z)) < 1e-14);
  CHECK_THROWS_AS(geometric_mellin_sum(*UnivariateLaw::point_mass(2.0), 2.0, 0.0, Horizon::infinite()),
                  DivergentMomentError);
}

TEST_CASE("scan_nonvanishing") {
  SUBCASE("uniform moments have no zero and the closed-form minimum") {
    const auto G = UnivariateLaw::uniform01();
    const auto scan = scan_nonvanishing([&](double b) { return G->fractional_moment(Complex(2.0, b)).value; }, 2.0, 50.0);
    CHECK(scan.zeros.empty());
    CHECK(std::abs(scan.min_modulus - 1.0 / std::sqrt(2509.0)) < 1e-6);
    CHECK(std::abs(scan.argmin_beta) == doctest::Approx(50.0));
    double m = 1e300;
    for (double v : scan.moduli) m = std::min(m, v);
    CHECK(m == scan.min_modulus);
    // Conjugate symmetry on the shared grid.
    for (std::size_t i = 0; i < scan.betas.size(); ++i) {
      const std::size_t j = scan.betas.size() - 1 - i;
      if (scan.betas[i] == -scan.betas[j]) CHECK(scan.moduli[i] == scan.moduli[j]);
    }
  }
  SUBCASE("the vanishing two-atom law has zeros at plus and minus pi") {
    const auto G = build_vanishing_mellin_law(2.0, kPi);
    const auto scan = scan_nonvanishing([&](double b) { return G->fractional_moment(Complex(2.0, b)).value; }, 2.0, 5.0);
    REQUIRE(scan.zeros.size() == 2);
    CHECK(std::abs(scan.zeros[0].beta + kPi) < 1e-6);
    CHECK(std::abs(scan.zeros[1].beta - kPi) < 1e-6);
    for (const auto& z : scan.zeros) CHECK(z.modulus < 1e-10);
  }
  SUBCASE("a wide scan finds every odd multiple of pi") {
    const auto G = build_vanishing_mellin_law(2.0, kPi);
    const auto scan = scan_nonvanishing([&](double b) { return G->fractional_moment(Complex(2.0, b)).value; }, 2.0, 50.0);
    REQUIRE(scan.zeros.size() == 16);
    for (std::size_t j = 0; j < 8; ++j) {
      const double expected = (2.0 * j + 1.0) * kPi;
      CHECK(std::abs(scan.zeros[8 + j].beta - expected) < 1e-9);
      CHECK(std::abs(scan.zeros[7 - j].beta + expected) < 1e-9);
      CHECK(scan.zeros[8 + j].modulus < 1e-10);
    }
  }
  SUBCASE("a positive smooth minimum is not polished into a zero") {
    const auto scan = scan_nonvanishing([](double b) { return Complex(1e-9 + (b - 1.0) * (b - 1.0), 0.0); }, 1.0, 3.0);
    CHECK(scan.zeros.empty());
    CHECK(scan.min_modulus == doctest::Approx(1e-9).epsilon(1e-3));
  }
  SUBCASE("constant transform") {
    const auto scan = scan_nonvanishing([](double) { return Complex(1.0, 0.0); }, 1.0, 10.0);
    CHECK(scan.min_modulus == 1.0);
    CHECK(scan.zeros.empty());
  }
  SUBCASE("worker count does not change the result") {
    const auto G = UnivariateLaw::lognormal(0.0, 0.5);
    auto f = [&](double b) { return G->fractional_moment(Complex(1.0, b)).value; };
    ScanOptions serial;
    ScanOptions parallel;
    parallel.workers = 3;
    const auto a = scan_nonvanishing(f, 1.0, 20.0, serial);
    const auto b = scan_nonvanishing(f, 1.0, 20.0, parallel);
    CHECK(a.betas == b.betas);
    CHECK(a.moduli == b.moduli);
  }
  CHECK_THROWS_AS(scan_nonvanishing([](double) { return Complex(1.0); }, 1.0, 0.0), DomainError);
  CHECK(default_beta_max(2.0) == 50.0);
}

TEST_CASE("mult_convolution_tail") {
  const auto nu = pareto2();
  CHECK(mult_convolution_tail(*nu, UnivariateLaw::point_mass(1.0), 2.0) == doctest::Approx(0.25).epsilon(1e-15));
  const auto U = UnivariateLaw::uniform01();
  CHECK(mult_convolution_tail(*nu, U, 2.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  for (double x : {1.0, 3.0, 50.0, 1e4}) CHECK(mult_convolution_tail(*nu, U, x) * x * x == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
  // Below 1: int_0^x (u/x)^2 du + (1 - x).
  for (double x : {0.1, 0.5, 0.9}) CHECK(mult_convolution_tail(*nu, U, x) == doctest::Approx(x / 3.0 + 1.0 - x).epsilon(1e-11));
  const auto G = build_vanishing_mellin_law(2.0, kPi);
  const double p1 = kE * kE / (1.0 + kE * kE);
  for (double x : {kE, 10.0, 400.0}) {
    CHECK(mult_convolution_tail(*nu, G, x) == doctest::Approx((p1 + (1.0 - p1) * kE * kE) / (x * x)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(mult_convolution_tail(*nu, U, 0.0), DomainError);
  CHECK_THROWS_AS(mult_convolution_tail(*nu, U, -1.0), DomainError);
}

TEST_CASE("mult_convolution_tail: monotone, bounded and Breiman-type limit") {
  const auto nu = pareto2();
  const auto rho = UnivariateLaw::lognormal(0.0, 0.5);
  const double limit = std::exp(2.0 * 0.5 * 0.5);  // E[Y^2] = exp(2 mu + 2 sigma^2)
  double prev = 1.0;
  for (double x : log_grid(0.01, 1e5, 60)) {
    const double t = mult_convolution_tail(*nu, rho, x);
    CHECK(t <= prev + 1e-14);
    CHECK(t <= 1.0);
    prev = t;
    if (x >= 1e3) CHECK(t * x * x == doctest::Approx(limit).epsilon(0.01));
  }
}

TEST_CASE("product_power_measure") {
  const auto G = UnivariateLaw::two_atom(0.5, 0.4, 1.5);
  const auto rho = product_power_measure(G, 3);
  CHECK(rho.components.size() == 3);
  CHECK(rho.total_mass() == 3.0);
  // Far out the tail is x^-2 sum_{k<3} E[Y^2]^k.
  const double m = 0.4 * 0.25 + 0.6 * 2.25;
  const double x = 1e3;
  CHECK(mult_convolution_tail(*pareto2(), rho, x) * x * x == doctest::Approx(1.0 + m + m * m).epsilon(1e-13));
  CHECK_THROWS_AS(product_power_measure(UnivariateLaw::uniform01(), 2), DomainError);
}
