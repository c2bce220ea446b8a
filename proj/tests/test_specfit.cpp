#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "teich/error.hpp"
#include "teich/specfit.hpp"
#include "teich/spherical.hpp"

using namespace teich;
using namespace teich::specfit;

TEST_CASE("eigenvalue to rate") {
  CHECK(eigenvalue_to_rate(0.0) == 0.0);
  CHECK(eigenvalue_to_rate(0.25) == 1.0);
  CHECK(eigenvalue_to_rate(0.16) == doctest::Approx(0.4).epsilon(1e-15));
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double lambda = 0.25 * i / 1000.0;
    const double a = eigenvalue_to_rate(lambda);
    CHECK(std::abs(rate_to_eigenvalue(a) - lambda) <= 1e-14);
    CHECK(a > prev);
    prev = a;
  }
  CHECK_THROWS_AS(eigenvalue_to_rate(-1e-3), DomainError);
  CHECK_THROWS_AS(eigenvalue_to_rate(0.26), DomainError);
  CHECK_THROWS_AS(rate_to_eigenvalue(1.5), DomainError);
}

namespace {
std::vector<double> grid(double a, double b, double h) {
  std::vector<double> g;
  for (int i = 0; a + i * h <= b + 1e-12; ++i) g.push_back(a + i * h);
  return g;
}
}  // namespace

TEST_CASE("single exponential") {
  const auto t = grid(0, 2, 0.25);
  std::vector<double> y;
  for (double s : t) y.push_back(3.0 * std::exp(-0.5 * s));
  const auto fit = fit_exponential_sum(t, y, 1);
  CHECK(std::abs(fit.rates[0] - 0.5) <= 1e-10);
  CHECK(std::abs(fit.coeffs[0] - 3.0) <= 1e-10);
  CHECK(fit.residual <= 1e-12);
}

TEST_CASE("exact recovery of separated sums") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + trial % 3;
    std::vector<double> a, c;
    double next = 0.05 + 0.3 * u(rng);
    for (int i = 0; i < k; ++i) {
      a.push_back(next);
      c.push_back(0.5 + u(rng));
      next += 0.1 + 0.4 * u(rng);
    }
    const auto t = grid(0, 10, 0.1);
    std::vector<double> y;
    for (double s : t) {
      double v = 0;
      for (int i = 0; i < k; ++i) v += c[i] * std::exp(-a[i] * s);
      y.push_back(v);
    }
    const auto fit = fit_exponential_sum(t, y, k);
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(fit.rates[i] - a[i]) <= 1e-8);
      CHECK(std::abs(fit.coeffs[i] - c[i]) <= 1e-8);
    }
  }
}

TEST_CASE("two spherical atoms") {
  const spherical::SphericalFunction f8(spherical::SphericalParam::complementary(0.8));
  const spherical::SphericalFunction f4(spherical::SphericalParam::complementary(0.4));
  const auto t = grid(2, 12, 0.25);
  std::vector<double> y;
  for (double s : t) y.push_back(f8.value(s).real() + 0.5 * f4.value(s).real());
  // phi_s also carries c(-s) e^{-(1+s)t}; for s = 0.4 that term is only
  // e^{-0.8t} below the leading one and pulls a two-term fit off on [2, 12].
  const auto biased = fit_exponential_sum(t, y, 2);
  CHECK(std::abs(biased.rates[1] - 0.6) > 1e-2);
  // A third term absorbs it.
  const auto three = fit_exponential_sum(t, y, 3);
  CHECK(std::abs(three.rates[0] - 0.2) <= 1e-3);
  CHECK(std::abs(three.rates[1] - 0.6) <= 1e-2);
  CHECK(std::abs(three.rates[2] - 1.4) <= 0.1);
  // So does a later window.
  FitOptions late;
  late.t_min = 6.0;
  const auto two = fit_exponential_sum(t, y, 2, late);
  CHECK(std::abs(two.rates[0] - 0.2) <= 1e-2);
  CHECK(std::abs(two.rates[1] - 0.6) <= 1e-2);
  // With four terms both branches of both atoms come out.
  FitOptions later;
  later.t_min = 6.0;
  const auto four = fit_exponential_sum(grid(2, 20, 0.25), [&] {
    std::vector<double> v;
    for (double s : grid(2, 20, 0.25)) v.push_back(f8.value(s).real() + 0.5 * f4.value(s).real());
    return v;
  }(), 4, later);
  CHECK(four.rates[0] == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(four.rates[1] == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(four.rates[2] == doctest::Approx(1.4).epsilon(1e-4));
  CHECK(four.rates[3] == doctest::Approx(1.8).epsilon(1e-3));
  CHECK(four.coeffs[0] == doctest::Approx(f8.c_plus().real()).epsilon(1e-6));
  CHECK(four.coeffs[1] == doctest::Approx(0.5 * f4.c_plus().real()).epsilon(1e-5));
}

TEST_CASE("noisy data") {
  const auto t = grid(0, 15, 0.1);
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
  std::vector<double> y;
  for (double s : t) y.push_back(std::exp(-0.2 * s) + 0.7 * std::exp(-0.6 * s) + noise(rng));
  const auto fit = fit_exponential_sum(t, y, 2);
  CHECK(std::abs(fit.rates[0] - 0.2) <= 5e-2);
  CHECK(std::abs(fit.rates[1] - 0.6) <= 5e-2);
  // Uniform noise of amplitude e has RMS e / sqrt(3).
  const double floor = 1e-3 / std::sqrt(3.0) * std::sqrt(static_cast<double>(t.size()));
  CHECK(fit.residual >= 0.5 * floor);
  CHECK(fit.residual <= 2.0 * floor);
}

TEST_CASE("window and input errors") {
  const auto t = grid(0, 6, 0.25);
  std::vector<double> y;
  for (double s : t) y.push_back(std::exp(-0.3 * s));
  FitOptions w;
  w.t_min = 2.0;
  const auto fit = fit_exponential_sum(t, y, 1, w);
  CHECK(fit.points == 17);
  CHECK(std::abs(fit.rates[0] - 0.3) <= 1e-10);
  CHECK_THROWS_AS(fit_exponential_sum(t, y, 5), InvalidInput);
  CHECK_THROWS_AS(fit_exponential_sum(std::vector<double>(t.begin(), t.begin() + 7),
                                      std::vector<double>(y.begin(), y.begin() + 7), 2),
                  InvalidInput);
  auto bent = t;
  bent[3] += 0.01;
  CHECK_THROWS_AS(fit_exponential_sum(bent, y, 1), InvalidInput);
  // One exponential cannot carry two rates.
  CHECK_THROWS_AS(fit_exponential_sum(t, y, 2), NumericalFailure);
  // Oscillation is not a sum of real decays.
  std::vector<double> osc;
  for (double s : t) osc.push_back(std::exp(-0.1 * s) * std::cos(2.0 * s));
  CHECK_THROWS_AS(fit_exponential_sum(t, osc, 2), NumericalFailure);
}
