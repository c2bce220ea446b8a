#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "teich/error.hpp"
#include "teich/spherical.hpp"

using namespace teich;
using namespace teich::spherical;

namespace {

// mpmath: Legendre P_{(s-1)/2}(cosh 2t) and an independent mpmath.quad of
// the angular average agree to 1e-39 on every entry
// (tests/oracles/spherical_oracles.py).
struct PhiRef {
  double s_re, s_im, t, value;
};
constexpr PhiRef kPhi[] = {
    {0.5, 0, 0.5, 0.95547512139966271557},    {0.5, 0, 2.0, 0.57613905702937704243},
    {0.5, 0, 8.0, 0.030568761119932615873},   {0.1, 0, 0.5, 0.94144449757113507263},
    {0.1, 0, 2.0, 0.46832878420820411413},    {0.1, 0, 8.0, 0.0041831842354067642865},
    {0.95, 0, 0.5, 0.99415321250228647349},   {0.95, 0, 2.0, 0.93672394405726601365},
    {0.95, 0, 8.0, 0.6946998049713339576},    {0, 0.5, 0.5, 0.92636254299592073512},
    {0, 0.5, 2.0, 0.36482677725406354762},    {0, 0.5, 8.0, -0.00086170314985974496054},
    {0, 2.0, 0.5, 0.72207522827937457342},    {0, 2.0, 2.0, -0.15274739023778229534},
    {0, 2.0, 8.0, -0.00030745983557426089523}, {0.7, 0, 0.5, 0.96961074901841358223},
    {0.7, 0, 2.0, 0.69671003017541338724},    {0.7, 0, 8.0, 0.11714033335020006486},
    {0, 0, 0.5, 0.94086215924934981862},      {0, 0, 2.0, 0.46409929404960529806},
    {0, 0, 8.0, 0.0037130542619542801165},
};

struct CRef {
  double s, value;
};
constexpr CRef kC[] = {
    {0.5, 1.6692536833481463726},  {-0.5, -0.76275976350181318806},
    {0.6, 1.449724260959791115},   {0.4, 1.9953742624534900472},
    {0.8, 1.1710919861624653114},  {-0.4, -1.097829065690924407},
    {-0.8, -0.22078784747234216138}, {0.25, 2.9630641512703333282},
};

std::vector<double> integer_grid(int lo, int hi) {
  std::vector<double> g;
  for (int t = lo; t <= hi; ++t) g.push_back(t);
  return g;
}

}  // namespace

TEST_CASE("Gamma_n recursion") {
  const auto g = gamma_coeffs(0.5, 6);
  CHECK(g.coeffs[0] == cplx{1.0});
  CHECK(g.coeffs[1] == cplx{0.0});
  CHECK(g.coeffs[3] == cplx{0.0});
  CHECK(g.coeffs[5] == cplx{0.0});
  // 2 (2 - 1/2) Gamma_2 = (1 - 1/2)
  CHECK(std::abs(g.coeffs[2] - 1.0 / 6.0) < 1e-16);
  // n = 4: 4 (4 - s) G4 = G2 (8 - 4 - s + 1) + G0 (8 - 8 - s + 1)
  const cplx s = {0.3, 0.7};
  const auto h = gamma_coeffs(s, 4);
  const cplx g2 = (1.0 - s) / (2.0 * (2.0 - s));
  const cplx g4 = (g2 * (5.0 - s) + (1.0 - s)) / (4.0 * (4.0 - s));
  CHECK(std::abs(h.coeffs[2] - g2) < 1e-15);
  CHECK(std::abs(h.coeffs[4] - g4) < 1e-15);
  for (double x : {0.2, -0.7, 1.0})
    CHECK(gamma_coeffs(x, 0).coeffs[0] == cplx{1.0});
  CHECK_THROWS_AS(gamma_coeffs(1.2, 4), DomainError);
  CHECK_THROWS_AS(gamma_coeffs(0.5, -1), InvalidInput);
}

TEST_CASE("Gamma_n grow subexponentially") {
  for (double s : {0.2, -0.2, 0.5, -0.5, 0.9, -0.9}) {
    const auto g = gamma_coeffs(s, 400);
    double worst = 0.0;
    for (int n = 100; n <= 400; ++n)
      worst = std::max(worst, std::pow(std::abs(g.coeffs[n]), 1.0 / n));
    CAPTURE(s);
    CHECK(worst <= 1.05);
  }
}

TEST_CASE("c-function") {
  CHECK(std::abs(c_function(1.0) - 1.0) < 1e-15);
  for (const auto& r : kC) {
    CAPTURE(r.s);
    CHECK(std::abs(c_function(r.s).real() - r.value) <= 1e-12 * std::abs(r.value));
    CHECK(c_function(r.s).imag() == 0.0);
  }
  const cplx ci = c_function({0.0, 2.0});
  CHECK(std::abs(ci - cplx{0.34359140992945207584, -0.44882725456241559345}) < 1e-13);
  CHECK(std::abs(c_function(-1.0)) == 0.0);
  CHECK_THROWS_AS(c_function(0.0), DomainError);
  CHECK_THROWS_AS(c_function(-2.0), DomainError);
}

TEST_CASE("spherical parameter classes") {
  CHECK(SphericalParam::from(1.0).series == Series::trivial);
  CHECK(SphericalParam::from(0.3).series == Series::complementary);
  CHECK(SphericalParam::from({0.0, 2.0}).series == Series::principal);
  CHECK(SphericalParam::from(0.0).series == Series::principal);
  CHECK(SphericalParam::from(0.6).casimir() == doctest::Approx(0.16));
  CHECK(SphericalParam::principal(1.0).casimir() == doctest::Approx(0.5));
  CHECK(SphericalParam::from(1.0).casimir() == 0.0);
  CHECK_THROWS_AS(SphericalParam::from(1.5), DomainError);
  CHECK_THROWS_AS(SphericalParam::from({0.2, 0.3}), DomainError);
}

TEST_CASE("phi and phi_oracle against the Legendre reference table") {
  for (const auto& r : kPhi) {
    const auto p = SphericalParam::from({r.s_re, r.s_im});
    CAPTURE(r.s_re);
    CAPTURE(r.s_im);
    CAPTURE(r.t);
    CHECK(std::abs(phi(p, r.t) - r.value) <= 1e-12);
    CHECK(std::abs(phi_oracle(p.s, r.t) - r.value) <= 1e-12);
  }
}

TEST_CASE("phi special values") {
  for (double t : {0.0, 0.3, 2.0, 17.0})
    CHECK(phi(SphericalParam::from(1.0), t) == cplx{1.0});
  CHECK(phi_oracle(1.0, 3.0).real() == doctest::Approx(1.0).epsilon(1e-14));
  for (cplx s : {cplx{0.1}, cplx{0.5}, cplx{0.95}, cplx{0, 0.5}, cplx{0, 2}}) {
    CHECK(std::abs(phi(SphericalParam::from(s), 0.0) - 1.0) <= 1e-10);
    CHECK(std::abs(phi_oracle(s, 0.0) - 1.0) <= 1e-14);
  }
  // Frozen regression constant for the oracle: two independent mpmath routes.
  CHECK(std::abs(phi_oracle(0.5, 2.0) - 0.57613905702937704243) <= 1e-11);
  CHECK(std::abs(phi(SphericalParam::from(0.5), 2.0) - phi_oracle(0.5, 2.0)) <= 1e-10);
  CHECK_THROWS_AS(phi(SphericalParam::from(0.5), -1.0), InvalidInput);
}

TEST_CASE("series and quadrature agree across parameters") {
  for (cplx s : {cplx{0.05}, cplx{0.3}, cplx{0.62}, cplx{0.99}, cplx{0, 0.01}, cplx{0, 1},
                 cplx{0, 7}}) {
    const SphericalFunction f(SphericalParam::from(s));
    for (double t = 0.5; t <= 10.0; t += 0.5) {
      CAPTURE(s);
      CAPTURE(t);
      CHECK(std::abs(f.value(t) - phi_oracle(s, t)) <= 1e-8);
      if (s.real() == 0.0) CHECK(f.value(t).imag() == 0.0);
    }
  }
}

TEST_CASE("radial Casimir equation pinned by finite differences of the oracle") {
  // Centered differences of the quadrature route, step 1e-3, independent of
  // the expansion. Candidate radial operators: only phi'' + 2 coth(2t) phi'
  // with eigenvalue s^2 - 1 annihilates the oracle.
  const double h = 1e-3;
  for (cplx s : {cplx{0.3}, cplx{0.7}, cplx{0, 1}}) {
    for (double t : {1.0, 2.0, 3.5}) {
      const cplx f0 = phi_oracle(s, t), fp = phi_oracle(s, t + h), fm = phi_oracle(s, t - h);
      const cplx d1 = (fp - fm) / (2 * h), d2 = (fp - 2.0 * f0 + fm) / (h * h);
      const double coth2 = 1.0 / std::tanh(2 * t);
      const double pinned = std::abs(d2 + 2.0 * coth2 * d1 - (s * s - 1.0) * f0);
      const double wrong_drift = std::abs(d2 + (1.0 / std::tanh(t)) * d1 - (s * s - 1.0) * f0);
      const double wrong_scale = std::abs(d2 + 2.0 * coth2 * d1 - (s * s - 1.0) / 4.0 * f0);
      CAPTURE(s);
      CAPTURE(t);
      CHECK(pinned <= 1e-6);
      CHECK(wrong_drift > 1e-3 * std::abs(f0));
      CHECK(wrong_scale > 1e-3 * std::abs(f0));
    }
  }
}

TEST_CASE("casimir residual of the expansion") {
  CHECK(casimir_residual(1.0, 2.0) == 0.0);
  CHECK(casimir_residual(0.7, 2.0) <= 1e-6);
  CHECK(casimir_residual({0.0, 1.0}, 3.0) <= 1e-6);
  for (double t = 1.0; t <= 6.0; t += 0.5) {
    CHECK(casimir_residual(0.3, t) <= 1e-10);
    CHECK(casimir_residual({0.0, 1.0}, t) <= 1e-10);
  }
  CHECK_THROWS_AS(casimir_residual(0.7, 0.1), InvalidInput);
}

TEST_CASE("derivatives match differences of the series") {
  const SphericalFunction f(SphericalParam::from(0.45));
  const double t = 1.3, h = 1e-4;
  const auto d = f.derivatives(t);
  CHECK(std::abs(d[0] - f.value(t)) < 1e-14);
  CHECK(std::abs(d[1] - (f.value(t + h) - f.value(t - h)) / (2 * h)) < 1e-8);
  CHECK(std::abs(d[2] - (f.value(t + h) - 2.0 * f.value(t) + f.value(t - h)) / (h * h)) < 1e-5);
}

TEST_CASE("Harish defect") {
  CHECK(harish_defect(1.0, integer_grid(1, 15)) == 0.0);
  const auto grid = integer_grid(1, 15);
  const double d = harish_defect(0.5, grid);
  CHECK(std::isfinite(d));
  // Beyond the maximizer the restricted maximum does not increase.
  double prev = INFINITY;
  for (int lo = 3; lo <= 15; ++lo) {
    const double dl = harish_defect(0.5, integer_grid(lo, 15));
    CHECK(dl <= prev * (1 + 1e-12));
    prev = dl;
  }
  // Leading term of the defect: c(-s) e^{(-s-1)t} (1 + Gamma_2(-s) e^{-4t}).
  const double s = 0.5, t = 5.0;
  const double g2 = gamma_coeffs(-s, 2).coeffs[2].real();
  const double lead = std::exp(t) * std::abs(c_function(-s).real() * std::exp((-s - 1) * t) *
                                             (1 + g2 * std::exp(-4 * t)));
  const double single[] = {t};
  CHECK(harish_defect(s, single) == doctest::Approx(lead).epsilon(0.10));
  CHECK_THROWS_AS(harish_defect(0.5, {}), InvalidInput);
}

TEST_CASE("Ratner decay") {
  const auto grid = integer_grid(1, 15);
  // v = 0: e^{0.9t}|phi| ~ t e^{-0.1t}, interior maximum.
  const SphericalFunction f0(SphericalParam::principal(0.0));
  std::vector<double> seq;
  for (double t : grid) seq.push_back(std::exp(0.9 * t) * std::abs(f0.value(t)));
  const auto it = std::max_element(seq.begin(), seq.end());
  CHECK(it != seq.begin());
  CHECK(it != seq.end() - 1);
  CHECK(seq.back() < *it);
  CHECK(ratner_check(0.0, 0.1, grid) == doctest::Approx(*it));

  const double at1[] = {1.0};
  CHECK(ratner_check(5.0, 0.1, grid) <= 2.0 * ratner_check(5.0, 0.1, at1));
  const double at0[] = {0.0};
  CHECK(ratner_check(3.0, 0.1, at0) == doctest::Approx(1.0).epsilon(1e-10));
}
