#include "teich/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "teich/error.hpp"
#include "teich/quadrature.hpp"

namespace teich::spherical {

namespace {

// Below this |s| the two Harish-Chandra terms cancel catastrophically
// (c(s) and c(-s) both have a pole at s = 0).
constexpr double kSmallS = 1e-4;

std::vector<cplx> recursion(cplx s, int N) {
  std::vector<cplx> g(static_cast<std::size_t>(N) + 1, cplx{0.0, 0.0});
  g[0] = 1.0;
  for (int n = 2; n <= N; n += 2) {
    cplx acc = 0.0;
    for (int k = 1; 2 * k <= n; ++k)
      acc += g[static_cast<std::size_t>(n - 2 * k)] *
             (2.0 * n - 4.0 * k - s + 1.0);
    g[static_cast<std::size_t>(n)] = acc / (static_cast<double>(n) * (static_cast<double>(n) - s));
  }
  return g;
}

struct SeriesSum {
  cplx value, d1, d2;
  bool converged;
};

// sum_n a_n e^{alpha_n t} with alpha_n = base - 2n; derivatives optional.
SeriesSum sum_series(const std::vector<cplx>& a, cplx base, double t, double tol,
                     bool with_derivatives) {
  const double q = std::exp(-2.0 * t);
  SeriesSum out{0.0, 0.0, 0.0, false};
  double qn = 1.0;  // e^{-2nt}
  for (std::size_t n = 0; n < a.size(); ++n, qn *= q) {
    if (n % 2 == 1) continue;
    const cplx term = a[n] * qn;
    const cplx alpha = base - 2.0 * static_cast<double>(n);
    out.value += term;
    if (with_derivatives) {
      out.d1 += alpha * term;
      out.d2 += alpha * alpha * term;
    }
    if (n >= 10) {
      bool small = std::abs(term) <= tol * std::abs(out.value);
      if (with_derivatives) {
        small = small && std::abs(alpha * term) <= tol * std::max(std::abs(out.d1), std::abs(out.value)) &&
                std::abs(alpha * alpha * term) <= tol * std::max(std::abs(out.d2), std::abs(out.value));
      }
      if (small) {
        out.converged = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace

SphericalParam SphericalParam::from(cplx s) {
  const double re = s.real(), im = s.imag();
  if (im == 0.0 && re == 1.0) return {s, Series::trivial};
  if (im == 0.0 && re > 0.0 && re < 1.0) return {s, Series::complementary};
  if (re == 0.0 && im >= 0.0) return {s, Series::principal};
  throw DomainError("not a spherical parameter: s = (" + std::to_string(re) + ", " +
                    std::to_string(im) + ")");
}

double SphericalParam::casimir() const { return ((1.0 - s * s) / 4.0).real(); }

GammaSeries gamma_coeffs(cplx s, int N) {
  if (N < 0) throw InvalidInput("gamma_coeffs: N must be >= 0");
  if (s.real() > 1.0) throw DomainError("gamma_coeffs: requires Re s <= 1");
  return {s, recursion(s, N)};
}

cplx c_function(cplx s) {
  if (is_gamma_pole(s / 2.0)) throw DomainError("c_function: Gamma(s/2) has a pole");
  // Gamma((s+1)/2) infinite: c vanishes.
  if (is_gamma_pole((s + 1.0) / 2.0)) return 0.0;
  const cplx c = std::exp(log_gamma(s / 2.0) - log_gamma((s + 1.0) / 2.0)) /
                  std::sqrt(std::numbers::pi);
  // Real argument: the phase from the reflection branch is rounding only.
  return s.imag() == 0.0 ? cplx{c.real(), 0.0} : c;
}

SphericalFunction::SphericalFunction(SphericalParam p) : param_(p) {
  trivial_ = p.series == Series::trivial;
  if (trivial_) return;
  if (std::abs(p.s) < kSmallS || std::abs(p.s - 1.0) < 1e-9) {
    quadrature_only_ = true;
    return;
  }
  c_plus_ = c_function(p.s);
  c_minus_ = c_function(-p.s);
  plus_ = recursion(p.s, kMaxTerms);
  minus_ = recursion(-p.s, kMaxTerms);
}

cplx SphericalFunction::value(double t, double tol) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("phi: t must be finite and >= 0");
  if (trivial_) return 1.0;
  if (quadrature_only_ || t < kSeriesMinT) return phi_oracle(param_.s, t);
  const cplx s = param_.s;
  const SeriesSum a = sum_series(plus_, s - 1.0, t, tol, false);
  const SeriesSum b = sum_series(minus_, -s - 1.0, t, tol, false);
  const cplx first = c_plus_ * std::exp((s - 1.0) * t) * a.value;
  const cplx second = c_minus_ * std::exp((-s - 1.0) * t) * b.value;
  const cplx out = first + second;
  if (!a.converged || !b.converged)
    throw NumericalFailure("phi: expansion did not converge within 500 terms", out);
  if (param_.series == Series::principal) {
    const double scale = std::abs(first) + std::abs(second);
    const double bound = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon()) * scale;
    if (std::abs(out.imag()) > bound)
      throw NumericalFailure("phi: principal-series value is not real", out);
    return {out.real(), 0.0};
  }
  return out;
}

std::array<cplx, 3> SphericalFunction::derivatives(double t, double tol) const {
  if (trivial_) return {cplx{1.0}, cplx{0.0}, cplx{0.0}};
  if (quadrature_only_) throw DomainError("derivatives: expansion unavailable for this s");
  if (t < kSeriesMinT) throw InvalidInput("derivatives: t below the series range");
  const cplx s = param_.s;
  const SeriesSum a = sum_series(plus_, s - 1.0, t, tol, true);
  const SeriesSum b = sum_series(minus_, -s - 1.0, t, tol, true);
  if (!a.converged || !b.converged)
    throw NumericalFailure("derivatives: expansion did not converge");
  const cplx ea = c_plus_ * std::exp((s - 1.0) * t);
  const cplx eb = c_minus_ * std::exp((-s - 1.0) * t);
  // a.d1 already carries the exponent factor alpha_n of each term.
  return {ea * a.value + eb * b.value, ea * a.d1 + eb * b.d1, ea * a.d2 + eb * b.d2};
}

cplx phi(const SphericalParam& s, double t, double tol) {
  return SphericalFunction(s).value(t, tol);
}

cplx phi_oracle(cplx s, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("phi_oracle: t must be >= 0");
  const cplx expo = (s - 1.0) / 2.0;
  const double up = std::exp(2.0 * t), down = std::exp(-2.0 * t);
  // Folded onto [0, pi/2] by the symmetries theta -> -theta, pi - theta and
  // shifted so that the peak of the integrand sits at 0.
  auto integrand = [&](double th) -> cplx {
    const double sn = std::sin(th), cs = std::cos(th);
    const double base = up * sn * sn + down * cs * cs;
    return std::exp(expo * std::log(base));
  };
  const double half_pi = 0.5 * std::numbers::pi;
  // Graded breakpoints resolve the e^{-2t}-wide peak at 0.
  std::vector<double> cuts{0.0};
  for (double x = down; x < half_pi; x *= 4.0) cuts.push_back(x);
  cuts.push_back(half_pi);
  cplx total = 0.0;
  double err = 0.0;
  const double tol = 1e-12;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double share = tol * (cuts[k + 1] - cuts[k]) / half_pi;
    auto r = quad::adaptive(integrand, cuts[k], cuts[k + 1], share, 0.0, 40, 15);
    if (!r.converged) throw NumericalFailure("phi_oracle: quadrature did not converge", total);
    total += r.value;
    err += r.error;
  }
  (void)err;
  return total * (2.0 / std::numbers::pi);
}

double harish_defect(double s, std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidInput("harish_defect: empty grid");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("harish_defect: s must lie in (0, 1]");
  const SphericalFunction f(SphericalParam::from({s, 0.0}));
  const double c = s == 1.0 ? 1.0 : c_function(s).real();
  double worst = 0.0;
  for (double t : t_grid) {
    const double defect = std::abs(f.value(t) - c * std::exp((s - 1.0) * t));
    worst = std::max(worst, std::exp(t) * defect);
  }
  return worst;
}

double ratner_check(double v, double delta, std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidInput("ratner_check: empty grid");
  if (!(v >= 0.0)) throw DomainError("ratner_check: v must be >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("ratner_check: delta must lie in (0, 1)");
  const SphericalFunction f(SphericalParam::principal(v));
  double worst = 0.0;
  for (double t : t_grid) worst = std::max(worst, std::exp((1.0 - delta) * t) * std::abs(f.value(t)));
  return worst;
}

double casimir_residual(cplx s, double t) {
  if (!(t >= 0.25)) throw InvalidInput("casimir_residual: requires t >= 0.25");
  const SphericalFunction f(SphericalParam::from(s));
  const auto [p0, p1, p2] = f.derivatives(t);
  const double coth = 1.0 / std::tanh(2.0 * t);
  return std::abs(p2 + 2.0 * coth * p1 - (s * s - 1.0) * p0);
}

}  // namespace teich::spherical
