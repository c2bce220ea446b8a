#pragma once

// Spherical functions of SL(2,R) along the diagonal flow g_t.
//
// For the spherical representation with parameter s the function
// phi_s(t) = <g_t v, v> solves the radial Casimir equation
//
//     phi'' + 2 coth(2t) phi' = (s^2 - 1) phi,
//
// whose Casimir eigenvalue is (1 - s^2)/4. Two evaluation routes are kept
// deliberately independent: the Harish-Chandra expansion (phi) and a direct
// angular average (phi_oracle).

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "teich/special.hpp"

namespace teich::spherical {

enum class Series { complementary, principal, trivial };

/// Representation parameter s in (0,1] or i[0, inf).
struct SphericalParam {
  cplx s;
  Series series;

  /// Classifies s; throws DomainError if s is not a spherical parameter.
  static SphericalParam from(cplx s);
  static SphericalParam complementary(double u) { return from({u, 0.0}); }
  static SphericalParam principal(double v) { return from({0.0, v}); }

  /// Casimir eigenvalue (1 - s^2)/4.
  double casimir() const;
};

/// Coefficients Gamma_0 .. Gamma_N of the expansion
/// e^{(s-1)t} sum_n Gamma_n(s) e^{-2nt}.
struct GammaSeries {
  cplx s;
  std::vector<cplx> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Gamma_0 = 1, odd coefficients vanish and for even n
///   n (n - s) Gamma_n = sum_{0 < k <= n/2} Gamma_{n-2k} (2n - 4k - s + 1).
/// Throws DomainError for Re s > 1.
GammaSeries gamma_coeffs(cplx s, int N);

/// Harish-Chandra c-function Gamma(s/2) / (sqrt(pi) Gamma((s+1)/2)).
/// Throws DomainError when s/2 is a non-positive integer.
cplx c_function(cplx s);

inline constexpr double kDefaultTol = 1e-15;
inline constexpr double kSeriesMinT = 0.05;
inline constexpr int kMaxTerms = 500;

/// Precomputed expansion data for one parameter. Immutable, so a single
/// instance can be shared by concurrent evaluations.
class SphericalFunction {
 public:
  explicit SphericalFunction(SphericalParam p);

  const SphericalParam& param() const { return param_; }
  cplx c_plus() const { return c_plus_; }
  cplx c_minus() const { return c_minus_; }

  /// phi_s(g_t); series for t >= 0.05, angular quadrature below that.
  cplx value(double t, double tol = kDefaultTol) const;

  /// phi, phi', phi'' by term-wise differentiation of the expansion.
  /// Requires t >= kSeriesMinT and a non-degenerate parameter.
  std::array<cplx, 3> derivatives(double t, double tol = kDefaultTol) const;

  /// True when value() must use the quadrature route for every t.
  bool uses_quadrature_only() const { return quadrature_only_; }

 private:
  SphericalParam param_;
  bool trivial_ = false;
  bool quadrature_only_ = false;
  cplx c_plus_{}, c_minus_{};
  std::vector<cplx> plus_, minus_;  // Gamma_n(s), Gamma_n(-s)
};

/// phi_s(g_t) via the two-series expansion.
cplx phi(const SphericalParam& s, double t, double tol = kDefaultTol);

/// (1/2pi) int_0^{2pi} (e^{2t} cos^2 + e^{-2t} sin^2)^{(s-1)/2} dtheta by
/// adaptive Gauss-Legendre panels, absolute target 1e-12.
cplx phi_oracle(cplx s, double t);

/// max_t e^t |phi(s,t) - c(s) e^{(s-1)t}| over the grid, s in (0, 1].
double harish_defect(double s, std::span<const double> t_grid);

/// max_t e^{(1-delta)t} |phi(iv, t)| over the grid.
double ratner_check(double v, double delta, std::span<const double> t_grid);

/// |phi'' + 2 coth(2t) phi' - (s^2 - 1) phi| for t >= 0.25.
double casimir_residual(cplx s, double t);

}  // namespace teich::spherical
