#pragma once

// Laplacian eigenvalues to decay rates, and exponential-sum fits of
// correlation data.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace teich::specfit {

/// a = 1 - sqrt(1 - 4 lambda) for lambda in [0, 1/4].
double eigenvalue_to_rate(double lambda);
/// lambda = (2a - a^2) / 4 for a in [0, 1].
double rate_to_eigenvalue(double a);

struct RateTable {
  std::vector<double> rates;   // strictly increasing, rates[0] >= 0
  std::vector<double> coeffs;  // values ~ sum coeffs[i] exp(-rates[i] t)
  double residual = 0.0;       // 2-norm over the fitted window
  std::size_t points = 0;
};

struct FitOptions {
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
  double imag_tol = 1e-6;       // relative imaginary part tolerated in a root
  double max_condition = 1e12;  // of the linear prediction system
  bool refine = true;
};

/// Prony fit (linear prediction, companion matrix roots) followed by a
/// variable projection least squares refinement. The grid must be uniform
/// with at least 4k points inside the window; 1 <= k <= 4.
RateTable fit_exponential_sum(std::span<const double> t, std::span<const double> values, int k,
                              const FitOptions& opt = {});

}  // namespace teich::specfit
