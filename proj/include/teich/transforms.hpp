#pragma once

// Laplace transforms of spherical correlations, their meromorphic extension
// past Re z = 0, contour residues and Cauchy transforms of measures on [0,1].

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "teich/error.hpp"
#include "teich/special.hpp"

namespace teich::transforms {

struct Estimate {
  cplx value;
  double error = 0.0;
};

struct Atom {
  double s;  // in (0, 1]
  double w;  // >= 0
};

/// Discrete spectral measure: atoms with strictly increasing s_i.
class SpectralAtoms {
 public:
  SpectralAtoms() = default;
  /// Throws InvalidInput unless s_i in (0,1] strictly increasing, w_i >= 0.
  explicit SpectralAtoms(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

 private:
  std::vector<Atom> atoms_;
};

/// Laplace transform of a correlation given as a callable with
/// |corr(t)| <= bound for all t >= 0. Requires Re z >= 0.05.
Estimate laplace_numeric(const std::function<double(double)>& corr, cplx z,
                         double bound = 1.0);

/// Laplace transform of samples corr(k*dt), k = 0..N-1, linearly
/// interpolated. Throws NumericalFailure when the samples end before the
/// tail bound drops below 1e-14.
Estimate laplace_numeric(std::span<const double> samples, double dt, cplx z,
                         double bound = 1.0);

/// sum_{s_i >= delta} c(s_i) w_i / (z - s_i + 1). PoleError at z = s_i - 1.
cplx b_delta(const SpectralAtoms& atoms, cplx z, double delta);

/// A_delta(z) + B_delta(z): the continuation of int e^{-zt} C(t) dt with
/// C(t) = sum w_i phi_{s_i}(t) to Re z > -1 + 2 delta.
cplx extended_F(const SpectralAtoms& atoms, cplx z, double delta);

/// Same as extended_F with the quadrature error estimate of A_delta.
Estimate extended_F_estimate(const SpectralAtoms& atoms, cplx z, double delta);

namespace detail {
template <class T>
double magnitude(const T& x) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::abs(x);
  } else if constexpr (std::is_same_v<T, cplx>) {
    return std::abs(x);
  } else {
    return x.norm();
  }
}
}  // namespace detail

template <class T>
struct ContourResult {
  T value;
  double error;
  std::size_t nodes;
};

/// (1/(2 pi i)) times the integral of f over the circle |z - z0| = radius, by
/// the trapezoid rule. The node count doubles from n_nodes until two
/// consecutive estimates differ by at most tol (absolute, or relative to the
/// value when that is larger than 1). Works for scalar and matrix valued f.
template <class F>
auto residue_contour(F&& f, cplx z0, double radius, std::size_t n_nodes = 32,
                     double tol = 1e-10, std::size_t max_nodes = 1 << 15)
    -> ContourResult<std::decay_t<decltype(f(z0))>> {
  using T = std::decay_t<decltype(f(z0))>;
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidInput("residue_contour: radius must be positive");
  if (n_nodes < 4) throw InvalidInput("residue_contour: need at least 4 nodes");
  const double two_pi = 2.0 * std::numbers::pi;
  // Sum of f(z_k)(z_k - z0) over the nodes k*step + offset.
  auto node_sum = [&](std::size_t n, std::size_t stride, std::size_t first) {
    T acc = f(z0 + radius * std::polar(1.0, two_pi * static_cast<double>(first) / n)) *
            (radius * std::polar(1.0, two_pi * static_cast<double>(first) / n));
    for (std::size_t k = first + stride; k < n; k += stride) {
      const cplx dz = radius * std::polar(1.0, two_pi * static_cast<double>(k) / n);
      acc += f(z0 + dz) * dz;
    }
    return acc;
  };
  std::size_t n = n_nodes;
  T sum = node_sum(n, 1, 0);
  T prev = sum / static_cast<double>(n);
  while (true) {
    // New nodes of the doubled rule sit at the odd indices.
    sum += node_sum(2 * n, 2, 1);
    n *= 2;
    T cur = sum / static_cast<double>(n);
    const double diff = detail::magnitude(T(cur - prev));
    const double scale = std::max(1.0, detail::magnitude(cur));
    if (diff <= tol * scale) return {cur, diff, n};
    if (2 * n > max_nodes) {
      throw NumericalFailure("residue_contour: no agreement after " + std::to_string(n) +
                                 " nodes (difference " + std::to_string(diff) + ")",
                             [&] {
                               if constexpr (std::is_same_v<T, cplx>) return cur;
                               else return cplx{};
                             }());
    }
    prev = std::move(cur);
  }
}

/// Nonnegative measure on [0,1]: atoms plus a piecewise-constant density.
class MeasureOnInterval {
 public:
  struct PointMass {
    double x, mass;
  };

  MeasureOnInterval() = default;
  /// breaks: 0 = b_0 < ... < b_K = 1, density has K nonnegative entries
  /// (both may be empty for a purely atomic measure).
  MeasureOnInterval(std::vector<PointMass> atoms, std::vector<double> breaks,
                    std::vector<double> density);

  static MeasureOnInterval uniform(double total_mass = 1.0);
  static MeasureOnInterval dirac(double x, double mass = 1.0);
  /// Sum of two measures (breakpoints merged).
  MeasureOnInterval operator+(const MeasureOnInterval& other) const;
  MeasureOnInterval scaled(double factor) const;

  std::span<const PointMass> atoms() const { return atoms_; }
  std::span<const double> breaks() const { return breaks_; }
  std::span<const double> density() const { return density_; }
  double total_mass() const;
  /// Density value on the piece containing s (0 outside [0,1]).
  double density_at(double s) const;

 private:
  std::vector<PointMass> atoms_;
  std::vector<double> breaks_;
  std::vector<double> density_;
};

/// int d nu(s) / (z - s + 1); atoms summed, density pieces in closed form.
cplx cauchy_transform(const MeasureOnInterval& nu, cplx z);

/// Limit as y -> 0 of -(y/2) Im(F(x-1+iy) - F(x-1-iy)), which is nu({x}).
/// The ladder must be strictly decreasing and positive; the limit is taken
/// by polynomial extrapolation to 0 on the last (up to) five rungs.
double atom_mass(const MeasureOnInterval& nu, double x, std::span<const double> y_ladder);

/// y_k = y0 * 2^{-k}, k = 0..levels-1.
std::vector<double> geometric_ladder(double y0 = 0.05, int levels = 12);

}  // namespace teich::transforms
