#pragma once

// Recurrence of the height function under g_t and Monte Carlo correlations
// on the space of unimodular lattices.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teich/origami.hpp"
#include "teich/saddle_connections.hpp"
#include "teich/sl2.hpp"

namespace teich::dynamics {

/// Counter-based generator: the k-th draw of sample i depends only on
/// (seed, i, k), so results do not depend on how samples are split
/// between threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t bits(std::uint64_t index, std::uint64_t k) const;
  /// Uniform on (0, 1).
  double uniform(std::uint64_t index, std::uint64_t k) const;

 private:
  std::uint64_t seed_;
};

/// Systole of a square-tiled surface. Genus-one surfaces go through lattice
/// reduction, the others through saddle connection enumeration.
double fast_systole(const Origami& x, const EnumerationOptions& opt = {});

struct AverageOptions {
  double rel_tol = 1e-3;             // stop doubling when consecutive rules agree
  std::size_t max_nodes = 1 << 12;   // subintervals
  int threads = 1;
  EnumerationOptions enumeration{};
};

struct HorocycleAverage {
  double value = 0.0;
  double error = 0.0;  // difference of the last two trapezoid rules
  std::size_t nodes = 0;
  bool converged = false;
};

/// int_0^1 V_delta(g_t h_r x) dr by the trapezoid rule on n_nodes subintervals,
/// doubled until two rules agree to rel_tol or max_nodes is reached.
HorocycleAverage horocycle_vdelta_average(const Origami& x, double t, double delta,
                                          std::size_t n_nodes = 64,
                                          const AverageOptions& opt = {});

struct RecurrenceProfile {
  std::vector<double> t;
  std::vector<double> average;
  std::vector<double> error;
  std::vector<bool> ok;
  std::vector<std::string> failure;  // empty where ok
  double delta = 0.0;
  double v0 = 0.0;   // V_delta(x)
  double C1 = 0.0, C2 = 0.0;  // avg(t) <= C1 e^{-(1-2 delta) t} v0 + C2, C1 = C2
  bool complete() const;
};

RecurrenceProfile recurrence_profile(const Origami& x, double delta, std::span<const double> t_grid,
                                     std::size_t n_nodes = 64, const AverageOptions& opt = {});

/// Envelope bound C (e^{-(1-2 delta) t} v0 + 1) used by the profile.
double envelope(double C, double delta, double v0, double t);

/// N Haar-random unimodular lattices k_theta * [[y^{-1/2}, x y^{-1/2}], [0, y^{1/2}]]
/// with (x, y) distributed as dx dy / y^2 on the standard fundamental domain.
std::vector<GroupElement> sample_modular_surface(std::size_t N, std::uint64_t seed,
                                                 int threads = 1);

/// The sample of index i alone; sample_modular_surface(N, seed)[i] equals it.
GroupElement modular_sample(const CounterRng& rng, std::uint64_t index);

/// Smooth bump exp(-1 / (1 - u^2)) in the systole, u mapping [lo, hi] to
/// [-1, 1]; or a constant.
struct Observable {
  enum class Kind { bump, constant } kind = Kind::bump;
  double lo = 0.8, hi = 1.0;
  double value = 1.0;  // for constants
  double operator()(double sys) const;
  static Observable bump(double lo, double hi);
  static Observable constant(double c);
};

struct CorrelationSeries {
  std::vector<double> t;
  std::vector<double> estimate;
  std::vector<double> std_error;  // jackknife
  std::size_t N = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;  // (1/N) sum f(Lambda_i)
};

/// (1/N) sum f(L_i) f(g_t L_i) - ((1/N) sum f(L_i))^2 for each t.
CorrelationSeries correlation_mc(const Observable& f, std::span<const double> t_grid,
                                 std::size_t N, std::uint64_t seed, int threads = 1);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_error = 0.0;
  std::size_t points = 0;
};

/// Weighted least squares of log|estimate| against t over t in [t_lo, t_hi],
/// weights from the relative standard errors. Needs two positive points.
SlopeFit log_slope(const CorrelationSeries& series, double t_lo, double t_hi);

}  // namespace teich::dynamics
