#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace teich::quad {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule; n in [1, 128].
const Rule& gauss_legendre(std::size_t n);

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

template <class F>
auto apply_rule(const Rule& rule, F&& f, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  decltype(f(a)) acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

/// Adaptive bisection with a Gauss-Legendre rule, comparing one panel against
/// its two halves. A panel is accepted when the difference is below its share
/// of abs_tol (proportional to its length) or below rel_tol * |panel value|.
template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
              int max_depth = 60, std::size_t order = 15)
    -> Result<decltype(f(a))> {
  using T = decltype(f(a));
  const Rule& rule = gauss_legendre(order);
  Result<T> out;
  struct Panel {
    double lo, hi;
    T whole;
    int depth;
  };
  std::vector<Panel> stack;
  stack.push_back({a, b, apply_rule(rule, f, a, b), 0});
  out.evaluations += order;
  const double total = b - a;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    const T left = apply_rule(rule, f, p.lo, mid);
    const T right = apply_rule(rule, f, mid, p.hi);
    out.evaluations += 2 * order;
    const T halves = left + right;
    const double diff = std::abs(halves - p.whole);
    const double share = abs_tol * (p.hi - p.lo) / total;
    // Differences at the rounding floor of the panel cannot be improved.
    const double floor = 16.0 * 2.220446049250313e-16 * std::abs(halves);
    if (diff <= share || diff <= rel_tol * std::abs(halves) || diff <= floor ||
        diff < 1e-300) {
      out.value += halves;
      out.error += diff;
      continue;
    }
    if (p.depth >= max_depth) {
      out.value += halves;
      out.error += diff;
      out.converged = false;
      continue;
    }
    stack.push_back({mid, p.hi, right, p.depth + 1});
    stack.push_back({p.lo, mid, left, p.depth + 1});
  }
  return out;
}

/// Fixed composite rule: `panels` equal panels of an `order`-point rule.
template <class F>
auto composite(F&& f, double a, double b, std::size_t panels, std::size_t order = 8) {
  const Rule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  decltype(f(a)) acc{};
  for (std::size_t k = 0; k < panels; ++k)
    acc += apply_rule(rule, f, a + h * static_cast<double>(k),
                      a + h * static_cast<double>(k + 1));
  return acc;
}

/// Pairwise (cascade) summation; result does not depend on thread layout.
double pairwise_sum(std::span<const double> xs);

}  // namespace teich::quad
