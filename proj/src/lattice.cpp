#include "teich/lattice.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "teich/error.hpp"

namespace teich {

namespace {

constexpr double kSlack = 4.0 * std::numeric_limits<double>::epsilon();

double dot(const double* x, const double* y) { return x[0] * y[0] + x[1] * y[1]; }

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

double deformed_length(const GroupElement& D, IVec v) {
  const auto w = D.apply(static_cast<double>(v.p), static_cast<double>(v.q));
  return std::hypot(w[0], w[1]);
}

ReducedBasis lagrange_gauss(const GroupElement& D) {
  if (!(std::abs(D.det()) > 0.0) || !std::isfinite(D.det()))
    throw InvalidInput("lagrange_gauss: singular lattice");
  ReducedBasis r{{1, 0}, {0, 1}, {D.a, D.c}, {D.b, D.d}};
  auto swap_if_needed = [&] {
    if (dot(r.b1, r.b1) > dot(r.b2, r.b2)) {
      std::swap(r.c1, r.c2);
      std::swap(r.b1[0], r.b2[0]);
      std::swap(r.b1[1], r.b2[1]);
    }
  };
  swap_if_needed();
  for (int it = 0; it < 10000; ++it) {
    const double mu = std::round(dot(r.b1, r.b2) / dot(r.b1, r.b1));
    if (mu == 0.0) break;
    const auto m = static_cast<std::int64_t>(mu);
    r.c2 = {r.c2.p - m * r.c1.p, r.c2.q - m * r.c1.q};
    // Recompute from integer coordinates to avoid drift.
    const auto v = D.apply(static_cast<double>(r.c2.p), static_cast<double>(r.c2.q));
    r.b2[0] = v[0];
    r.b2[1] = v[1];
    if (dot(r.b2, r.b2) >= dot(r.b1, r.b1)) break;
    swap_if_needed();
  }
  return r;
}

double shortest_vector_length(const GroupElement& D) {
  const auto r = lagrange_gauss(D);
  return std::sqrt(dot(r.b1, r.b1));
}

std::size_t for_each_lattice_vector(const GroupElement& D, double R,
                                    const std::function<void(IVec)>& f) {
  if (!(R > 0.0)) return 0;
  const auto r = lagrange_gauss(D);
  const double g11 = dot(r.b1, r.b1), g12 = dot(r.b1, r.b2), g22 = dot(r.b2, r.b2);
  const double detg = g11 * g22 - g12 * g12;
  const double R2 = R * R * (1.0 + kSlack);
  // |a b1 + b b2|^2 <= R^2 forces b^2 <= R^2 g11 / det G.
  const auto bmax = static_cast<std::int64_t>(std::floor(std::sqrt(R2 * g11 / detg))) + 1;
  std::size_t visited = 0;
  for (std::int64_t b = -bmax; b <= bmax; ++b) {
    const double bb = static_cast<double>(b);
    const double disc = g12 * g12 * bb * bb - g11 * (g22 * bb * bb - R2);
    if (disc < 0.0) continue;
    const double s = std::sqrt(disc);
    const auto lo = static_cast<std::int64_t>(std::floor((-g12 * bb - s) / g11)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil((-g12 * bb + s) / g11)) + 1;
    for (std::int64_t a = lo; a <= hi; ++a) {
      if (a == 0 && b == 0) continue;
      const IVec v{a * r.c1.p + b * r.c2.p, a * r.c1.q + b * r.c2.q};
      const double len = deformed_length(D, v);
      if (len * len <= R2) {
        ++visited;
        f(v);
      }
    }
  }
  return visited;
}

}  // namespace teich
