#include "teich/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "teich/error.hpp"
#include "teich/lattice.hpp"
#include "teich/quadrature.hpp"

namespace teich {

double systole(const Origami& x, const EnumerationOptions& opt) {
  // Holonomies are lattice vectors, so nothing is shorter than lambda_1.
  double R = shortest_vector_length(x.deformation()) * (1.0 + 1e-9);
  for (int round = 0; round < 64; ++round) {
    auto res = enumerate_saddle_connections(x, R, opt);
    if (!res.complete)
      throw ResourceError("systole: budget exhausted at radius " + std::to_string(R),
                          res.connections.size());
    if (!res.connections.empty()) return res.connections.front().length;
    R *= 2.0;
  }
  throw NumericalFailure("systole: no saddle connection found");
}

double v_delta_from_systole(double sys, double delta) {
  if (!(delta > 0.0 && delta < 0.25)) throw DomainError("v_delta: delta must lie in (0, 1/4)");
  if (!(sys > 0.0)) throw InvalidInput("v_delta: systole must be positive");
  return std::max(std::pow(sys, -(1.0 + delta)), 1.0);
}

double v_delta(const Origami& x, double delta, const EnumerationOptions& opt) {
  if (!(delta > 0.0 && delta < 0.25)) throw DomainError("v_delta: delta must lie in (0, 1/4)");
  return v_delta_from_systole(systole(x, opt), delta);
}

double default_norm_radius(const Origami& x, const EnumerationOptions& opt) {
  return std::max(20.0, 40.0 * systole(x, opt));
}

double norm_on_set(const Cocycle& v, const std::vector<SaddleConnection>& set,
                   const GroupElement& D) {
  double best = 0.0;
  for (const auto& g : set) best = std::max(best, std::abs(evaluate_cocycle(v, g)) / length_under(D, g));
  return best;
}

NormResult agy_norm(const Origami& x, const Cocycle& v, double L, const EnumerationOptions& opt) {
  if (v.origami_id != x.combinatorial_id())
    throw InvalidInput("agy_norm: cocycle belongs to a different origami");
  const double sys = systole(x, opt);
  if (!(L >= 4.0 * sys * (1.0 - 1e-12)))
    throw InvalidInput("agy_norm: truncation radius must be at least 4 sys(x)");
  const auto wide = saddle_connections(x, 2.0 * L, opt);
  NormResult r;
  r.L = L;
  for (const auto& g : wide) {
    const double ratio = std::abs(evaluate_cocycle(v, g)) / g.length;
    if (g.length <= L) {
      ++r.connections;
      if (ratio > r.value) {
        r.value = ratio;
        r.argmax = g.holonomy;
      }
    }
    r.value_at_2L = std::max(r.value_at_2L, ratio);
  }
  r.stabilized = r.value_at_2L - r.value < 1e-9;
  return r;
}

double jacobian_unstable(const Origami& x, double t) {
  return std::exp(static_cast<double>(x.relative_dimension()) * t);
}

PathReport path_norm_bounds(const Origami& x, const GroupElement& A, double T, const Cocycle& v,
                            double L, const PathOptions& opt) {
  if (!(T >= 0.0 && T <= 0.3)) throw InvalidInput("path_norm_bounds: duration must lie in [0, 0.3]");
  if (opt.time_grid < 1) throw InvalidInput("path_norm_bounds: time grid must be positive");
  if (v.origami_id != x.combinatorial_id())
    throw InvalidInput("path_norm_bounds: cocycle belongs to a different origami");
  const auto wide = saddle_connections(x, 2.0 * L, opt.enumeration);
  std::vector<SaddleConnection> set;
  for (const auto& g : wide)
    if (g.length <= L) set.push_back(g);
  PathReport rep;
  rep.connections = set.size();
  if (set.empty()) throw InvalidInput("path_norm_bounds: no saddle connection of length <= L");

  const GroupElement D = x.deformation();
  auto M = [&](double t) { return expm(t * A) * D; };
  // Norm at kappa(t) of the tangent A Phi(kappa(t)) over a set of holonomies.
  auto tangent_norm = [&](double t, const std::vector<SaddleConnection>& s) {
    const GroupElement Mt = M(t);
    const GroupElement AMt = A * Mt;
    double best = 0.0;
    for (const auto& g : s) best = std::max(best, length_under(AMt, g) / length_under(Mt, g));
    return best;
  };
  auto N = [&](double t) { return tangent_norm(t, set); };

  rep.length_bound = T * A.operator_norm();
  rep.tangent_stabilized = tangent_norm(0.0, wide) - N(0.0) < 1e-9;

  const int m = opt.time_grid;
  std::vector<double> grid(static_cast<std::size_t>(m) + 1), cum(grid.size(), 0.0);
  for (int k = 0; k <= m; ++k) grid[static_cast<std::size_t>(k)] = T * k / m;
  for (int k = 1; k <= m && T > 0.0; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const auto r = quad::adaptive(N, grid[uk - 1], grid[uk], 1e-13, 1e-13, 40, 15);
    cum[uk] = cum[uk - 1] + r.value;
  }
  rep.length = cum.back();

  // Per-connection survival bounds on every pair of grid times.
  std::vector<GroupElement> Ms;
  for (double t : grid) Ms.push_back(M(t));
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& g : set) {
    std::vector<double> logs;
    for (const auto& Mt : Ms) logs.push_back(std::log(length_under(Mt, g)));
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        const double margin = (cum[j] - cum[i]) - std::abs(logs[j] - logs[i]);
        ++rep.per_connection_checks;
        rep.worst_margin = std::min(rep.worst_margin, margin);
        if (margin < -opt.log_slack) ++rep.per_connection_violations;
      }
  }

  rep.norm_start = norm_on_set(v, set, Ms.front());
  rep.norm_end = norm_on_set(v, set, Ms.back());
  rep.norm_stabilized = norm_on_set(v, wide, D) - rep.norm_start < 1e-9;
  if (rep.norm_start > 0.0) {
    rep.norm_ratio = rep.norm_end / rep.norm_start;
    const double lr = std::log(rep.norm_ratio);
    rep.ratio_within_bounds = std::abs(lr) <= rep.length + opt.log_slack;
  }
  if (opt.require_stabilized && !(rep.norm_stabilized && rep.tangent_stabilized))
    throw ResourceError("path_norm_bounds: norm not stabilized at L = " + std::to_string(L),
                        set.size());
  return rep;
}

}  // namespace teich
