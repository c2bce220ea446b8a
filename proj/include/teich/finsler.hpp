#pragma once

// Systole, the height function V_delta and the saddle-connection (AGY)
// Finsler norm on the GL+(2,R) orbit of a square-tiled surface.

#include <cstddef>

#include "teich/cocycle.hpp"
#include "teich/origami.hpp"
#include "teich/saddle_connections.hpp"

namespace teich {

/// Length of the shortest saddle connection. The search radius starts at
/// the shortest vector of deformation * Z^2 and doubles until a connection
/// is found. Throws ResourceError on budget exhaustion.
double systole(const Origami& x, const EnumerationOptions& opt = {});

/// max(sys^{-(1+delta)}, 1); delta must lie in (0, 1/4).
double v_delta_from_systole(double sys, double delta);
double v_delta(const Origami& x, double delta, const EnumerationOptions& opt = {});

struct NormResult {
  double value = 0.0;       // max over connections of length <= L
  bool stabilized = false;  // value at 2L differs by < 1e-9
  double value_at_2L = 0.0;
  double L = 0.0;
  std::size_t connections = 0;
  IVec argmax;  // base holonomy of a maximizing connection
};

/// Default truncation radius max(20, 40 sys).
double default_norm_radius(const Origami& x, const EnumerationOptions& opt = {});

/// sup over saddle connections gamma with |Phi(x)(gamma)| <= L of
/// |v(gamma)| / |Phi(x)(gamma)|. Requires L >= 4 sys(x).
NormResult agy_norm(const Origami& x, const Cocycle& v, double L,
                    const EnumerationOptions& opt = {});

/// Same maximum over a fixed list of connections (all traced on x's
/// combinatorics), measured at deformation D.
double norm_on_set(const Cocycle& v, const std::vector<SaddleConnection>& set,
                   const GroupElement& D);

/// e^{d t}, d = 2g + |Sigma| - 1.
double jacobian_unstable(const Origami& x, double t);

struct PathReport {
  double length = 0.0;         // int_0^T ||kappa'(t)||_{kappa(t)} dt over the matched set
  double length_bound = 0.0;   // T * ||A||_op, an analytic upper bound
  double norm_start = 0.0, norm_end = 0.0;  // ||v|| at both ends, matched set
  double norm_ratio = 1.0;
  bool ratio_within_bounds = true;
  std::size_t connections = 0;
  std::size_t per_connection_checks = 0;
  std::size_t per_connection_violations = 0;
  double worst_margin = 0.0;   // min over checks of bound - |log ratio|
  bool tangent_stabilized = false;
  bool norm_stabilized = false;
};

struct PathOptions {
  int time_grid = 8;         // per-connection checks on all pairs of this grid
  double log_slack = 1e-10;  // allowance for quadrature error in the length
  bool require_stabilized = false;
  EnumerationOptions enumeration{};
};

/// Follows kappa(t) = exp(tA) x for t in [0, T] (T <= 0.3), with the set of
/// saddle connections of x of length <= L held fixed along the path.
PathReport path_norm_bounds(const Origami& x, const GroupElement& A, double T, const Cocycle& v,
                            double L, const PathOptions& opt = {});

}  // namespace teich
