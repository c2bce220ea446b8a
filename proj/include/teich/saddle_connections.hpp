#pragma once

// Saddle connections of a square-tiled surface by rasterized separatrix
// tracing.
//
// Every saddle connection is reported once, oriented so that its base
// holonomy (p, q) has p > 0, or p = 0 and q > 0. Each one also carries two
// edge-count vectors describing grid paths homotopic to it: `lower` runs
// along the square edges just below the segment, `upper` just above. Entry
// k < n counts bottom edges of square k, entry n + k left edges of square k.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "teich/lattice.hpp"
#include "teich/origami.hpp"

namespace teich {

struct SaddleConnection {
  int start_class = -1, end_class = -1;
  IVec holonomy;       // base holonomy in units of the square
  IVec direction;      // primitive direction, holonomy = steps * direction
  int steps = 0;       // primitive displacements (regular vertices passed + 1)
  int start_square = -1;
  double hx = 0.0, hy = 0.0;  // deformation * holonomy
  double length = 0.0;
  std::uint64_t origami_id = 0;
  std::vector<std::int32_t> lower, upper;
};

struct EnumerationOptions {
  std::size_t budget = 50'000'000;  // work units: grid crossings + traced steps
  int threads = 1;
};

struct EnumerationResult {
  std::vector<SaddleConnection> connections;
  bool complete = true;  // false when the budget cut the enumeration short
  std::size_t work = 0;
};

/// All saddle connections with |deformation * holonomy| <= L, sorted by
/// deformed length, then base holonomy, then start class and square.
/// Never throws on budget exhaustion: the partial list is flagged instead.
EnumerationResult enumerate_saddle_connections(const Origami& x, double L,
                                               const EnumerationOptions& opt = {});

/// As above; throws ResourceError (carrying the partial count) when the
/// budget is exhausted. Throws InvalidInput for L <= 0.
std::vector<SaddleConnection> saddle_connections(const Origami& x, double L,
                                                 const EnumerationOptions& opt = {});

/// |m * holonomy| for a connection traced on a deformation of the same surface.
double length_under(const GroupElement& m, const SaddleConnection& g);

}  // namespace teich
