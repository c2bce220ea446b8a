#pragma once

// Relative cohomology classes on a square-tiled surface, stored as complex
// values on the bottom and left edge of every square.

#include <cstdint>
#include <random>
#include <vector>

#include "teich/origami.hpp"
#include "teich/saddle_connections.hpp"
#include "teich/special.hpp"

namespace teich {

enum class Staircase { lower, upper };

struct Cocycle {
  std::vector<cplx> bottom, left;
  std::uint64_t origami_id = 0;

  std::size_t n() const { return bottom.size(); }
  /// max_i |bottom_i + left_{h(i)} - bottom_{v(i)} - left_i|.
  double closedness_defect(const Origami& x) const;
};

/// Edge values B(1,0) and B(0,1) read as complex numbers.
Cocycle tautological(const Origami& x, const GroupElement& B);
/// Period coordinates of x itself: B = deformation.
Cocycle tautological(const Origami& x);

/// Each edge value, as a real 2-vector, mapped by m (any real 2x2 matrix).
Cocycle pushforward(const GroupElement& m, const Cocycle& v);

/// Tangent vector A * Phi(x) of the path t -> exp(tA) x at t = 0.
Cocycle tangent_cocycle(const Origami& x, const GroupElement& A);

/// Sum of edge values along the staircase path of gamma. Throws
/// InvalidInput when gamma was traced on different combinatorics.
cplx evaluate_cocycle(const Cocycle& v, const SaddleConnection& gamma,
                      Staircase conv = Staircase::lower);

enum class CocycleKind { real, imaginary, complex };

/// Uniformly random element of the space of closed edge assignments
/// (dimension n + 1 over the chosen field), with coefficients in [-1, 1]
/// on an orthonormal basis of that space.
Cocycle random_closed_cocycle(const Origami& x, std::mt19937_64& rng,
                              CocycleKind kind = CocycleKind::real);

}  // namespace teich
