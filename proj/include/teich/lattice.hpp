#pragma once

// Planar lattices D * Z^2: Lagrange-Gauss reduction and enumeration of the
// lattice points in a disc.

#include <cstdint>
#include <functional>

#include "teich/sl2.hpp"

namespace teich {

struct IVec {
  std::int64_t p = 0, q = 0;
  friend bool operator==(const IVec&, const IVec&) = default;
};

struct ReducedBasis {
  // Columns b1 = D c1, b2 = D c2 with |b1| <= |b2| and |<b1,b2>| <= |b1|^2 / 2.
  IVec c1, c2;
  double b1[2], b2[2];
};

/// Lagrange-Gauss reduction of the columns of D. Requires det D != 0.
ReducedBasis lagrange_gauss(const GroupElement& D);

/// Length of the shortest nonzero vector of D * Z^2.
double shortest_vector_length(const GroupElement& D);

/// Calls f(v) for every nonzero integer v with |D v| <= R (up to a relative
/// slack of 4 ulp). Returns the number of vectors visited. Enumeration runs
/// over reduced coordinates, so cost tracks the area pi R^2 / |det D|.
std::size_t for_each_lattice_vector(const GroupElement& D, double R,
                                    const std::function<void(IVec)>& f);

/// |D v|.
double deformed_length(const GroupElement& D, IVec v);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace teich
