#pragma once

// Finite-dimensional stand-ins for the transfer operator: resolvents,
// Riesz projections and spectral radii of small complex matrices.

#include <Eigen/Dense>

#include "teich/special.hpp"

namespace teich::toy {

using ToyOperator = Eigen::MatrixXcd;

inline constexpr Eigen::Index kMaxDim = 64;

/// Throws InvalidInput unless L is square, 1 <= n <= 64, with finite entries.
void validate(const ToyOperator& L);

/// S(z) = (1/e) M ((1/e) I - M)^{-1} with e = z0 - z, computed as
/// M (I - e M)^{-1} so that S(z0) = M. PoleError when 1/e is an eigenvalue.
ToyOperator resolvent_S(const ToyOperator& M, cplx z0, cplx z);

/// (w I - L)^{-1}; PoleError when w is (numerically) an eigenvalue.
ToyOperator resolvent(const ToyOperator& L, cplx w);

/// Riesz projection (1/(2 pi i)) int_C (w I - L)^{-1} dw over the circle of
/// the given radius around lambda. InvalidInput when an eigenvalue lies on
/// the contour.
ToyOperator spectral_projection(const ToyOperator& L, cplx lambda, double radius);

/// Numerical rank from singular values above 1e-8 times the largest.
Eigen::Index numerical_rank(const ToyOperator& P);

/// min_{n <= n_max} ||L^n||^{1/n} in the operator 2-norm.
double spectral_radius_via_iterates(const ToyOperator& L, int n_max);

/// Largest singular value.
double operator_norm(const ToyOperator& L);

}  // namespace teich::toy
