#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

namespace teich {

/// A real 2x2 matrix [[a, b], [c, d]] acting on column vectors.
///
/// Used for elements of SL(2,R) (the one-parameter flows) and for the
/// GL+(2,R) deformations of square-tiled surfaces. The named constructors
/// check the determinant; the plain aggregate is a bare matrix.
struct GroupElement {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static GroupElement identity() { return {}; }
  /// Throws InvalidInput unless |det - 1| <= 1e-12.
  static GroupElement sl(double a, double b, double c, double d);
  /// Throws InvalidInput unless det > 0.
  static GroupElement gl_plus(double a, double b, double c, double d);

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  GroupElement inverse() const;
  std::array<double, 2> apply(double x, double y) const {
    return {a * x + b * y, c * x + d * y};
  }
  /// Largest singular value.
  double operator_norm() const;
  double max_abs_diff(const GroupElement& o) const;

  friend GroupElement operator*(const GroupElement& l, const GroupElement& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  friend GroupElement operator+(const GroupElement& l, const GroupElement& r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d};
  }
  friend GroupElement operator*(double s, const GroupElement& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& m);

/// Traceless element of the Lie algebra sl(2,R).
struct LieVec {
  double a = 0.0, b = 0.0, c = 0.0;  // [[a, b], [c, -a]]

  GroupElement matrix() const { return {a, b, c, -a}; }
};

namespace lie {
inline constexpr LieVec omega{1.0, 0.0, 0.0};  // generates g_t
inline constexpr LieVec W{0.0, 1.0, -1.0};     // generates k_theta
inline constexpr LieVec V{0.0, 1.0, 1.0};
}  // namespace lie

/// exp of an arbitrary real 2x2 matrix (closed form; det of the result > 0).
GroupElement expm(const GroupElement& m);

enum class FlowKind { geodesic, horocycle, opp_horocycle, rotation };

/// g_t = diag(e^t, e^-t), h_r = [[1, r], [0, 1]], h~_r = [[1, 0], [r, 1]],
/// k_theta = [[cos, sin], [-sin, cos]].
GroupElement generator(FlowKind kind, double param);

inline GroupElement geodesic(double t) { return generator(FlowKind::geodesic, t); }
inline GroupElement horocycle(double r) { return generator(FlowKind::horocycle, r); }
inline GroupElement opp_horocycle(double r) { return generator(FlowKind::opp_horocycle, r); }
inline GroupElement rotation(double theta) { return generator(FlowKind::rotation, theta); }

/// Derivative at parameter 0 of the one-parameter family.
GroupElement flow_tangent(FlowKind kind);

/// The r' with g_t h_r = h_{r'} g_t, i.e. r e^{2t}.
double conjugated_horocycle_param(double t, double r);

/// Coordinates of m = g_tau * h~_rtilde * k_theta.
struct ANKCoords {
  double tau = 0.0;
  double rtilde = 0.0;
  double theta = 0.0;  // in (-pi, pi]

  GroupElement reconstruct() const;
};

/// Unique ANK factorization of an SL(2,R) element. theta is taken as
/// atan2(b, a) of the first row, so it lies in (-pi, pi].
ANKCoords ank_decompose(const GroupElement& m);

}  // namespace teich
