#include "teich/sl2.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "teich/error.hpp"

namespace teich {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " must be finite");
}

}  // namespace

GroupElement GroupElement::sl(double a, double b, double c, double d) {
  GroupElement m{a, b, c, d};
  if (!(std::abs(m.det() - 1.0) <= 1e-12))
    throw InvalidInput("SL(2,R) element requires det = 1, got " + std::to_string(m.det()));
  return m;
}

GroupElement GroupElement::gl_plus(double a, double b, double c, double d) {
  GroupElement m{a, b, c, d};
  if (!(m.det() > 0.0))
    throw InvalidInput("GL+(2,R) element requires det > 0, got " + std::to_string(m.det()));
  return m;
}

GroupElement GroupElement::inverse() const {
  const double det_ = det();
  if (det_ == 0.0) throw InvalidInput("singular 2x2 matrix");
  return {d / det_, -b / det_, -c / det_, a / det_};
}

double GroupElement::operator_norm() const {
  // sigma_max^2 is the top eigenvalue of M^T M.
  const double p = a * a + c * c;
  const double q = a * b + c * d;
  const double r = b * b + d * d;
  const double half_tr = 0.5 * (p + r);
  const double disc = std::sqrt(0.25 * (p - r) * (p - r) + q * q);
  return std::sqrt(half_tr + disc);
}

double GroupElement::max_abs_diff(const GroupElement& o) const {
  return std::max({std::abs(a - o.a), std::abs(b - o.b), std::abs(c - o.c),
                   std::abs(d - o.d)});
}

std::ostream& operator<<(std::ostream& os, const GroupElement& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

GroupElement expm(const GroupElement& m) {
  const double mu = 0.5 * m.trace();
  const GroupElement n{m.a - mu, m.b, m.c, m.d - mu};
  // n^2 = disc * I for traceless n.
  const double disc = n.a * n.a + n.b * n.c;
  double ch, sh_over;
  if (std::abs(disc) < 1e-8) {
    ch = 1.0 + disc / 2.0 + disc * disc / 24.0;
    sh_over = 1.0 + disc / 6.0 + disc * disc / 120.0;
  } else if (disc > 0.0) {
    const double x = std::sqrt(disc);
    ch = std::cosh(x);
    sh_over = std::sinh(x) / x;
  } else {
    const double x = std::sqrt(-disc);
    ch = std::cos(x);
    sh_over = std::sin(x) / x;
  }
  const double e = std::exp(mu);
  return {e * (ch + sh_over * n.a), e * sh_over * n.b, e * sh_over * n.c,
          e * (ch + sh_over * n.d)};
}

GroupElement generator(FlowKind kind, double param) {
  require_finite(param, "flow parameter");
  switch (kind) {
    case FlowKind::geodesic:
      return {std::exp(param), 0.0, 0.0, std::exp(-param)};
    case FlowKind::horocycle:
      return {1.0, param, 0.0, 1.0};
    case FlowKind::opp_horocycle:
      return {1.0, 0.0, param, 1.0};
    case FlowKind::rotation: {
      const double c = std::cos(param), s = std::sin(param);
      return {c, s, -s, c};
    }
  }
  throw InvalidInput("unknown flow kind");
}

GroupElement flow_tangent(FlowKind kind) {
  switch (kind) {
    case FlowKind::geodesic:
      return lie::omega.matrix();
    case FlowKind::horocycle:
      return {0.0, 1.0, 0.0, 0.0};
    case FlowKind::opp_horocycle:
      return {0.0, 0.0, 1.0, 0.0};
    case FlowKind::rotation:
      return lie::W.matrix();
  }
  throw InvalidInput("unknown flow kind");
}

double conjugated_horocycle_param(double t, double r) {
  require_finite(t, "t");
  require_finite(r, "r");
  const double rp = r * std::exp(2.0 * t);
#ifndef NDEBUG
  const GroupElement lhs = geodesic(t) * horocycle(r);
  const GroupElement rhs = horocycle(rp) * geodesic(t);
  const double scale = std::max(1.0, std::abs(rp) * std::exp(-t));
  if (lhs.max_abs_diff(rhs) > 1e-12 * scale)
    throw NumericalFailure("conjugation identity g_t h_r = h_r' g_t violated");
#endif
  return rp;
}

GroupElement ANKCoords::reconstruct() const {
  return geodesic(tau) * opp_horocycle(rtilde) * rotation(theta);
}

ANKCoords ank_decompose(const GroupElement& m) {
  if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) ||
      !std::isfinite(m.d))
    throw InvalidInput("ank_decompose: non-finite matrix entry");
  if (!(std::abs(m.det() - 1.0) <= 1e-9))
    throw InvalidInput("ank_decompose: det must be 1, got " + std::to_string(m.det()));
  // First row of g_tau h~ k_theta is e^tau (cos theta, sin theta).
  const double row_norm = std::hypot(m.a, m.b);
  ANKCoords out;
  out.tau = std::log(row_norm);
  out.theta = std::atan2(m.b, m.a);
  if (out.theta <= -std::numbers::pi) out.theta = std::numbers::pi;
  // Second row times k_{-theta} is e^{-tau} (rtilde, 1).
  const double ct = m.a / row_norm, st = m.b / row_norm;
  out.rtilde = (m.c * ct + m.d * st) * row_norm;
  return out;
}

}  // namespace teich
