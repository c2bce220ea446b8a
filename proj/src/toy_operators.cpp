#include "teich/toy_operators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "teich/error.hpp"
#include "teich/transforms.hpp"

namespace teich::toy {

namespace {

constexpr double kSingular = 1e-13;

ToyOperator solve_checked(const ToyOperator& A, const ToyOperator& rhs, const char* who) {
  Eigen::PartialPivLU<ToyOperator> lu(A);
  // rcond is unreliable for an exactly zero pivot, so check the pivots too.
  const auto piv = lu.matrixLU().diagonal().cwiseAbs();
  const double rc = piv.minCoeff() <= kSingular * piv.maxCoeff() ? 0.0 : lu.rcond();
  if (!(rc > kSingular)) throw PoleError(std::string(who) + ": singular system (rcond " + std::to_string(rc) + ")");
  return lu.solve(rhs);
}

}  // namespace

void validate(const ToyOperator& L) {
  if (L.rows() != L.cols() || L.rows() < 1 || L.rows() > kMaxDim)
    throw InvalidInput("toy operator must be square of size 1..64");
  if (!L.allFinite()) throw InvalidInput("toy operator has non-finite entries");
}

double operator_norm(const ToyOperator& L) {
  if (L.size() == 0) return 0.0;
  Eigen::JacobiSVD<ToyOperator> svd(L);
  return svd.singularValues()(0);
}

ToyOperator resolvent_S(const ToyOperator& M, cplx z0, cplx z) {
  validate(M);
  const cplx e = z0 - z;
  const auto n = M.rows();
  const ToyOperator I = ToyOperator::Identity(n, n);
  // M (I - eM)^{-1} = (I - eM)^{-1} M since the factors commute.
  return solve_checked(I - e * M, M, "resolvent_S");
}

ToyOperator resolvent(const ToyOperator& L, cplx w) {
  validate(L);
  const auto n = L.rows();
  const ToyOperator I = ToyOperator::Identity(n, n);
  return solve_checked(w * I - L, I, "resolvent");
}

ToyOperator spectral_projection(const ToyOperator& L, cplx lambda, double radius) {
  validate(L);
  if (!(radius > 0.0)) throw InvalidInput("spectral_projection: radius must be positive");
  Eigen::ComplexEigenSolver<ToyOperator> es(L, false);
  const double scale = std::max(1.0, operator_norm(L));
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double d = std::abs(es.eigenvalues()(k) - lambda);
    if (std::abs(d - radius) <= 1e-8 * scale)
      throw InvalidInput("spectral_projection: eigenvalue on the contour");
  }
  auto f = [&](cplx w) { return resolvent(L, w); };
  return transforms::residue_contour(f, lambda, radius, 64, 1e-12).value;
}

Eigen::Index numerical_rank(const ToyOperator& P) {
  Eigen::JacobiSVD<ToyOperator> svd(P);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-8 * std::max(1.0, sv(0))) ++r;
  return r;
}

double spectral_radius_via_iterates(const ToyOperator& L, int n_max) {
  validate(L);
  if (n_max < 1) throw InvalidInput("spectral_radius_via_iterates: n_max must be >= 1");
  // P holds L^n / ||L^n||; log_norm accumulates log ||L^n||.
  ToyOperator P = ToyOperator::Identity(L.rows(), L.cols());
  double log_norm = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    P = L * P;
    const double s = operator_norm(P);
    if (!std::isfinite(s)) throw NumericalFailure("spectral_radius_via_iterates: overflow");
    if (s == 0.0) return 0.0;  // nilpotent
    log_norm += std::log(s);
    P /= s;
    best = std::min(best, std::exp(log_norm / n));
  }
  return best;
}

}  // namespace teich::toy
