#include "teich/specfit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "teich/error.hpp"

namespace teich::specfit {

double eigenvalue_to_rate(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 0.25))
    throw DomainError("eigenvalue_to_rate: lambda must lie in [0, 1/4]");
  return 1.0 - std::sqrt(1.0 - 4.0 * lambda);
}

double rate_to_eigenvalue(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("rate_to_eigenvalue: a must lie in [0, 1]");
  return (2.0 * a - a * a) / 4.0;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd design(const VectorXd& t, const VectorXd& rates) {
  MatrixXd P(t.size(), rates.size());
  for (Eigen::Index i = 0; i < t.size(); ++i)
    for (Eigen::Index j = 0; j < rates.size(); ++j) P(i, j) = std::exp(-rates(j) * t(i));
  return P;
}

VectorXd coefficients(const MatrixXd& P, const VectorXd& y) {
  return P.colPivHouseholderQr().solve(y);
}

// Reduced residual of the variable projection problem: the coefficients
// are eliminated by linear least squares for every trial set of rates.
struct Projected {
  using Scalar = double;
  using InputType = VectorXd;
  using ValueType = VectorXd;
  using JacobianType = MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const VectorXd* t;
  const VectorXd* y;
  int k;
  int inputs() const { return k; }
  int values() const { return static_cast<int>(y->size()); }
  int operator()(const VectorXd& rates, VectorXd& r) const {
    const MatrixXd P = design(*t, rates);
    r = *y - P * coefficients(P, *y);
    return 0;
  }
};

}  // namespace

RateTable fit_exponential_sum(std::span<const double> t_all, std::span<const double> v_all, int k,
                              const FitOptions& opt) {
  if (t_all.size() != v_all.size()) throw InvalidInput("fit: t and values differ in length");
  if (k < 1 || k > 4) throw InvalidInput("fit: model order k must lie in 1..4");
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < t_all.size(); ++i) {
    if (!std::isfinite(t_all[i]) || !std::isfinite(v_all[i]))
      throw InvalidInput("fit: non-finite data");
    if (t_all[i] >= opt.t_min && t_all[i] <= opt.t_max) {
      ts.push_back(t_all[i]);
      ys.push_back(v_all[i]);
    }
  }
  const auto N = static_cast<Eigen::Index>(ts.size());
  if (N < 4 * k)
    throw InvalidInput("fit: need at least " + std::to_string(4 * k) + " points in the window, got " +
                       std::to_string(N));
  const double h = ts[1] - ts[0];
  if (!(h > 0.0)) throw InvalidInput("fit: grid must be increasing");
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (std::abs((ts[i] - ts[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw InvalidInput("fit: grid must be uniform");

  const VectorXd t = Eigen::Map<const VectorXd>(ts.data(), N);
  const VectorXd y = Eigen::Map<const VectorXd>(ys.data(), N);

  // Linear prediction: y_{n+k} + sum_j p_j y_{n+j} = 0.
  const Eigen::Index rows = N - k;
  MatrixXd H(rows, k);
  VectorXd rhs(rows);
  for (Eigen::Index n = 0; n < rows; ++n) {
    for (int j = 0; j < k; ++j) H(n, j) = y(n + j);
    rhs(n) = -y(n + k);
  }
  Eigen::JacobiSVD<MatrixXd> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(k - 1) > 0.0 ? sv(0) / sv(k - 1) : std::numeric_limits<double>::infinity();
  if (!(cond <= opt.max_condition))
    throw NumericalFailure("fit: linear prediction system is ill-conditioned (condition " +
                           std::to_string(cond) + "); try a smaller k");
  const VectorXd p = svd.solve(rhs);

  MatrixXd C = MatrixXd::Zero(k, k);
  for (int i = 1; i < k; ++i) C(i, i - 1) = 1.0;
  for (int j = 0; j < k; ++j) C(j, k - 1) = -p(j);
  const Eigen::VectorXcd roots = Eigen::EigenSolver<MatrixXd>(C, false).eigenvalues();

  VectorXd rates(k);
  for (int i = 0; i < k; ++i) {
    const auto z = roots(i);
    if (std::abs(z.imag()) > opt.imag_tol * std::abs(z))
      throw NumericalFailure("fit: oscillating root for model order " + std::to_string(k) +
                             "; the data do not support this many real rates");
    if (!(z.real() > 0.0))
      throw NumericalFailure("fit: nonpositive root for model order " + std::to_string(k) +
                             "; the data do not support this many real rates");
    rates(i) = -std::log(z.real()) / h;
  }

  if (opt.refine) {
    Projected f{&t, &y, k};
    Eigen::NumericalDiff<Projected> nd(f);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Projected>> lm(nd);
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    VectorXd start = rates;
    lm.minimize(start);
    VectorXd r0, r1;
    f(rates, r0);
    f(start, r1);
    if (start.allFinite() && r1.norm() <= r0.norm()) rates = start;
  }

  std::vector<int> order(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rates(a) < rates(b); });
  VectorXd sorted(k);
  for (int i = 0; i < k; ++i) sorted(i) = rates(order[static_cast<std::size_t>(i)]);
  for (int i = 1; i < k; ++i)
    if (!(sorted(i) > sorted(i - 1)))
      throw NumericalFailure("fit: repeated rate for model order " + std::to_string(k));
  if (sorted(0) < 0.0) throw NumericalFailure("fit: negative decay rate (growing data)");

  const MatrixXd P = design(t, sorted);
  const VectorXd c = coefficients(P, y);
  RateTable out;
  out.rates.assign(sorted.data(), sorted.data() + k);
  out.coeffs.assign(c.data(), c.data() + k);
  out.residual = (y - P * c).norm();
  out.points = static_cast<std::size_t>(N);
  return out;
}

}  // namespace teich::specfit
