#include "teich/cocycle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "teich/error.hpp"

namespace teich {

double Cocycle::closedness_defect(const Origami& x) const {
  if (bottom.size() != static_cast<std::size_t>(x.n()) || left.size() != bottom.size())
    throw InvalidInput("cocycle: size does not match the origami");
  double worst = 0.0;
  for (int i = 0; i < x.n(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(x.sigma_h()[ui]);
    const auto vi = static_cast<std::size_t>(x.sigma_v()[ui]);
    worst = std::max(worst, std::abs(bottom[ui] + left[hi] - bottom[vi] - left[ui]));
  }
  return worst;
}

Cocycle tautological(const Origami& x, const GroupElement& B) {
  Cocycle c;
  c.origami_id = x.combinatorial_id();
  c.bottom.assign(static_cast<std::size_t>(x.n()), cplx{B.a, B.c});
  c.left.assign(static_cast<std::size_t>(x.n()), cplx{B.b, B.d});
  return c;
}

Cocycle tautological(const Origami& x) { return tautological(x, x.deformation()); }

Cocycle pushforward(const GroupElement& m, const Cocycle& v) {
  Cocycle out = v;
  auto map = [&](cplx z) {
    const auto w = m.apply(z.real(), z.imag());
    return cplx{w[0], w[1]};
  };
  std::transform(v.bottom.begin(), v.bottom.end(), out.bottom.begin(), map);
  std::transform(v.left.begin(), v.left.end(), out.left.begin(), map);
  return out;
}

Cocycle tangent_cocycle(const Origami& x, const GroupElement& A) {
  return pushforward(A, tautological(x));
}

cplx evaluate_cocycle(const Cocycle& v, const SaddleConnection& gamma, Staircase conv) {
  if (v.origami_id != gamma.origami_id)
    throw InvalidInput("evaluate_cocycle: cocycle and connection live on different origamis");
  const auto& counts = conv == Staircase::lower ? gamma.lower : gamma.upper;
  const std::size_t n = v.bottom.size();
  if (counts.size() != 2 * n) throw InvalidInput("evaluate_cocycle: size mismatch");
  cplx acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (counts[k] != 0) acc += static_cast<double>(counts[k]) * v.bottom[k];
    if (counts[n + k] != 0) acc += static_cast<double>(counts[n + k]) * v.left[k];
  }
  return acc;
}

Cocycle random_closed_cocycle(const Origami& x, std::mt19937_64& rng, CocycleKind kind) {
  const int n = x.n();
  // Closedness matrix: one row per square, columns (bottom_0..n-1, left_0..n-1).
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    A(i, i) += 1.0;
    A(i, n + x.sigma_h()[ui]) += 1.0;
    A(i, x.sigma_v()[ui]) -= 1.0;
    A(i, n + i) -= 1.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::MatrixXd kernel = lu.kernel();
  // Orthonormalize so that draws do not depend on the LU basis scaling.
  const Eigen::MatrixXd basis = Eigen::HouseholderQR<Eigen::MatrixXd>(kernel).householderQ() *
                                Eigen::MatrixXd::Identity(2 * n, kernel.cols());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto draw = [&] {
    Eigen::VectorXd c(kernel.cols());
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = u(rng);
    return Eigen::VectorXd(basis * c);
  };
  Eigen::VectorXd re = Eigen::VectorXd::Zero(2 * n), im = re;
  if (kind != CocycleKind::imaginary) re = draw();
  if (kind != CocycleKind::real) im = draw();
  Cocycle c;
  c.origami_id = x.combinatorial_id();
  c.bottom.resize(static_cast<std::size_t>(n));
  c.left.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    c.bottom[static_cast<std::size_t>(i)] = {re(i), im(i)};
    c.left[static_cast<std::size_t>(i)] = {re(n + i), im(n + i)};
  }
  return c;
}

}  // namespace teich
