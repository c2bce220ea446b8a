#include "teich/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "teich/quadrature.hpp"
#include "teich/spherical.hpp"

namespace teich::transforms {

namespace {

constexpr double kTail = 1e-14;
constexpr double kQuadTol = 1e-12;
constexpr double kMaxCut = 1e5;

// Cut-off T with bound * e^{-rate T} / rate <= kTail.
double tail_cut(double bound, double rate) {
  const double t = std::log(std::max(bound, kTail) / (kTail * rate)) / rate;
  return std::max(t, 1.0);
}

// int_0^T e^{-zt} g(t) dt over unit-length blocks so that oscillation in
// Im z and the slow decay never share one adaptive tree.
template <class G>
Estimate damped_integral(G&& g, cplx z, double T) {
  const double block = std::min(1.0, std::abs(z.imag()) > 0 ? 2.0 / std::abs(z.imag()) : 1.0);
  const auto blocks = static_cast<std::size_t>(std::ceil(T / block));
  const double h = T / static_cast<double>(blocks);
  Estimate out{0.0, 0.0};
  auto integrand = [&](double t) -> cplx { return std::exp(-z * t) * g(t); };
  for (std::size_t k = 0; k < blocks; ++k) {
    const double lo = h * static_cast<double>(k), hi = lo + h;
    auto r = quad::adaptive(integrand, lo, hi, kQuadTol * h / T, 0.0, 30, 15);
    if (!r.converged)
      throw NumericalFailure("laplace: quadrature did not converge near t = " +
                                 std::to_string(lo),
                             out.value);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

void check_z(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw InvalidInput("laplace: z must be finite");
  if (!(z.real() >= 0.05)) throw InvalidInput("laplace: requires Re z >= 0.05");
}

}  // namespace

SpectralAtoms::SpectralAtoms(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& a = atoms_[i];
    if (!(a.s > 0.0 && a.s <= 1.0)) throw InvalidInput("SpectralAtoms: s must lie in (0, 1]");
    if (!(a.w >= 0.0) || !std::isfinite(a.w)) throw InvalidInput("SpectralAtoms: weights must be >= 0");
    if (i > 0 && !(atoms_[i - 1].s < a.s))
      throw InvalidInput("SpectralAtoms: s must be strictly increasing");
  }
}

Estimate laplace_numeric(const std::function<double(double)>& corr, cplx z, double bound) {
  check_z(z);
  if (!(bound > 0.0) || !std::isfinite(bound)) throw InvalidInput("laplace: bound must be positive");
  const double T = tail_cut(bound, z.real());
  if (T > kMaxCut) throw NumericalFailure("laplace: tail cut-off beyond 1e5");
  Estimate e = damped_integral(corr, z, T);
  e.error += bound * std::exp(-z.real() * T) / z.real();
  return e;
}

Estimate laplace_numeric(std::span<const double> samples, double dt, cplx z, double bound) {
  check_z(z);
  if (samples.size() < 2 || !(dt > 0.0)) throw InvalidInput("laplace: need >= 2 samples and dt > 0");
  const double t_end = dt * static_cast<double>(samples.size() - 1);
  const double tail = bound * std::exp(-z.real() * t_end) / z.real();
  if (tail > kTail)
    throw NumericalFailure("laplace: samples end at t = " + std::to_string(t_end) +
                           ", tail bound " + std::to_string(tail) + " exceeds 1e-14");
  // Piecewise linear data: one 8-point rule per cell.
  const auto& rule = quad::gauss_legendre(8);
  cplx acc = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const double lo = dt * static_cast<double>(k);
    const double f0 = samples[k], f1 = samples[k + 1];
    acc += quad::apply_rule(
        rule,
        [&](double t) -> cplx {
          const double u = (t - lo) / dt;
          return std::exp(-z * t) * ((1.0 - u) * f0 + u * f1);
        },
        lo, lo + dt);
  }
  return {acc, tail};
}

cplx b_delta(const SpectralAtoms& atoms, cplx z, double delta) {
  if (!(delta > 0.0)) throw InvalidInput("b_delta: delta must be positive");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < atoms.atoms().size(); ++i) {
    const auto& a = atoms.atoms()[i];
    if (a.s < delta) continue;
    const cplx den = z - a.s + 1.0;
    if (std::abs(den) < 1e-15)
      throw PoleError("b_delta: z is the pole s - 1 of atom " + std::to_string(i) +
                      " (s = " + std::to_string(a.s) + ")");
    acc += spherical::c_function(a.s) * a.w / den;
  }
  return acc;
}

Estimate extended_F_estimate(const SpectralAtoms& atoms, cplx z, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidInput("extended_F: delta must lie in (0, 1/2)");
  if (!(z.real() > -1.0 + 2.0 * delta))
    throw DomainError("extended_F: requires Re z > -1 + 2 delta");
  Estimate out{b_delta(atoms, z, delta), 0.0};
  for (const auto& a : atoms.atoms()) {
    if (a.w == 0.0) continue;
    const spherical::SphericalFunction f(spherical::SphericalParam::from({a.s, 0.0}));
    const bool subtract = a.s >= delta;
    const double c = a.s == 1.0 ? 1.0 : f.c_plus().real();
    // Envelope of the integrand: the defect decays like e^{-(1+s)t}, the
    // full function of an atom below delta like e^{-(1-s)t}.
    const double decay = subtract ? 1.0 + a.s : 1.0 - a.s;
    const double rate = decay + z.real();
    if (!(rate > 0.0)) throw DomainError("extended_F: integral diverges at this z");
    const double bound = 1.0 + std::abs(c) + std::abs(f.c_minus());
    const double T = tail_cut(bound, rate);
    if (a.s == 1.0 && subtract) continue;  // phi = 1 = c(1): no defect
    auto g = [&](double t) -> cplx {
      const cplx v = f.value(t);
      return subtract ? v - c * std::exp((a.s - 1.0) * t) : v;
    };
    const Estimate part = damped_integral(g, z, T);
    out.value += a.w * part.value;
    out.error += a.w * (part.error + bound * std::exp(-rate * T) / rate);
  }
  return out;
}

cplx extended_F(const SpectralAtoms& atoms, cplx z, double delta) {
  return extended_F_estimate(atoms, z, delta).value;
}

MeasureOnInterval::MeasureOnInterval(std::vector<PointMass> atoms, std::vector<double> breaks,
                                     std::vector<double> density)
    : atoms_(std::move(atoms)), breaks_(std::move(breaks)), density_(std::move(density)) {
  for (const auto& a : atoms_) {
    if (!(a.x >= 0.0 && a.x <= 1.0)) throw InvalidInput("measure: atom outside [0, 1]");
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw InvalidInput("measure: negative atom mass");
  }
  if (breaks_.empty() && density_.empty()) return;
  if (breaks_.size() != density_.size() + 1 || density_.empty())
    throw InvalidInput("measure: need K+1 breakpoints for K density values");
  if (breaks_.front() != 0.0 || breaks_.back() != 1.0)
    throw InvalidInput("measure: breakpoints must start at 0 and end at 1");
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k)
    if (!(breaks_[k] < breaks_[k + 1])) throw InvalidInput("measure: breakpoints must increase");
  for (double d : density_)
    if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidInput("measure: density must be >= 0");
}

MeasureOnInterval MeasureOnInterval::uniform(double total_mass) {
  return MeasureOnInterval({}, {0.0, 1.0}, {total_mass});
}

MeasureOnInterval MeasureOnInterval::dirac(double x, double mass) {
  return MeasureOnInterval({{x, mass}}, {}, {});
}

double MeasureOnInterval::density_at(double s) const {
  if (density_.empty() || s < 0.0 || s > 1.0) return 0.0;
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  const auto k = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
  return density_[std::min(k == 0 ? 0 : k - 1, density_.size() - 1)];
}

MeasureOnInterval MeasureOnInterval::operator+(const MeasureOnInterval& other) const {
  std::vector<PointMass> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  if (density_.empty() && other.density_.empty()) return {atoms, {}, {}};
  std::vector<double> breaks = breaks_;
  breaks.insert(breaks.end(), other.breaks_.begin(), other.breaks_.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> dens;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double mid = 0.5 * (breaks[k] + breaks[k + 1]);
    dens.push_back(density_at(mid) + other.density_at(mid));
  }
  return {atoms, breaks, dens};
}

MeasureOnInterval MeasureOnInterval::scaled(double factor) const {
  if (!(factor >= 0.0)) throw InvalidInput("measure: scale factor must be >= 0");
  auto atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  auto dens = density_;
  for (auto& d : dens) d *= factor;
  return {atoms, breaks_, dens};
}

double MeasureOnInterval::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  for (std::size_t k = 0; k < density_.size(); ++k) m += density_[k] * (breaks_[k + 1] - breaks_[k]);
  return m;
}

cplx cauchy_transform(const MeasureOnInterval& nu, cplx z) {
  cplx acc = 0.0;
  for (const auto& a : nu.atoms()) {
    const cplx den = z - a.x + 1.0;
    if (den == 0.0) throw PoleError("cauchy_transform: z = x - 1 for an atom at x = " + std::to_string(a.x));
    acc += a.mass / den;
  }
  const auto br = nu.breaks();
  const auto dens = nu.density();
  // int_a^b ds / (z + 1 - s) = log(z + 1 - a) - log(z + 1 - b); on the cut
  // the sign of Im z selects the side.
  for (std::size_t k = 0; k < dens.size(); ++k) {
    if (dens[k] == 0.0) continue;
    const cplx wa = z + 1.0 - br[k], wb = z + 1.0 - br[k + 1];
    if (wa == 0.0 || wb == 0.0) throw PoleError("cauchy_transform: z at a density breakpoint image");
    acc += dens[k] * (std::log(wa) - std::log(wb));
  }
  return acc;
}

double atom_mass(const MeasureOnInterval& nu, double x, std::span<const double> y_ladder) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("atom_mass: x must lie in [0, 1]");
  if (y_ladder.size() < 2) throw InvalidInput("atom_mass: ladder needs at least 2 rungs");
  for (std::size_t k = 0; k < y_ladder.size(); ++k) {
    if (!(y_ladder[k] > 0.0) || !std::isfinite(y_ladder[k]))
      throw InvalidInput("atom_mass: ladder entries must be positive");
    if (k > 0 && !(y_ladder[k] < y_ladder[k - 1]))
      throw InvalidInput("atom_mass: ladder must be strictly decreasing");
  }
  const std::size_t m = std::min<std::size_t>(5, y_ladder.size());
  const auto ys = y_ladder.last(m);
  std::vector<double> p(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double y = ys[k];
    const cplx up = cauchy_transform(nu, {x - 1.0, y});
    const cplx dn = cauchy_transform(nu, {x - 1.0, -y});
    p[k] = -0.5 * y * (up - dn).imag();
  }
  // Neville's scheme evaluated at y = 0.
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t k = 0; k + level < m; ++k)
      p[k] = (ys[k + level] * p[k] - ys[k] * p[k + 1]) / (ys[k + level] - ys[k]);
  return p[0];
}

std::vector<double> geometric_ladder(double y0, int levels) {
  if (!(y0 > 0.0) || levels < 2) throw InvalidInput("geometric_ladder: need y0 > 0 and >= 2 levels");
  std::vector<double> out(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) out[static_cast<std::size_t>(k)] = std::ldexp(y0, -k);
  return out;
}

}  // namespace teich::transforms
