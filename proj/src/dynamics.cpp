#include "teich/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "teich/error.hpp"
#include "teich/finsler.hpp"
#include "teich/lattice.hpp"
#include "teich/quadrature.hpp"

namespace teich::dynamics {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Runs body(i) for i in [0, count) over contiguous chunks; the first
// exception thrown by any worker is rethrown here.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const auto T = static_cast<std::size_t>(std::max(1, threads));
  if (T == 1 || count < 2 * T) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(T);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < T; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = count * w / T; i < count * (w + 1) / T; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

constexpr std::uint64_t kAngleDraw = 1ULL << 40;

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t index, std::uint64_t k) const {
  const std::uint64_t h = mix64(seed_ + 0x9E3779B97F4A7C15ULL * (index + 1));
  return mix64(h ^ mix64(k + 0xD1B54A32D192ED03ULL));
}

double CounterRng::uniform(std::uint64_t index, std::uint64_t k) const {
  return (static_cast<double>(bits(index, k) >> 11) + 0.5) * 0x1.0p-53;
}

double fast_systole(const Origami& x, const EnumerationOptions& opt) {
  // On genus one every corner is marked, so the holonomies are exactly the
  // primitive lattice vectors.
  if (x.genus() == 1) return shortest_vector_length(x.deformation());
  return systole(x, opt);
}

HorocycleAverage horocycle_vdelta_average(const Origami& x, double t, double delta,
                                          std::size_t n_nodes, const AverageOptions& opt) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("horocycle average: t must be >= 0");
  if (n_nodes < 16) throw InvalidInput("horocycle average: need at least 16 nodes");
  if (!(delta > 0.0 && delta < 0.25)) throw DomainError("horocycle average: delta must lie in (0, 1/4)");
  const GroupElement gt = geodesic(t);
  auto V = [&](double r) {
    return v_delta_from_systole(fast_systole(x.apply(gt * horocycle(r)), opt.enumeration), delta);
  };
  auto eval = [&](std::size_t n, std::size_t first, std::size_t stride) {
    const std::size_t count = (n - first) / stride + 1;
    std::vector<double> out(count);
    parallel_for(count, opt.threads, [&](std::size_t i) {
      out[i] = V(static_cast<double>(first + i * stride) / static_cast<double>(n));
    });
    return out;
  };
  auto trapezoid = [](const std::vector<double>& f) {
    const double h = 1.0 / static_cast<double>(f.size() - 1);
    return h * (quad::pairwise_sum(f) - 0.5 * (f.front() + f.back()));
  };

  std::size_t n = n_nodes;
  std::vector<double> vals = eval(n, 0, 1);
  double prev = trapezoid(vals);
  HorocycleAverage out;
  while (true) {
    const std::vector<double> odd = eval(2 * n, 1, 2);
    std::vector<double> merged(2 * n + 1);
    for (std::size_t k = 0; k <= n; ++k) merged[2 * k] = vals[k];
    for (std::size_t k = 0; k < n; ++k) merged[2 * k + 1] = odd[k];
    vals = std::move(merged);
    n *= 2;
    const double cur = trapezoid(vals);
    out = {cur, std::abs(cur - prev), n, std::abs(cur - prev) <= opt.rel_tol * std::abs(cur)};
    if (out.converged || 2 * n > opt.max_nodes) return out;
    prev = cur;
  }
}

bool RecurrenceProfile::complete() const {
  return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
}

double envelope(double C, double delta, double v0, double t) {
  return C * (std::exp(-(1.0 - 2.0 * delta) * t) * v0 + 1.0);
}

RecurrenceProfile recurrence_profile(const Origami& x, double delta, std::span<const double> t_grid,
                                     std::size_t n_nodes, const AverageOptions& opt) {
  if (t_grid.empty()) throw InvalidInput("recurrence_profile: empty time grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i]))
      throw InvalidInput("recurrence_profile: times must be finite and >= 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw InvalidInput("recurrence_profile: time grid must be increasing");
  }
  RecurrenceProfile p;
  p.delta = delta;
  p.v0 = v_delta_from_systole(fast_systole(x, opt.enumeration), delta);
  for (double t : t_grid) {
    p.t.push_back(t);
    try {
      const auto a = horocycle_vdelta_average(x, t, delta, n_nodes, opt);
      p.average.push_back(a.value);
      p.error.push_back(a.error);
      p.ok.push_back(true);
      p.failure.emplace_back();
    } catch (const ResourceError& e) {
      p.average.push_back(std::nan(""));
      p.error.push_back(std::nan(""));
      p.ok.push_back(false);
      p.failure.emplace_back(e.what());
    } catch (const NumericalFailure& e) {
      p.average.push_back(std::nan(""));
      p.error.push_back(std::nan(""));
      p.ok.push_back(false);
      p.failure.emplace_back(e.what());
    }
  }
  double C = 0.0;
  for (std::size_t i = 0; i < p.t.size(); ++i)
    if (p.ok[i]) C = std::max(C, p.average[i] / envelope(1.0, delta, p.v0, p.t[i]));
  p.C1 = p.C2 = C;
  return p;
}

GroupElement modular_sample(const CounterRng& rng, std::uint64_t index) {
  const double y_min = std::sqrt(3.0) / 2.0;
  for (std::uint64_t k = 0;; k += 2) {
    const double x = rng.uniform(index, k) - 0.5;
    // Density 1/y^2 on [y_min, inf) by inversion.
    const double y = y_min / rng.uniform(index, k + 1);
    if (x * x + y * y < 1.0) continue;
    const double theta = 2.0 * std::numbers::pi * rng.uniform(index, kAngleDraw);
    const double sy = std::sqrt(y);
    return rotation(theta) * GroupElement{1.0 / sy, x / sy, 0.0, sy};
  }
}

std::vector<GroupElement> sample_modular_surface(std::size_t N, std::uint64_t seed, int threads) {
  if (N < 1) throw InvalidInput("sample_modular_surface: N must be >= 1");
  const CounterRng rng(seed);
  std::vector<GroupElement> out(N);
  parallel_for(N, threads, [&](std::size_t i) { out[i] = modular_sample(rng, i); });
  return out;
}

double Observable::operator()(double sys) const {
  if (kind == Kind::constant) return value;
  const double u = (2.0 * sys - lo - hi) / (hi - lo);
  if (!(std::abs(u) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

Observable Observable::bump(double lo, double hi) {
  if (!(lo < hi) || !(lo >= 0.0) || !std::isfinite(hi))
    throw InvalidInput("bump observable: need 0 <= lo < hi");
  Observable f;
  f.lo = lo;
  f.hi = hi;
  return f;
}

Observable Observable::constant(double c) {
  if (!std::isfinite(c)) throw InvalidInput("constant observable must be finite");
  Observable f;
  f.kind = Kind::constant;
  f.value = c;
  return f;
}

CorrelationSeries correlation_mc(const Observable& f, std::span<const double> t_grid,
                                 std::size_t N, std::uint64_t seed, int threads) {
  if (N < 1) throw InvalidInput("correlation_mc: N must be >= 1");
  if (t_grid.empty()) throw InvalidInput("correlation_mc: empty time grid");
  for (double t : t_grid)
    if (!std::isfinite(t)) throw InvalidInput("correlation_mc: times must be finite");
  const CounterRng rng(seed);
  const std::size_t T = t_grid.size();
  std::vector<GroupElement> flows;
  for (double t : t_grid) flows.push_back(geodesic(t));
  std::vector<double> f0(N), prod(N * T);
  parallel_for(N, threads, [&](std::size_t i) {
    const GroupElement g = modular_sample(rng, i);
    const double a = f(shortest_vector_length(g));
    f0[i] = a;
    for (std::size_t j = 0; j < T; ++j)
      prod[j * N + i] = a * f(shortest_vector_length(flows[j] * g));
  });

  CorrelationSeries out;
  out.N = N;
  out.seed = seed;
  const double Nd = static_cast<double>(N);
  const double Sf = quad::pairwise_sum(f0);
  out.mean = Sf / Nd;
  std::vector<double> theta(N);
  for (std::size_t j = 0; j < T; ++j) {
    const std::span<const double> p(prod.data() + j * N, N);
    const double Sp = quad::pairwise_sum(p);
    out.t.push_back(t_grid[j]);
    out.estimate.push_back(Sp / Nd - out.mean * out.mean);
    if (N == 1) {
      out.std_error.push_back(0.0);
      continue;
    }
    // Leave-one-out estimates.
    for (std::size_t i = 0; i < N; ++i) {
      const double m = (Sf - f0[i]) / (Nd - 1.0);
      theta[i] = (Sp - p[i]) / (Nd - 1.0) - m * m;
    }
    const double bar = quad::pairwise_sum(theta) / Nd;
    for (auto& th : theta) th = (th - bar) * (th - bar);
    out.std_error.push_back(std::sqrt((Nd - 1.0) / Nd * quad::pairwise_sum(theta)));
  }
  return out;
}

SlopeFit log_slope(const CorrelationSeries& s, double t_lo, double t_hi) {
  double sw = 0, st = 0, sy = 0, stt = 0, sty = 0;
  SlopeFit fit;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.t[i] < t_lo || s.t[i] > t_hi || !(s.estimate[i] > 0.0)) continue;
    const double rel = s.std_error[i] / s.estimate[i];
    const double w = rel > 0.0 ? 1.0 / (rel * rel) : 1.0;
    const double y = std::log(s.estimate[i]);
    sw += w;
    st += w * s.t[i];
    sy += w * y;
    stt += w * s.t[i] * s.t[i];
    sty += w * s.t[i] * y;
    ++fit.points;
  }
  const double det = sw * stt - st * st;
  if (fit.points < 2 || !(det > 0.0))
    throw InvalidInput("log_slope: need two positive estimates at distinct times");
  fit.slope = (sw * sty - st * sy) / det;
  fit.intercept = (stt * sy - st * sty) / det;
  fit.slope_error = std::sqrt(sw / det);
  return fit;
}

}  // namespace teich::dynamics
