#include "teich/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "teich/error.hpp"

namespace teich {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_lanczos(cplx z) {
  // Valid for Re z >= 1/2.
  z -= 1.0;
  cplx series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    series += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

}  // namespace

bool is_gamma_pole(cplx z) {
  if (std::abs(z.imag()) > 1e-14) return false;
  const double x = z.real();
  return x <= 0.5 && std::abs(x - std::round(x)) < 1e-14;
}

cplx log_gamma(cplx z) {
  if (is_gamma_pole(z)) throw DomainError("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    const cplx s = std::sin(std::numbers::pi * z);
    return std::log(std::numbers::pi) - std::log(s) - log_gamma_lanczos(1.0 - z);
  }
  return log_gamma_lanczos(z);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

}  // namespace teich
