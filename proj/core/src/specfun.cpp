#include "painleve/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "painleve/errors.hpp"

namespace painleve::specfun {

namespace {

// Lanczos approximation, g = 7, nine terms. Relative error of Gamma is
// below 2e-15 on Re z >= 1/2.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// log Gamma(z) for Re z >= 1/2. Every factor is continuous on that half plane
// and real on the real axis, so this is the principal branch there.
Complex log_gamma_right(Complex z) {
  const Complex w = z - 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    series += kLanczos[k] / (w + static_cast<double>(k));
  }
  const Complex t = w + kLanczosG + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (w + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::InvalidArgument, "log_gamma: non-finite argument");
  }
  if (z.real() < 0.5) {
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-12) {
      throw Error(ErrorKind::PoleOfGamma, "log_gamma: argument at a nonpositive integer");
    }
    // Shift into the right half plane with Gamma(z) = Gamma(z+n) / prod(z+k).
    // Principal logs of the factors place the cut on the negative real axis.
    const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
    Complex acc = log_gamma_right(z + static_cast<double>(shift));
    for (int k = 0; k < shift; ++k) {
      acc -= std::log(z + static_cast<double>(k));
    }
    return acc;
  }
  return log_gamma_right(z);
}

double reduce_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(theta, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double arg_gamma(Complex z) { return reduce_angle(log_gamma(z).imag()); }

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

}  // namespace painleve::specfun
