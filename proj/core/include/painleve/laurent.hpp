#pragma once

#include <vector>

#include "painleve/ode.hpp"

namespace painleve::ode {

/// Coefficients c_{-2} .. c_degree of the Laurent expansion at a pole; element i holds
/// c_{i-2}. Substituting the series into y'' = 6y^2 + x gives, for n >= 5,
///   (n(n-1) - 12) c_n = 6 sum_{i+j=n-2, i,j >= -1} c_i c_j
/// and n = 4 is the resonance where h enters freely.
template <class Real>
std::vector<Real> laurent_coefficients(const Real& p, const Real& h, int degree) {
  std::vector<Real> c(static_cast<std::size_t>(degree + 3), Real(0));
  auto at = [&c](int k) -> Real& { return c[static_cast<std::size_t>(k + 2)]; };
  at(-2) = Real(1);
  if (degree >= 2) at(2) = -p / Real(10);
  if (degree >= 3) at(3) = Real(-1) / Real(6);
  if (degree >= 4) at(4) = h;
  for (int n = 5; n <= degree; ++n) {
    const int m = n - 2;
    Real sum(0);
    for (int i = -1; i <= m + 1; ++i) sum += at(i) * at(m - i);
    at(n) = Real(6) * sum / Real(n * (n - 1) - 12);
  }
  return c;
}

/// y, y', y'' of the truncated series at offset t = x - p != 0.
template <class Real>
struct LaurentValue {
  Real y;
  Real dy;
  Real ddy;
};

template <class Real>
LaurentValue<Real> laurent_value(const std::vector<Real>& c, const Real& t) {
  // Horner on t^(k+2) keeps the evaluation free of negative powers until the end.
  Real y(0), dy(0), ddy(0);
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    const int k = i - 2;
    y = y * t + c[static_cast<std::size_t>(i)];
    dy = dy * t + Real(k) * c[static_cast<std::size_t>(i)];
    ddy = ddy * t + Real(k * (k - 1)) * c[static_cast<std::size_t>(i)];
  }
  const Real t2 = t * t;
  return {y / t2, dy / (t2 * t), ddy / (t2 * t2)};
}

/// Double-precision coefficients; throws DegreeTooSmall when degree < 4.
std::vector<double> laurent_coeffs(const PoleData& pd, int degree);

/// The truncated series as a State at x; throws AtPole when x == p.
State laurent_eval(const PoleData& pd, int degree, double x);

/// Hamiltonian of the series, H = 1/t - 14h - sum_{k>=2} c_k t^(k+1)/(k+1),
/// obtained by integrating dH/dx = -y term by term.
double laurent_hamiltonian(const PoleData& pd, int degree, double x);

}  // namespace painleve::ode
