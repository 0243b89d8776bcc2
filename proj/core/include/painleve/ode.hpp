#pragma once

#include <utility>

namespace painleve::ode {

/// A point (x, y, y') of a solution of y'' = 6 y^2 + x.
struct State {
  double x = 0.0;
  double y = 0.0;
  double dy = 0.0;
};

/// Laurent data at a double pole: location p and the free quartic coefficient h
/// of y = (x-p)^-2 - p/10 (x-p)^2 - 1/6 (x-p)^3 + h (x-p)^4 + ...
struct PoleData {
  double p = 0.0;
  double h = 0.0;
};

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double y_detect = 1e4;          ///< |y| that triggers pole handling
  double fit_lo = 0.05;           ///< |x - p| window used by the Laurent fit
  double fit_hi = 0.5;
  double restart_offset = 0.2;    ///< |x - p| where integration resumes past a pole
  int series_degree = 12;
  int max_poles = 10000;
  long max_steps = 20'000'000;

  /// Throws InvalidArgument if the invariants are violated.
  void validate() const;
};

/// (y', y'') for the first-order system.
std::pair<double, double> rhs(const State& s);

/// H = y'^2 / 2 - 2 y^3 - x y; along solutions dH/dx = -y.
double hamiltonian(const State& s);

}  // namespace painleve::ode
