#pragma once

#include <vector>

#include "painleve/stokes.hpp"

namespace painleve::asym {

using stokes::OscParams;
using stokes::SingParams;

/// Default |sin omega| below which the singular-family formulas are flagged as
/// too close to a pole to be trusted.
inline constexpr double kDefaultMaskEps = 0.1;

/// One evaluation of an asymptotic family at x < 0.
struct AsymEval {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;      ///< Hamiltonian
  double phase = 0.0;  ///< theta(x) or omega(x), unwrapped
  double pole_proximity = 1.0;  ///< |sin omega|; 1 for the oscillatory family
  bool near_pole = false;       ///< pole_proximity < mask_eps
};

/// 4 * 24^(1/4) / 5
double osc_phase_coefficient();
/// 2 * 24^(1/4) / 5
double sing_phase_coefficient();

/// theta(x) = (4 24^(1/4) / 5)(-x)^(5/4) - (5a/8) ln(-x) + phi
double phase_osc(double x, const OscParams& p);

/// y  ~ -sqrt(-x/6) + sqrt(a) (-24x)^(-1/8) cos theta
/// H  ~ -4(-x/6)^(3/2) + a(-3x/2)^(1/4) + sqrt(a) (-24x)^(-3/8) sin theta
AsymEval osc_eval(double x, const OscParams& p);
double osc_y(double x, const OscParams& p);
double osc_h(double x, const OscParams& p);

/// omega(x) = (2 24^(1/4) / 5)(-x)^(5/4) + (5b/8) ln(-x) + psi
double phase_sing(double x, const SingParams& p);
/// d omega / dx
double phase_sing_derivative(double x, const SingParams& p);

/// y  ~ -sqrt(-x/6) + (-x)^(1/2) / ((sqrt 6 / 3) sin^2 omega)
/// H  ~ -4(-x/6)^(3/2) - b(-24x)^(1/4) - (-3x/2)^(1/4) cot omega
/// Values are returned even when near_pole is set.
AsymEval sing_eval(double x, const SingParams& p, double mask_eps = kDefaultMaskEps);
double sing_y(double x, const SingParams& p);
double sing_h(double x, const SingParams& p);

/// Leading-order tronquee plus its exponentially small correction,
/// sqrt(-x/6) + (s_1 - s_{-1}) / (4 24^(1/4) sqrt(pi)) (-x)^(-1/8) exp(-(4 24^(1/4)/5)(-x)^(5/4)).
/// Throws NonRealCorrection when s_1 - s_{-1} is not real.
double separatrix_y(double x, Complex s1, Complex sm1);

struct PredictedPole {
  int n = 0;
  double x = 0.0;
};

/// Solves omega(x_n) = n pi for n in [n_lo, n_hi] by Newton's method in -x.
/// Throws NoConvergence if an iteration fails to converge in 50 steps and
/// InvalidArgument if n pi <= psi (no root on the negative axis).
std::vector<PredictedPole> predict_poles(const SingParams& p, int n_lo, int n_hi);

/// Smallest and largest n whose predicted pole lies in [x_min, x_max] (x_max < 0).
std::pair<int, int> pole_index_range(const SingParams& p, double x_min, double x_max);

}  // namespace painleve::asym
