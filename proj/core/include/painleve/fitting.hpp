#pragma once

#include <optional>
#include <span>
#include <vector>

#include "painleve/integrator.hpp"
#include "painleve/stokes.hpp"

namespace painleve::harness {

struct FitValue {
  double value = 0.0;
  double std_error = 0.0;
};

/// Ordinary least squares for A c = b (A given column-major as `columns`).
/// Returns coefficients and their standard errors. Throws InsufficientCells when
/// there are no more rows than columns.
std::vector<FitValue> least_squares(std::span<const std::vector<double>> columns, std::span<const double> rhs);

/// Slope of log(y) against log(x) with its standard error.
FitValue power_law_slope(std::span<const double> x, std::span<const double> y);

/// A local extremum of (y + sqrt(-x/6)) (-24x)^(1/8), the rescaled oscillation.
struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Extrema located from sign changes of the derivative, which is computed from
/// (y, y') so no differencing of the samples is needed.
std::vector<Extremum> oscillation_extrema(std::span<const ode::Sample> samples);

/// Pole locations recovered from samples alone: at each local maximum of y above
/// `y_min`, p = x + 2y/y'.
std::vector<double> poles_from_samples(std::span<const ode::Sample> samples, double y_min = 100.0);

inline constexpr double kOscFitStart = 10.0;   ///< use extrema with -x >= this
inline constexpr double kSingFitStart = 5.0;   ///< use poles with -p >= this
inline constexpr int kMinFitFeatures = 5;

struct FitResult {
  stokes::SolutionClass cls = stokes::SolutionClass::Oscillatory;
  stokes::OscParams osc;
  stokes::SingParams sing;
  FitValue amplitude;  ///< a or b with its standard error
  FitValue phase;      ///< phi or psi with its standard error
  int features = 0;    ///< extrema or poles used
  Complex s2;          ///< s_2 reconstructed from the fitted parameters
};

/// Oscillatory: a is the mean square of the rescaled oscillation at its extrema and
/// phi the circular mean of k pi - (theta(x_k) - phi) over the extrema, the parity of k
/// read off the sign of the extremum.
FitResult fit_oscillatory(std::span<const ode::Sample> samples);

/// Singular: with consecutive integers n_j attached to the poles, regress
///   n_j pi - (2 24^(1/4)/5)(-p_j)^(5/4)  on  ((5/8) ln(-p_j), 1, (-p_j)^(-5/4)).
/// The last column absorbs the next order of the phase so that b is not biased by
/// the pole-position error. psi is only defined mod pi and is reported in (-pi/2, pi/2].
FitResult fit_singular(std::span<const double> pole_positions);

/// Dispatches on `cls`: uses the trajectory's own poles when it has any, otherwise
/// recovers them from the samples. Prefers dense samples over accepted steps.
FitResult fit_params(const ode::Trajectory& traj, stokes::SolutionClass cls);
FitResult fit_params(std::span<const ode::Sample> samples, stokes::SolutionClass cls);

}  // namespace painleve::harness
