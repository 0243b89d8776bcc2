#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "painleve/ode.hpp"
#include "painleve/pole_fit.hpp"

namespace painleve::ode {

struct StepResult {
  State state;
  double error = 0.0;  ///< RMS of the local error over atol + rtol |y|; accept when <= 1
};

/// One Dormand-Prince 5(4) step of signed size h.
StepResult step(const State& s, double h, const IntegratorConfig& cfg);

struct Sample {
  State state;
  double H = 0.0;
};

struct Trajectory {
  std::vector<Sample> samples;  ///< accepted steps (and restart points after poles)
  std::vector<Sample> dense;    ///< values on the requested output grid
  std::vector<PoleFit> poles;   ///< poles crossed, in the order met
  int direction = -1;
  IntegratorConfig config;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Integrates from `init` to `x_end`, vaulting over every double pole met on the way:
/// once |y| >= y_detect the pole is fitted from the recent samples and integration
/// restarts from the series on the far side. Grid points (which must be monotone in
/// the direction of integration) are filled by quintic Hermite interpolation between
/// accepted steps and by the fitted series inside vaulted intervals.
Trajectory integrate(const State& init, double x_end, const IntegratorConfig& cfg,
                     std::span<const double> grid = {});

/// Starts from the series of a known pole, on the side facing x_end.
Trajectory integrate(const PoleData& init, double x_end, const IntegratorConfig& cfg,
                     std::span<const double> grid = {});

/// Uniform grid from `from` towards `to` (both included when reachable) with spacing `step`.
std::vector<double> make_grid(double from, double to, double step);

}  // namespace painleve::ode
