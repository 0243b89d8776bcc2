#pragma once

#include <span>

#include "painleve/ode.hpp"

namespace painleve::ode {

enum class Side { Left, Right };

struct PoleFit {
  PoleData pole;
  State fit_state;           ///< integrator sample the series was matched to
  double h_hamiltonian = 0;  ///< h implied by the numeric Hamiltonian at fit_state
  double disagreement = 0;   ///< |h - h_hamiltonian| / max(1, |h|)
  bool flagged = false;      ///< disagreement above kHamiltonianCheckTol
};

inline constexpr double kHamiltonianCheckTol = 1e-4;

/// Locates the pole that `tail` (accepted states, ordered along `direction`) is
/// running into and fits its Laurent data.
///
/// p starts from x + 2y/y' at the newest state, which is exact to O((x-p)^6) on the
/// series. The fit state is the sample in [fit_lo, fit_hi] closest to restart_offset;
/// h starts from the degree-4 residual there, then (p, h) are refined together by
/// Newton on the full series so that it reproduces (y, y') at the fit state.
/// Throws FitIllConditioned if the blow-up is towards -infinity or no sample lies in
/// the fit band.
PoleFit detect_and_fit_pole(std::span<const State> tail, const IntegratorConfig& cfg, int direction);

/// Series state at p - restart_offset (Left) or p + restart_offset (Right).
State seed_from_pole(const PoleData& pd, Side side, const IntegratorConfig& cfg);

}  // namespace painleve::ode
