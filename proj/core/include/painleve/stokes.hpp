#pragma once

#include <array>
#include <string>

#include "painleve/specfun.hpp"

namespace painleve::stokes {

/// The five Stokes multipliers s_{-2} .. s_2 of a Painleve I transcendent.
/// Indices are cyclic: s_{k+5} = s_k.
struct StokesMultipliers {
  std::array<Complex, 5> s{};  // storage order: s_{-2}, s_{-1}, s_0, s_1, s_2

  Complex& at(int k);
  const Complex& at(int k) const;

  static StokesMultipliers uniform(Complex value);
};

enum class SolutionClass { Oscillatory, Separatrix, Singular };

const char* to_string(SolutionClass c);

/// Amplitude and phase of the oscillatory family (|s_2| < 1).
struct OscParams {
  double a = 0.0;
  double phi = 0.0;
  /// False when s_2 = 0: the oscillatory term vanishes and phi carries no meaning.
  bool phi_applicable = true;
};

/// Parameters of the singular family (|s_2| > 1).
struct SingParams {
  double b = 0.0;
  double psi = 0.0;
};

inline constexpr double kDefaultClassifyTol = 1e-9;

/// (19/8) ln 2 + (5/8) ln 3, the coefficient of a and b in the phase shifts.
double log_phase_constant();

/// Fills in s_0, s_1, s_{-1} from the pair (s_2, s_{-2}).
/// Throws DegenerateProduct when |1 + s_2 s_{-2}| <= 1e-12.
StokesMultipliers complete_from_pair(Complex s2, Complex sm2);

/// max_k |1 + s_k s_{k+1} + i s_{k+3}|.
double constraint_residual(const StokesMultipliers& S);

/// |conj s_2 + s_{-2}| + |conj s_0 + s_0| + |conj s_1 + s_{-1}|; zero for real solutions.
double reality_residual(const StokesMultipliers& S);

SolutionClass classify(const StokesMultipliers& S, double tol = kDefaultClassifyTol);
SolutionClass classify(Complex s2, double tol = kDefaultClassifyTol);

/// Connection formulas, s_2 -> (a, phi). Requires |s_2| < 1 (OutOfRegime otherwise).
/// phi is reduced to (-pi, pi].
OscParams osc_params(Complex s2);

/// Connection formulas, s_2 -> (b, psi). Requires |s_2| > 1.
SingParams sing_params(Complex s2);

/// Inverse of osc_params in the modulus: |s_2| = sqrt(1 - exp(-pi a)).
Complex invert_osc(const OscParams& p, double arg_s2);

/// Inverse of sing_params in the modulus: |s_2| = sqrt(1 + exp(2 pi b)).
Complex invert_sing(const SingParams& p, double arg_s2);

/// arg s_2 implied by the phase of each family; with the modulus it closes the loop
/// s_2 -> params -> s_2. For the singular family psi only matters mod pi, so
/// arg s_2 is recovered mod 2 pi.
double arg_s2_from_osc(const OscParams& p);
double arg_s2_from_sing(const SingParams& p);

// Older parametrisation of the same asymptotics, (d, chi) and (rho, sigma), with the
// constant phase offsets as they were originally published (3pi/4 and -pi/4).
// With `corrected` the offsets are replaced by -pi/4 and +pi/4, which makes
// d^2 = a, chi = phi, rho = b, sigma = psi.
struct LegacyOsc {
  double d = 0.0;
  double chi = 0.0;
};
struct LegacySing {
  double rho = 0.0;
  double sigma = 0.0;
};
LegacyOsc legacy_osc(Complex s2, bool corrected);
LegacySing legacy_sing(Complex s2, bool corrected);

// Preset multiplier sets.
/// (y(0), y'(0)) = (0, 0): all s_k = 2i cos(2 pi / 5).
StokesMultipliers zero_ic_multipliers();
/// Pole at 0 with vanishing free Laurent coefficient: all s_k = -2i cos(pi / 5).
StokesMultipliers zero_pole_multipliers();
/// The tronquee solution: s_{+-2} = i, s_{+-1} = i/2, s_0 = 0.
StokesMultipliers tronquee_multipliers();

/// {"s_m2":[re,im], "s_m1":..., "s_0":..., "s_1":..., "s_2":...}
std::string to_json(const StokesMultipliers& S);
/// Throws SchemaError on malformed input.
StokesMultipliers from_json(const std::string& text);

}  // namespace painleve::stokes
