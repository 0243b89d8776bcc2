#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "painleve/asymptotics.hpp"
#include "painleve/fitting.hpp"
#include "painleve/integrator.hpp"
#include "painleve/stokes.hpp"

namespace painleve::harness {

enum class PresetKind { ZeroIC, ZeroPole, Custom };

struct Preset {
  PresetKind kind = PresetKind::Custom;
  std::string name;
  std::variant<ode::State, ode::PoleData> init;
  stokes::StokesMultipliers multipliers;
};

/// y(0) = y'(0) = 0; all s_k = 2i cos(2 pi/5).
Preset zero_ic();
/// Pole at 0 with h = 0; all s_k = -2i cos(pi/5).
Preset zero_pole();
/// Any start with a known s_2; the remaining multipliers follow from s_{-2} = -conj(s_2).
Preset custom(std::variant<ode::State, ode::PoleData> init, Complex s2);
/// "zero-ic" or "zero-pole"; throws InvalidArgument otherwise.
Preset preset_by_name(const std::string& name);

/// Constants of the WKB computation for the (p, h) = (0, 0) solution.
struct AppendixB {
  Complex c1, c2, c3;
  Complex c2_tilde;
  Complex d3;
  Complex s0, s1;
};

/// c1 = i (4pi/5)^(-1/2), c2 = (4pi/5)^(-1/2) e^(-i pi/5), c3 = i (4/(5pi))^(-1/2),
/// c2~ = -e^(2 pi i/5) c2, d3 = i e^(-i pi/5) c3 + pi c2~,
/// s0 = (c2 - c2~)/c1 and s1 = (C~ D^-1)_12 = -c1 d3 / det D with det D = det C~ = c1 c3.
AppendixB appendix_b_constants();

/// The full multiplier set: s0 and s1 from appendix_b_constants(), the rest from
/// 1 + s_k s_{k+1} = -i s_{k+3}.
stokes::StokesMultipliers appendix_b_stokes();

struct PoleRow {
  int n = 0;
  double p_num = 0.0;
  double x_pred = 0.0;
  double gap = 0.0;
};

struct CompareOptions {
  double grid_start = -1.0;  ///< grid runs from here down to x_min
  double grid_step = 0.01;
  double mask_eps = asym::kDefaultMaskEps;
  double fit_start = 10.0;   ///< envelope exponents use cells with -x >= fit_start
};

struct CompareReport {
  std::string preset;
  double x_min = 0.0;
  stokes::SolutionClass cls = stokes::SolutionClass::Oscillatory;
  stokes::OscParams osc;
  stokes::SingParams sing;

  std::vector<double> grid;
  std::vector<double> y_num, y_asym, h_num, h_asym;
  std::vector<char> masked;
  std::vector<double> resid_y, resid_h;  ///< NaN where masked

  FitValue exp_y;
  FitValue exp_h;
  std::vector<PoleRow> pole_rows;
  std::optional<FitValue> gap_slope;  ///< singular only, rows with -x_pred > 20

  ode::Trajectory trajectory;
};

/// Envelope maxima of |residual|: the largest unmasked |residual| in each cell
/// [k pi, (k+1) pi) of `phase`. Partial cells at either end of the window are dropped.
struct Envelope {
  std::vector<double> x;  ///< -x at the maximum
  std::vector<double> value;
};
Envelope envelope_maxima(std::span<const double> grid, std::span<const double> residual,
                         std::span<const double> phase, std::span<const char> masked, double fit_start);

/// Integrates the preset from its initial data to x_min on a uniform grid and
/// compares with the asymptotic family picked by its multipliers. Throws
/// EmptyAfterMask when fewer than 10 grid points survive the pole mask.
CompareReport run_compare(const Preset& preset, double x_min, const ode::IntegratorConfig& cfg,
                          const CompareOptions& opt = {});

/// `x,y_num,y_asym,h_num,h_asym,masked`
void write_grid_csv(std::ostream& out, const CompareReport& report);

/// {"preset", "x_min", "class", "params", "exp_y", "exp_h", "gap_slope", "pole_table", "files"}
std::string report_json(const CompareReport& report, const std::string& traj_path,
                        const std::string& grid_path);

/// max |dH/dx + y| by fourth-order central differences on a uniform dense grid,
/// skipping stencils that come within `exclusion` of a pole.
double hamiltonian_flow_residual(std::span<const ode::Sample> dense, std::span<const double> poles,
                                 double exclusion);

}  // namespace painleve::harness
