#include "painleve/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "painleve/errors.hpp"
#include "painleve/trajectory_io.hpp"

namespace painleve::harness {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kGapSlopeStart = 20.0;
}  // namespace

Preset zero_ic() {
  return {PresetKind::ZeroIC, "zero-ic", ode::State{0.0, 0.0, 0.0}, stokes::zero_ic_multipliers()};
}

Preset zero_pole() {
  return {PresetKind::ZeroPole, "zero-pole", ode::PoleData{0.0, 0.0}, stokes::zero_pole_multipliers()};
}

Preset custom(std::variant<ode::State, ode::PoleData> init, Complex s2) {
  return {PresetKind::Custom, "custom", init, stokes::complete_from_pair(s2, -std::conj(s2))};
}

Preset preset_by_name(const std::string& name) {
  if (name == "zero-ic") return zero_ic();
  if (name == "zero-pole") return zero_pole();
  throw Error(ErrorKind::InvalidArgument, "unknown preset '" + name + "' (expected zero-ic or zero-pole)");
}

AppendixB appendix_b_constants() {
  AppendixB k;
  const double norm = 1.0 / std::sqrt(4.0 * kPi / 5.0);
  k.c1 = norm * kI;
  k.c2 = norm * std::polar(1.0, -kPi / 5.0);
  k.c3 = kI / std::sqrt(4.0 / (5.0 * kPi));
  k.c2_tilde = -std::polar(1.0, 2.0 * kPi / 5.0) * k.c2;
  k.d3 = std::polar(1.0, -kPi / 5.0) * kI * k.c3 + kPi * k.c2_tilde;
  k.s0 = (k.c2 - k.c2_tilde) / k.c1;
  // Both connection matrices share the determinant c1 c3 since S_1 is unimodular.
  k.s1 = -k.c1 * k.d3 / (k.c1 * k.c3);
  return k;
}

stokes::StokesMultipliers appendix_b_stokes() {
  const AppendixB k = appendix_b_constants();
  stokes::StokesMultipliers S;
  S.at(0) = k.s0;
  S.at(1) = k.s1;
  S.at(-2) = kI * (1.0 + S.at(0) * S.at(1));       // k = 0
  S.at(-1) = (-kI * S.at(1) - 1.0) / S.at(-2);     // k = -2
  S.at(2) = kI * (1.0 + S.at(-1) * S.at(0));       // k = -1
  return S;
}

Envelope envelope_maxima(std::span<const double> grid, std::span<const double> residual,
                         std::span<const double> phase, std::span<const char> masked, double fit_start) {
  std::map<long, std::pair<double, double>> cells;  // cell -> (max |r|, -x)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (-grid[i] < fit_start) continue;
    const long k = static_cast<long>(std::floor(phase[i] / kPi));
    auto [it, inserted] = cells.try_emplace(k, -1.0, 0.0);
    if (masked[i] || !std::isfinite(residual[i])) continue;
    const double r = std::abs(residual[i]);
    if (r > it->second.first) it->second = {r, -grid[i]};
  }
  Envelope env;
  if (cells.size() < 3) return env;
  auto first = std::next(cells.begin());
  auto last = std::prev(cells.end());
  for (auto it = first; it != last; ++it) {
    if (it->second.first > 0.0) {
      env.x.push_back(it->second.second);
      env.value.push_back(it->second.first);
    }
  }
  return env;
}

CompareReport run_compare(const Preset& preset, double x_min, const ode::IntegratorConfig& cfg,
                          const CompareOptions& opt) {
  if (!(x_min <= -10.0)) {
    throw Error(ErrorKind::InvalidArgument, "run_compare needs x_min <= -10");
  }
  cfg.validate();
  CompareReport rep;
  rep.preset = preset.name;
  rep.x_min = x_min;
  rep.cls = stokes::classify(preset.multipliers);
  const Complex s2 = preset.multipliers.at(2);
  if (rep.cls == stokes::SolutionClass::Oscillatory) {
    rep.osc = stokes::osc_params(s2);
  } else if (rep.cls == stokes::SolutionClass::Singular) {
    rep.sing = stokes::sing_params(s2);
  } else {
    throw Error(ErrorKind::OutOfRegime, "no asymptotic comparison for the separatrix class");
  }

  const auto grid = ode::make_grid(opt.grid_start, x_min, opt.grid_step);
  rep.trajectory = std::visit([&](const auto& init) { return ode::integrate(init, x_min, cfg, grid); },
                              preset.init);

  std::vector<double> phase;
  std::size_t unmasked = 0;
  for (const auto& smp : rep.trajectory.dense) {
    const double x = smp.state.x;
    if (!(x < 0.0)) continue;
    const asym::AsymEval e = rep.cls == stokes::SolutionClass::Oscillatory
                                 ? asym::osc_eval(x, rep.osc)
                                 : asym::sing_eval(x, rep.sing, opt.mask_eps);
    rep.grid.push_back(x);
    rep.y_num.push_back(smp.state.y);
    rep.h_num.push_back(smp.H);
    rep.y_asym.push_back(e.y);
    rep.h_asym.push_back(e.h);
    rep.masked.push_back(e.near_pole ? 1 : 0);
    phase.push_back(e.phase);
    if (e.near_pole) {
      rep.resid_y.push_back(std::numeric_limits<double>::quiet_NaN());
      rep.resid_h.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      ++unmasked;
      rep.resid_y.push_back(smp.state.y - e.y);
      rep.resid_h.push_back(smp.H - e.h);
    }
  }
  if (unmasked < 10) {
    throw Error(ErrorKind::EmptyAfterMask, "fewer than 10 grid points left after masking");
  }

  const Envelope ey = envelope_maxima(rep.grid, rep.resid_y, phase, rep.masked, opt.fit_start);
  const Envelope eh = envelope_maxima(rep.grid, rep.resid_h, phase, rep.masked, opt.fit_start);
  rep.exp_y = power_law_slope(ey.x, ey.value);
  rep.exp_h = power_law_slope(eh.x, eh.value);

  if (rep.cls == stokes::SolutionClass::Singular && !rep.trajectory.poles.empty()) {
    const auto [n_lo, n_hi] = asym::pole_index_range(rep.sing, x_min - 2.0, -0.5);
    if (n_hi >= n_lo) {
      const auto predicted = asym::predict_poles(rep.sing, n_lo, n_hi);
      for (const auto& pf : rep.trajectory.poles) {
        const auto best = std::min_element(predicted.begin(), predicted.end(), [&](const auto& a, const auto& b) {
          return std::abs(a.x - pf.pole.p) < std::abs(b.x - pf.pole.p);
        });
        rep.pole_rows.push_back({best->n, pf.pole.p, best->x, std::abs(pf.pole.p - best->x)});
      }
    }
    std::vector<double> gx, gv;
    for (const auto& row : rep.pole_rows) {
      if (-row.x_pred > kGapSlopeStart && row.gap > 0.0) {
        gx.push_back(-row.x_pred);
        gv.push_back(row.gap);
      }
    }
    if (gx.size() >= 3) rep.gap_slope = power_law_slope(gx, gv);
  }
  return rep;
}

void write_grid_csv(std::ostream& out, const CompareReport& r) {
  out << "x,y_num,y_asym,h_num,h_asym,masked\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    out << io::format_real(r.grid[i]) << ',' << io::format_real(r.y_num[i]) << ','
        << io::format_real(r.y_asym[i]) << ',' << io::format_real(r.h_num[i]) << ','
        << io::format_real(r.h_asym[i]) << ',' << (r.masked[i] ? 1 : 0) << '\n';
  }
}

std::string report_json(const CompareReport& r, const std::string& traj_path, const std::string& grid_path) {
  nlohmann::ordered_json j;
  j["preset"] = r.preset;
  j["x_min"] = r.x_min;
  j["class"] = stokes::to_string(r.cls);
  if (r.cls == stokes::SolutionClass::Oscillatory) {
    j["params"] = {{"a", r.osc.a}, {"phi", r.osc.phi}};
  } else {
    j["params"] = {{"b", r.sing.b}, {"psi", r.sing.psi}};
  }
  j["exp_y"] = {{"value", r.exp_y.value}, {"stderr", r.exp_y.std_error}};
  j["exp_h"] = {{"value", r.exp_h.value}, {"stderr", r.exp_h.std_error}};
  if (r.gap_slope) {
    j["gap_slope"] = {{"value", r.gap_slope->value}, {"stderr", r.gap_slope->std_error}};
  } else {
    j["gap_slope"] = nullptr;
  }
  auto table = nlohmann::ordered_json::array();
  for (const auto& row : r.pole_rows) {
    table.push_back({{"n", row.n}, {"p_num", row.p_num}, {"x_pred", row.x_pred}, {"gap", row.gap}});
  }
  j["pole_table"] = table;
  j["files"] = {{"traj", traj_path}, {"grid", grid_path}};
  return j.dump(2);
}

double hamiltonian_flow_residual(std::span<const ode::Sample> dense, std::span<const double> poles,
                                 double exclusion) {
  auto near_pole = [&](double x) {
    return std::any_of(poles.begin(), poles.end(), [&](double p) { return std::abs(x - p) < exclusion; });
  };
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < dense.size(); ++i) {
    const double h = dense[i + 1].state.x - dense[i].state.x;
    const double span = dense[i + 2].state.x - dense[i - 2].state.x;
    if (h == 0.0 || std::abs(span - 4.0 * h) > 1e-9 * std::abs(h)) continue;
    if (near_pole(dense[i - 2].state.x) || near_pole(dense[i + 2].state.x) || near_pole(dense[i].state.x)) {
      continue;
    }
    const double dH = (-dense[i + 2].H + 8.0 * dense[i + 1].H - 8.0 * dense[i - 1].H + dense[i - 2].H) / (12.0 * h);
    worst = std::max(worst, std::abs(dH + dense[i].state.y));
  }
  return worst;
}

}  // namespace painleve::harness
