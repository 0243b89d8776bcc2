#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "painleve/errors.hpp"
#include "painleve/harness.hpp"

using namespace painleve;
using namespace painleve::harness;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kTarget{0.0, -2.0 * std::cos(kPi / 5)};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no painleve::Error thrown");
  return ErrorKind::InvalidArgument;
}
}  // namespace

TEST_CASE("WKB constants for the (0, 0) pole") {
  const AppendixB k = appendix_b_constants();
  CHECK(std::abs(k.c1 * k.c3 - Complex(-1.25, 0.0)) < 1e-15);
  CHECK(std::abs(k.s0 - kTarget) < 1e-12);
  CHECK(std::abs(k.s1 - kTarget) < 1e-12);
  // the unnormalised product -c1 d3 lands on the conjugate value
  CHECK(std::abs(-k.c1 * k.d3 - std::conj(kTarget) * 1.25) < 1e-12);

  const auto S = appendix_b_stokes();
  for (int k2 = -2; k2 <= 2; ++k2) CHECK(std::abs(S.at(k2) - kTarget) < 1e-12);
  CHECK(stokes::constraint_residual(S) < 1e-14);
}

TEST_CASE("presets") {
  CHECK(zero_ic().name == "zero-ic");
  CHECK(zero_pole().kind == PresetKind::ZeroPole);
  CHECK(preset_by_name("zero-pole").name == "zero-pole");
  CHECK(kind_of([] { preset_by_name("nope"); }) == ErrorKind::InvalidArgument);
  for (const auto& p : {zero_ic(), zero_pole()}) CHECK(stokes::constraint_residual(p.multipliers) < 1e-14);
  CHECK(stokes::classify(zero_ic().multipliers) == stokes::SolutionClass::Oscillatory);
  CHECK(stokes::classify(zero_pole().multipliers) == stokes::SolutionClass::Singular);
  const Preset c = custom(ode::State{0.0, 0.1, 0.0}, Complex(0.0, 0.3));
  CHECK(c.kind == PresetKind::Custom);
  CHECK(stokes::reality_residual(c.multipliers) < 1e-15);
}

TEST_CASE("envelope maxima drop the partial end cells") {
  std::vector<double> grid, resid, phase;
  std::vector<char> masked;
  for (double x = -1.0; x > -50.0; x -= 0.01) {
    const double ph = 3.0 * (-x);
    grid.push_back(x);
    phase.push_back(ph);
    resid.push_back(std::pow(-x, -0.75) * std::sin(ph));
    masked.push_back(0);
  }
  const Envelope env = envelope_maxima(grid, resid, phase, masked, 10.0);
  REQUIRE(env.x.size() > 20);
  CHECK(env.x.front() > 10 * kPi / 3);
  for (std::size_t i = 0; i < env.x.size(); ++i) {
    CHECK(env.value[i] == doctest::Approx(std::pow(env.x[i], -0.75)).epsilon(1e-3));
  }
  CHECK(power_law_slope(env.x, env.value).value == doctest::Approx(-0.75).epsilon(1e-3));
}

TEST_CASE("run_compare on the oscillatory preset") {
  const auto r = run_compare(zero_ic(), -40.0, ode::IntegratorConfig{});
  CHECK(r.cls == stokes::SolutionClass::Oscillatory);
  CHECK(r.grid.size() == r.y_num.size());
  CHECK(r.grid.front() == -1.0);
  CHECK(r.grid.back() == doctest::Approx(-40.0));
  CHECK(r.exp_y.value < -0.6);
  CHECK(r.exp_y.value > -0.9);
  CHECK(r.pole_rows.empty());
  CHECK_FALSE(r.gap_slope.has_value());
  for (char m : r.masked) CHECK(m == 0);

  // x = -40 lies within C 40^(-3/4) of the formula
  const std::size_t last = r.grid.size() - 1;
  CHECK(std::abs(r.resid_y[last]) < 0.5 * std::pow(40.0, -0.75));
  CHECK(std::abs(r.resid_h[last]) < 2.0 / 40.0);

  std::ostringstream csv;
  write_grid_csv(csv, r);
  CHECK(csv.str().rfind("x,y_num,y_asym,h_num,h_asym,masked\n-1,", 0) == 0);
}

TEST_CASE("run_compare on the singular preset") {
  const auto r = run_compare(zero_pole(), -40.0, ode::IntegratorConfig{});
  CHECK(r.cls == stokes::SolutionClass::Singular);
  REQUIRE(r.pole_rows.size() == r.trajectory.poles.size());
  for (std::size_t i = 0; i < r.pole_rows.size(); ++i) {
    CHECK(r.pole_rows[i].n == static_cast<int>(i) + 1);
    CHECK(r.pole_rows[i].gap < 0.02);
  }
  std::size_t n_masked = 0;
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    if (r.masked[i]) {
      ++n_masked;
      CHECK(std::isnan(r.resid_y[i]));
    }
  }
  CHECK(n_masked > 0);
  CHECK(n_masked < r.grid.size() / 4);
  REQUIRE(r.gap_slope.has_value());
  CHECK(r.gap_slope->value < -0.75);

  const auto j = nlohmann::json::parse(report_json(r, "t.csv", "g.csv"));
  for (const char* key : {"preset", "x_min", "class", "params", "exp_y", "exp_h", "gap_slope", "pole_table", "files"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["exp_y"].contains("stderr"));
  CHECK(j["files"]["grid"] == "g.csv");
  CHECK(j["pole_table"].size() == r.pole_rows.size());
}

TEST_CASE("run_compare preconditions") {
  CHECK(kind_of([] { run_compare(zero_ic(), -5.0, ode::IntegratorConfig{}); }) == ErrorKind::InvalidArgument);
  CompareOptions all_masked;
  all_masked.mask_eps = 2.0;
  CHECK(kind_of([&] { run_compare(zero_pole(), -20.0, ode::IntegratorConfig{}, all_masked); }) ==
        ErrorKind::EmptyAfterMask);
  const Preset sep = custom(ode::State{0, 0, 0}, Complex(0.0, 1.0 + 1e-11));
  CHECK(kind_of([&] { run_compare(sep, -20.0, ode::IntegratorConfig{}); }) == ErrorKind::OutOfRegime);
}

TEST_CASE("reports are deterministic") {
  const auto a = run_compare(zero_pole(), -25.0, ode::IntegratorConfig{});
  const auto b = run_compare(zero_pole(), -25.0, ode::IntegratorConfig{});
  std::ostringstream ca, cb;
  write_grid_csv(ca, a);
  write_grid_csv(cb, b);
  CHECK(ca.str() == cb.str());
  CHECK(report_json(a, "t", "g") == report_json(b, "t", "g"));
}

TEST_CASE("parameter recovery improves with depth") {
  const auto osc_truth = stokes::osc_params(zero_ic().multipliers.at(2));
  const auto sing_truth = stokes::sing_params(zero_pole().multipliers.at(2));
  double prev_a = 1.0, prev_b = 1.0;
  for (double x_min : {-40.0, -100.0}) {
    const auto ri = run_compare(zero_ic(), x_min, ode::IntegratorConfig{});
    const double err_a = std::abs(fit_params(ri.trajectory, ri.cls).osc.a - osc_truth.a);
    const auto rp = run_compare(zero_pole(), x_min, ode::IntegratorConfig{});
    const double err_b = std::abs(fit_params(rp.trajectory, rp.cls).sing.b - sing_truth.b);
    CHECK(err_a < prev_a);
    CHECK(err_b < prev_b);
    prev_a = err_a;
    prev_b = err_b;
  }
  CHECK(prev_a < 0.01 * osc_truth.a);
  CHECK(prev_b < 0.01 * sing_truth.b);
}

TEST_CASE("Hamiltonian flow residual") {
  ode::IntegratorConfig cfg;
  cfg.rtol = 1e-12;
  cfg.atol = 1e-14;
  CompareOptions opt;
  opt.grid_step = 0.005;
  const auto r = run_compare(zero_ic(), -40.0, cfg, opt);
  CHECK(hamiltonian_flow_residual(r.trajectory.dense, {}, 0.5) < 1e-6);
  // a corrupted sample is caught
  auto dense = r.trajectory.dense;
  dense[dense.size() / 2].H += 1e-6;
  CHECK(hamiltonian_flow_residual(dense, {}, 0.5) > 1e-5);
}
