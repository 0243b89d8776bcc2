#include <cmath>
#include <numbers>

#include <doctest.h>

#include "painleve/asymptotics.hpp"
#include "painleve/errors.hpp"
#include "painleve/stokes.hpp"

using namespace painleve;
using namespace painleve::asym;

namespace {
constexpr double kPi = std::numbers::pi;
const double kC = 1.7706910715205145479;  // 4 24^(1/4) / 5

SingParams zero_pole_params() { return stokes::sing_params(stokes::zero_pole_multipliers().at(2)); }
OscParams zero_ic_params() { return stokes::osc_params(stokes::zero_ic_multipliers().at(2)); }

// x < 0 with omega(x) = target, by bisection on [-200, -0.01].
double solve_sing_phase(const SingParams& p, double target) {
  double lo = -200.0, hi = -0.01;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phase_sing(mid, p) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_osc_phase(const OscParams& p, double target) {
  double lo = -200.0, hi = -1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phase_osc(mid, p) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("phase constants and phases") {
  CHECK(osc_phase_coefficient() == doctest::Approx(kC).epsilon(1e-15));
  CHECK(sing_phase_coefficient() == doctest::Approx(0.88534553576025727393).epsilon(1e-15));
  CHECK(phase_osc(-1.0, {0.0, 0.0, true}) == doctest::Approx(kC).epsilon(1e-15));
  CHECK(phase_osc(-1.0, {0.0, 1.0, true}) == doctest::Approx(kC + 1.0).epsilon(1e-15));
  CHECK(phase_osc(-16.0, {0.0, 0.0, true}) == doctest::Approx(56.662118).epsilon(1e-7));
  CHECK(phase_sing(-1.0, {0.0, 0.0}) == doctest::Approx(0.8853456).epsilon(1e-7));
  CHECK(phase_sing(-16.0, {0.0, 0.0}) == doctest::Approx(28.331059).epsilon(1e-7));
  CHECK(phase_sing(-1.0, {0.0, kPi}) == doctest::Approx(0.88534553576025727393 + kPi).epsilon(1e-15));
  // d omega/dx against a central difference
  const auto p = zero_pole_params();
  const double x = -23.7, dx = 1e-5;
  const double fd = (phase_sing(x + dx, p) - phase_sing(x - dx, p)) / (2 * dx);
  CHECK(phase_sing_derivative(x, p) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("oscillatory formulas") {
  const OscParams zero{0.0, 0.0, false};
  CHECK(osc_y(-6.0, zero) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(osc_h(-6.0, zero) == doctest::Approx(-4.0).epsilon(1e-15));

  const auto p = zero_ic_params();
  const double xq = solve_osc_phase(p, 41 * kPi / 2);
  CHECK(osc_y(xq, p) == doctest::Approx(-std::sqrt(-xq / 6)).epsilon(1e-9));
  const double x0 = solve_osc_phase(p, 40 * kPi);
  CHECK(osc_h(x0, p) ==
        doctest::Approx(-4 * std::pow(-x0 / 6, 1.5) + p.a * std::pow(-1.5 * x0, 0.25)).epsilon(1e-10));

  // the envelope bound, with equality at theta in pi Z
  for (double x = -0.5; x > -80.0; x -= 0.37) {
    const double r = (osc_y(x, p) + std::sqrt(-x / 6)) * std::pow(-24 * x, 0.125);
    CHECK(std::abs(r) <= std::sqrt(p.a) * (1 + 1e-12));
  }
  const double r0 = (osc_y(x0, p) + std::sqrt(-x0 / 6)) * std::pow(-24 * x0, 0.125);
  CHECK(std::abs(r0) == doctest::Approx(std::sqrt(p.a)).epsilon(1e-9));

  const AsymEval e = osc_eval(-12.5, p);
  CHECK(e.y == osc_y(-12.5, p));
  CHECK(e.h == osc_h(-12.5, p));
  CHECK_FALSE(e.near_pole);
  CHECK(e.pole_proximity == 1.0);
}

TEST_CASE("singular formulas") {
  const SingParams zero{0.0, 0.0};
  const double xm = solve_sing_phase(zero, 7 * kPi / 2);
  CHECK(sing_y(xm, zero) ==
        doctest::Approx(-std::sqrt(-xm / 6) + std::sqrt(1.5) * std::sqrt(-xm)).epsilon(1e-10));
  CHECK(sing_h(xm, zero) == doctest::Approx(-4 * std::pow(-xm / 6, 1.5)).epsilon(1e-9));

  const auto p = zero_pole_params();
  for (double x = -1.0; x > -60.0; x -= 0.53) {
    CHECK(sing_y(x, p) >= -std::sqrt(-x / 6) + std::sqrt(1.5) * std::sqrt(-x) - 1e-12);
  }

  const double xn = solve_sing_phase(p, 12 * kPi);
  const AsymEval at = sing_eval(xn, p);
  CHECK(at.near_pole);
  CHECK(at.pole_proximity < 1e-9);
  CHECK_FALSE(sing_eval(solve_sing_phase(p, 12.5 * kPi), p).near_pole);

  // residue of the Hamiltonian formula at a predicted pole: exactly 1 when b = 0,
  // otherwise off by the log term of omega', which is O(b (-x)^(-5/4))
  const double xz = predict_poles(zero, 12, 12).front().x;
  for (double t : {1e-5, 1e-6, 1e-7}) {
    CHECK((t * sing_h(xz + t, zero)) == doctest::Approx(1.0).epsilon(50 * t));
    CHECK((t * sing_h(xn + t, p)) == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("separatrix correction") {
  CHECK(separatrix_y(-6.0, {0.0, 0.5}, {0.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
  const auto T = stokes::tronquee_multipliers();
  CHECK(separatrix_y(-10.0, T.at(1), T.at(-1)) == doctest::Approx(std::sqrt(10.0 / 6)).epsilon(1e-15));
  const double x = -2.0;
  const double corr = separatrix_y(x, {1.0, 0.3}, {0.0, 0.3}) - std::sqrt(-x / 6);
  const double expected = 1.0 / (4 * std::pow(24.0, 0.25) * std::sqrt(kPi)) * std::pow(-x, -0.125) *
                          std::exp(-kC * std::pow(-x, 1.25));
  CHECK(corr == doctest::Approx(expected).epsilon(1e-12));
  try {
    separatrix_y(-1.0, {0.0, 1.0}, {0.0, 0.0});
    FAIL("expected NonRealCorrection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonRealCorrection);
  }
}

TEST_CASE("predicted pole lattice") {
  const SingParams zero{0.0, 0.0};
  for (const auto& pole : predict_poles(zero, 1, 20)) {
    const double closed = -std::pow(5 * pole.n * kPi / (2 * std::pow(24.0, 0.25)), 0.8);
    CHECK(pole.x == doctest::Approx(closed).epsilon(1e-13));
  }

  const auto p = zero_pole_params();
  const auto poles = predict_poles(p, 1, 60);
  REQUIRE(poles.size() == 60);
  CHECK(poles[9].n == 10);
  CHECK(poles[9].x == doctest::Approx(-17.206634616708954217).epsilon(1e-13));
  CHECK(poles[2].x == doctest::Approx(-6.4397632606658773539).epsilon(1e-13));
  for (std::size_t i = 0; i < poles.size(); ++i) {
    CHECK(std::abs(phase_sing(poles[i].x, p) - poles[i].n * kPi) < 1e-10);
    if (i + 1 < poles.size()) CHECK(poles[i + 1].x < poles[i].x);
  }
  // spacing follows pi / |omega'| within 10%
  for (std::size_t i = 5; i + 1 < poles.size(); ++i) {
    const double gap = poles[i].x - poles[i + 1].x;
    const double mid = 0.5 * (poles[i].x + poles[i + 1].x);
    CHECK(gap == doctest::Approx(kPi / std::abs(phase_sing_derivative(mid, p))).epsilon(0.1));
  }

  const auto [lo, hi] = pole_index_range(p, -30.0, -0.5);
  CHECK(lo == 1);
  CHECK(poles[hi - 1].x >= -30.0);
  CHECK(poles[hi].x < -30.0);

  CHECK_THROWS_AS(predict_poles(SingParams{0.0, 2 * kPi}, 1, 3), Error);
}
