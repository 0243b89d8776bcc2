#include "painleve/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "painleve/errors.hpp"
#include "painleve/laurent.hpp"

namespace painleve::ode {

void IntegratorConfig::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorKind::InvalidArgument, what); };
  if (!(rtol > 0.0) || !(atol > 0.0)) fail("rtol and atol must be positive");
  if (!(h_init > 0.0)) fail("h_init must be positive");
  if (!(y_detect > 0.0)) fail("y_detect must be positive");
  if (!(0.0 < fit_lo && fit_lo < fit_hi)) fail("fit band must satisfy 0 < lo < hi");
  if (!(restart_offset >= fit_lo && restart_offset <= fit_hi)) fail("restart_offset must lie in the fit band");
  if (series_degree < 6) fail("series_degree must be at least 6");
  if (max_poles < 0 || max_steps <= 0) fail("max_poles / max_steps must be positive");
}

std::pair<double, double> rhs(const State& s) { return {s.dy, 6.0 * s.y * s.y + s.x}; }

double hamiltonian(const State& s) { return 0.5 * s.dy * s.dy - 2.0 * s.y * s.y * s.y - s.x * s.y; }

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Deriv {
  double y;
  double dy;
};

Deriv f(double x, double y, double dy) { return {dy, 6.0 * y * y + x}; }

double second_derivative(const State& s) { return 6.0 * s.y * s.y + s.x; }

// Quintic Hermite interpolation. y'' = 6y^2 + x and y''' = 12 y y' + 1 are known exactly
// at both ends, so y and y' each get a degree-5 interpolant matching three derivatives.
State hermite(const State& a, const State& b, double x) {
  const double hh = b.x - a.x;
  const double s = (x - a.x) / hh;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double p0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double d0 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double dd0 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
  const double p1 = 10 * s3 - 15 * s4 + 6 * s5;
  const double d1 = -4 * s3 + 7 * s4 - 3 * s5;
  const double dd1 = 0.5 * (s3 - 2 * s4 + s5);
  auto blend = [&](double f0, double g0, double k0, double f1, double g1, double k1) {
    return p0 * f0 + hh * (d0 * g0 + d1 * g1) + hh * hh * (dd0 * k0 + dd1 * k1) + p1 * f1;
  };
  const double ya2 = second_derivative(a), yb2 = second_derivative(b);
  const double ya3 = 12 * a.y * a.dy + 1, yb3 = 12 * b.y * b.dy + 1;
  State out;
  out.x = x;
  out.y = blend(a.y, a.dy, ya2, b.y, b.dy, yb2);
  out.dy = blend(a.dy, ya2, ya3, b.dy, yb2, yb3);
  return out;
}

class Driver {
 public:
  Driver(double x_end, const IntegratorConfig& cfg, std::span<const double> grid, int direction)
      : x_end_(x_end), cfg_(cfg), grid_(grid), dir_(direction) {
    traj_.direction = direction;
    traj_.config = cfg;
  }

  // Drops grid points that lie behind the starting point.
  void skip_grid_before(double x0) {
    while (gi_ < grid_.size() && dir_ * (grid_[gi_] - x0) < 0.0) ++gi_;
  }

  // Emits grid points up to and including `upto` through `eval`.
  template <class Eval>
  void emit_until(double upto, Eval&& eval) {
    while (gi_ < grid_.size() && dir_ * (grid_[gi_] - upto) <= 0.0) {
      if (auto s = eval(grid_[gi_])) traj_.dense.push_back({*s, hamiltonian(*s)});
      ++gi_;
    }
  }

  void emit_series(const PoleData& pd, double upto) {
    emit_until(upto, [&](double x) -> std::optional<State> {
      if (x == pd.p) return std::nullopt;
      return laurent_eval(pd, cfg_.series_degree, x);
    });
  }

  void push_sample(const State& s) { traj_.samples.push_back({s, hamiltonian(s)}); }

  Trajectory run(State s) {
    if (!(std::abs(s.y) < cfg_.y_detect)) {
      throw Error(ErrorKind::InvalidArgument, "initial |y| must be below y_detect");
    }
    push_sample(s);
    std::vector<State> tail{s};
    double h = dir_ * cfg_.h_init;
    double err_prev = 1e-4;
    bool last_rejected = false;
    long steps = 0;

    while (dir_ * (x_end_ - s.x) > 0.0) {
      if (++steps > cfg_.max_steps) {
        throw Error(ErrorKind::StepUnderflow, "step budget exhausted");
      }
      if (std::abs(h) > std::abs(x_end_ - s.x)) h = x_end_ - s.x;
      if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(s.x))) {
        throw Error(ErrorKind::StepUnderflow, "required step below 1e-14");
      }
      const StepResult r = step(s, h, cfg_);
      if (!(r.error <= 1.0) || !std::isfinite(r.state.y) || !std::isfinite(r.state.dy)) {
        ++traj_.rejected_steps;
        const double factor = std::isfinite(r.error) ? std::max(0.2, 0.9 * std::pow(r.error, -0.2)) : 0.2;
        h *= factor;
        last_rejected = true;
        continue;
      }

      const State prev = s;
      s = r.state;
      if (std::abs(x_end_ - s.x) <= 1e-15 * std::max(1.0, std::abs(x_end_))) s.x = x_end_;
      ++traj_.accepted_steps;
      emit_until(s.x, [&](double x) -> std::optional<State> { return hermite(prev, s, x); });
      push_sample(s);
      tail.push_back(s);

      const double err = std::max(r.error, 1e-10);
      double factor = 0.9 * std::pow(err, -0.17) * std::pow(err_prev, 0.04);
      factor = std::clamp(factor, 0.2, 5.0);
      if (last_rejected) factor = std::min(factor, 1.0);
      err_prev = std::max(r.error, 1e-4);
      last_rejected = false;
      h *= factor;

      const bool approaching = dir_ * s.dy * (s.y > 0 ? 1.0 : -1.0) > 0.0;
      if (std::abs(s.y) >= cfg_.y_detect && approaching) {
        if (s.y < 0.0) {
          throw Error(ErrorKind::FitIllConditioned, "solution diverges to -infinity");
        }
        const PoleFit fit = detect_and_fit_pole(tail, cfg_, dir_);
        traj_.poles.push_back(fit);
        if (static_cast<long>(traj_.poles.size()) > cfg_.max_poles) {
          throw Error(ErrorKind::MaxPolesExceeded, "more poles than max_poles");
        }
        const double x_restart = fit.pole.p + dir_ * cfg_.restart_offset;
        if (dir_ * (x_end_ - x_restart) <= 0.0) {
          emit_series(fit.pole, x_end_);
          s = laurent_eval(fit.pole, cfg_.series_degree, x_end_);
          push_sample(s);
          break;
        }
        emit_series(fit.pole, x_restart);
        s = seed_from_pole(fit.pole, dir_ < 0 ? Side::Left : Side::Right, cfg_);
        push_sample(s);
        tail.assign(1, s);
        h = dir_ * cfg_.h_init;
        err_prev = 1e-4;
      }
    }
    return std::move(traj_);
  }

 private:
  double x_end_;
  IntegratorConfig cfg_;
  std::span<const double> grid_;
  std::size_t gi_ = 0;
  int dir_;
  Trajectory traj_;
};

int direction_of(double from, double to) {
  if (!(to != from) || !std::isfinite(to) || !std::isfinite(from)) {
    throw Error(ErrorKind::InvalidArgument, "x_end must differ from the starting point");
  }
  return to > from ? 1 : -1;
}

}  // namespace

StepResult step(const State& s, double h, const IntegratorConfig& cfg) {
  const double x = s.x, y = s.y, v = s.dy;
  const Deriv k1 = f(x, y, v);
  const Deriv k2 = f(x + c2 * h, y + h * a21 * k1.y, v + h * a21 * k1.dy);
  const Deriv k3 = f(x + c3 * h, y + h * (a31 * k1.y + a32 * k2.y), v + h * (a31 * k1.dy + a32 * k2.dy));
  const Deriv k4 = f(x + c4 * h, y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y),
                     v + h * (a41 * k1.dy + a42 * k2.dy + a43 * k3.dy));
  const Deriv k5 = f(x + c5 * h, y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y),
                     v + h * (a51 * k1.dy + a52 * k2.dy + a53 * k3.dy + a54 * k4.dy));
  const Deriv k6 = f(x + h, y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y),
                     v + h * (a61 * k1.dy + a62 * k2.dy + a63 * k3.dy + a64 * k4.dy + a65 * k5.dy));
  State out;
  out.x = x + h;
  out.y = y + h * (a71 * k1.y + a73 * k3.y + a74 * k4.y + a75 * k5.y + a76 * k6.y);
  out.dy = v + h * (a71 * k1.dy + a73 * k3.dy + a74 * k4.dy + a75 * k5.dy + a76 * k6.dy);
  const Deriv k7 = f(out.x, out.y, out.dy);

  const double err_y = h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y);
  const double err_v = h * (e1 * k1.dy + e3 * k3.dy + e4 * k4.dy + e5 * k5.dy + e6 * k6.dy + e7 * k7.dy);
  const double sc_y = cfg.atol + cfg.rtol * std::max(std::abs(y), std::abs(out.y));
  const double sc_v = cfg.atol + cfg.rtol * std::max(std::abs(v), std::abs(out.dy));
  const double ry = err_y / sc_y, rv = err_v / sc_v;
  return {out, std::sqrt(0.5 * (ry * ry + rv * rv))};
}

Trajectory integrate(const State& init, double x_end, const IntegratorConfig& cfg,
                     std::span<const double> grid) {
  cfg.validate();
  const int dir = direction_of(init.x, x_end);
  Driver d(x_end, cfg, grid, dir);
  d.skip_grid_before(init.x);
  return d.run(init);
}

Trajectory integrate(const PoleData& init, double x_end, const IntegratorConfig& cfg,
                     std::span<const double> grid) {
  cfg.validate();
  const int dir = direction_of(init.p, x_end);
  if (std::abs(x_end - init.p) <= cfg.restart_offset) {
    throw Error(ErrorKind::InvalidArgument, "x_end lies inside the seed offset of the pole");
  }
  Driver d(x_end, cfg, grid, dir);
  d.skip_grid_before(init.p);
  const State start = seed_from_pole(init, dir < 0 ? Side::Left : Side::Right, cfg);
  d.emit_series(init, start.x);
  return d.run(start);
}

std::vector<double> make_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
  std::vector<double> g;
  const double dir = to >= from ? 1.0 : -1.0;
  const auto n = static_cast<long>(std::floor(std::abs(to - from) / step + 1e-9));
  g.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) g.push_back(from + dir * step * static_cast<double>(i));
  return g;
}

}  // namespace painleve::ode
