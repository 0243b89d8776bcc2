#include "painleve/pole_fit.hpp"

#include <cmath>
#include <limits>

#include "painleve/errors.hpp"
#include "painleve/laurent.hpp"

namespace painleve::ode {

namespace {

// Forward-mode dual number carrying d/dp and d/dh, enough to push (p, h) through
// laurent_coefficients / laurent_value and get an exact Jacobian for Newton.
struct Dual {
  double v = 0.0;
  double dp = 0.0;
  double dh = 0.0;

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Dual(double value, double d_p, double d_h) : v(value), dp(d_p), dh(d_h) {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    dp += o.dp;
    dh += o.dh;
    return *this;
  }
};

Dual operator-(const Dual& a) { return {-a.v, -a.dp, -a.dh}; }
Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.dp + b.dp, a.dh + b.dh}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.dp - b.dp, a.dh - b.dh}; }
Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.dp * b.v + a.v * b.dp, a.dh * b.v + a.v * b.dh};
}
Dual operator/(const Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.dp - q * b.dp) * inv, (a.dh - q * b.dh) * inv};
}

}  // namespace

PoleFit detect_and_fit_pole(std::span<const State> tail, const IntegratorConfig& cfg, int direction) {
  if (tail.empty()) {
    throw Error(ErrorKind::FitIllConditioned, "no samples to fit a pole from");
  }
  const State& last = tail.back();
  if (!(last.y > 0.0)) {
    throw Error(ErrorKind::FitIllConditioned,
                "blow-up towards -infinity; real Painleve I poles have y -> +infinity");
  }
  if (last.dy == 0.0 || direction * last.dy <= 0.0) {
    throw Error(ErrorKind::FitIllConditioned, "solution is not approaching a pole");
  }

  const double p0 = last.x + 2.0 * last.y / last.dy;

  const State* chosen = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const State& s : tail) {
    const double t = std::abs(s.x - p0);
    if (t < cfg.fit_lo || t > cfg.fit_hi) continue;
    const double score = std::abs(t - cfg.restart_offset);
    if (score < best) {
      best = score;
      chosen = &s;
    }
  }
  if (chosen == nullptr) {
    throw Error(ErrorKind::FitIllConditioned, "no sample inside the Laurent fit band");
  }
  const State fs = *chosen;

  double p = p0;
  double h;
  {
    const double t = fs.x - p;
    const double t2 = t * t;
    h = (fs.y - (1.0 / t2 - p * t2 / 10.0 - t2 * t / 6.0)) / (t2 * t2);
  }

  bool converged = false;
  for (int it = 0; it < 40 && !converged; ++it) {
    const Dual pd(p, 1.0, 0.0);
    const Dual hd(h, 0.0, 1.0);
    const auto c = laurent_coefficients<Dual>(pd, hd, cfg.series_degree);
    const Dual t = Dual(fs.x) - pd;
    const auto v = laurent_value<Dual>(c, t);
    const double f0 = v.y.v - fs.y;
    const double f1 = v.dy.v - fs.dy;
    const double det = v.y.dp * v.dy.dh - v.y.dh * v.dy.dp;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
      throw Error(ErrorKind::FitIllConditioned, "singular Jacobian in the Laurent fit");
    }
    const double step_p = (f0 * v.dy.dh - f1 * v.y.dh) / det;
    const double step_h = (v.y.dp * f1 - v.dy.dp * f0) / det;
    p -= step_p;
    h -= step_h;
    converged = std::abs(step_p) <= 1e-15 * std::max(1.0, std::abs(p)) &&
                std::abs(step_h) <= 1e-12 * std::max(1.0, std::abs(h));
  }
  if (!std::isfinite(p) || !std::isfinite(h)) {
    throw Error(ErrorKind::FitIllConditioned, "Laurent fit diverged");
  }

  PoleFit fit;
  fit.pole = {p, h};
  fit.fit_state = fs;
  // laurent_hamiltonian(p, h') = H(fit_state) solved for h'; the h' dependence of the
  // O(t^9) tail is ignored.
  const double H_num = hamiltonian(fs);
  const double H_series = laurent_hamiltonian(fit.pole, cfg.series_degree, fs.x);
  fit.h_hamiltonian = h - (H_num - H_series) / 14.0;
  fit.disagreement = std::abs(fit.h_hamiltonian - h) / std::max(1.0, std::abs(h));
  fit.flagged = fit.disagreement > kHamiltonianCheckTol;
  return fit;
}

State seed_from_pole(const PoleData& pd, Side side, const IntegratorConfig& cfg) {
  const double x = side == Side::Left ? pd.p - cfg.restart_offset : pd.p + cfg.restart_offset;
  return laurent_eval(pd, cfg.series_degree, x);
}

}  // namespace painleve::ode
