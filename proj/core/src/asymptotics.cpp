#include "painleve/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "painleve/errors.hpp"

namespace painleve::asym {

namespace {

constexpr double kPi = std::numbers::pi;

void require_negative(double x, const char* where) {
  if (!(x < 0.0)) {
    throw Error(ErrorKind::InvalidArgument, std::string(where) + ": x must be negative");
  }
}

}  // namespace

double osc_phase_coefficient() { return 0.8 * std::pow(24.0, 0.25); }
double sing_phase_coefficient() { return 0.4 * std::pow(24.0, 0.25); }

double phase_osc(double x, const OscParams& p) {
  require_negative(x, "phase_osc");
  const double X = -x;
  return osc_phase_coefficient() * std::pow(X, 1.25) - 0.625 * p.a * std::log(X) + p.phi;
}

AsymEval osc_eval(double x, const OscParams& p) {
  const double theta = phase_osc(x, p);
  const double X = -x;
  const double amp = std::sqrt(p.a);
  AsymEval e;
  e.x = x;
  e.phase = theta;
  e.y = -std::sqrt(X / 6.0) + amp * std::pow(24.0 * X, -0.125) * std::cos(theta);
  e.h = -4.0 * std::pow(X / 6.0, 1.5) + p.a * std::pow(1.5 * X, 0.25) +
        amp * std::pow(24.0 * X, -0.375) * std::sin(theta);
  return e;
}

double osc_y(double x, const OscParams& p) { return osc_eval(x, p).y; }
double osc_h(double x, const OscParams& p) { return osc_eval(x, p).h; }

double phase_sing(double x, const SingParams& p) {
  require_negative(x, "phase_sing");
  const double X = -x;
  return sing_phase_coefficient() * std::pow(X, 1.25) + 0.625 * p.b * std::log(X) + p.psi;
}

double phase_sing_derivative(double x, const SingParams& p) {
  require_negative(x, "phase_sing_derivative");
  const double X = -x;
  return -(1.25 * sing_phase_coefficient() * std::pow(X, 0.25) + 0.625 * p.b / X);
}

AsymEval sing_eval(double x, const SingParams& p, double mask_eps) {
  const double omega = phase_sing(x, p);
  const double X = -x;
  const double s = std::sin(omega);
  AsymEval e;
  e.x = x;
  e.phase = omega;
  e.pole_proximity = std::abs(s);
  e.near_pole = e.pole_proximity < mask_eps;
  e.y = -std::sqrt(X / 6.0) + std::sqrt(X) / (std::sqrt(6.0) / 3.0 * s * s);
  e.h = -4.0 * std::pow(X / 6.0, 1.5) - p.b * std::pow(24.0 * X, 0.25) -
        std::pow(1.5 * X, 0.25) * std::cos(omega) / s;
  return e;
}

double sing_y(double x, const SingParams& p) { return sing_eval(x, p).y; }
double sing_h(double x, const SingParams& p) { return sing_eval(x, p).h; }

double separatrix_y(double x, Complex s1, Complex sm1) {
  require_negative(x, "separatrix_y");
  const Complex diff = s1 - sm1;
  if (std::abs(diff.imag()) > 1e-10) {
    throw Error(ErrorKind::NonRealCorrection, "s_1 - s_{-1} must be real");
  }
  const double X = -x;
  const double c = 4.0 * std::pow(24.0, 0.25);
  return std::sqrt(X / 6.0) + diff.real() / (c * std::sqrt(kPi)) * std::pow(X, -0.125) *
                                  std::exp(-osc_phase_coefficient() * std::pow(X, 1.25));
}

namespace {

// Root of omega(-X) = target in X > 0.
double solve_pole(const SingParams& p, double target) {
  const double c = sing_phase_coefficient();
  double X = std::pow((target - p.psi) / c, 0.8);
  for (int it = 0; it < 50; ++it) {
    const double F = c * std::pow(X, 1.25) + 0.625 * p.b * std::log(X) + p.psi - target;
    const double dF = 1.25 * c * std::pow(X, 0.25) + 0.625 * p.b / X;
    if (!(dF > 0.0)) break;
    double next = X - F / dF;
    if (!(next > 0.0)) next = 0.5 * X;
    const bool done = std::abs(next - X) <= 4e-15 * X;
    X = next;
    if (done) {
      const double resid = std::abs(c * std::pow(X, 1.25) + 0.625 * p.b * std::log(X) + p.psi - target);
      if (resid < 1e-10) return X;
      break;
    }
  }
  throw Error(ErrorKind::NoConvergence, "predict_poles: Newton iteration did not converge");
}

}  // namespace

std::vector<PredictedPole> predict_poles(const SingParams& p, int n_lo, int n_hi) {
  std::vector<PredictedPole> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double target = n * kPi;
    if (!(target > p.psi)) {
      throw Error(ErrorKind::InvalidArgument, "predict_poles: n pi must exceed psi");
    }
    out.push_back({n, -solve_pole(p, target)});
  }
  return out;
}

std::pair<int, int> pole_index_range(const SingParams& p, double x_min, double x_max) {
  // Assumes omega is increasing in -x on [x_min, x_max].
  const int lo = static_cast<int>(std::ceil(phase_sing(x_max, p) / kPi));
  const int hi = static_cast<int>(std::floor(phase_sing(x_min, p) / kPi));
  return {std::max(lo, static_cast<int>(std::floor(p.psi / kPi)) + 1), hi};
}

}  // namespace painleve::asym
