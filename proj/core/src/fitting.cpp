#include "painleve/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "painleve/asymptotics.hpp"
#include "painleve/errors.hpp"

namespace painleve::harness {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<FitValue> least_squares(std::span<const std::vector<double>> columns, std::span<const double> rhs) {
  const std::size_t k = columns.size();
  const std::size_t m = rhs.size();
  if (k == 0 || m <= k) {
    throw Error(ErrorKind::InsufficientCells, "least squares needs more rows than unknowns");
  }
  for (const auto& col : columns) {
    if (col.size() != m) throw Error(ErrorKind::InvalidArgument, "least squares: ragged columns");
  }
  // Modified Gram-Schmidt, A = QR.
  std::vector<std::vector<double>> q(columns.begin(), columns.end());
  std::vector<std::vector<double>> r(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0.0;
      for (std::size_t row = 0; row < m; ++row) dot += q[i][row] * q[j][row];
      r[i][j] = dot;
      for (std::size_t row = 0; row < m; ++row) q[j][row] -= dot * q[i][row];
    }
    double norm = 0.0;
    for (double v : q[j]) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw Error(ErrorKind::InsufficientCells, "least squares: rank-deficient design");
    r[j][j] = norm;
    for (double& v : q[j]) v /= norm;
  }
  std::vector<double> qtb(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t row = 0; row < m; ++row) qtb[j] += q[j][row] * rhs[row];
  }
  std::vector<double> c(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double acc = qtb[jj];
    for (std::size_t i = jj + 1; i < k; ++i) acc -= r[jj][i] * c[i];
    c[jj] = acc / r[jj][jj];
  }
  double ss = 0.0;
  for (std::size_t row = 0; row < m; ++row) {
    double fit = 0.0;
    for (std::size_t j = 0; j < k; ++j) fit += columns[j][row] * c[j];
    ss += (rhs[row] - fit) * (rhs[row] - fit);
  }
  const double sigma2 = ss / static_cast<double>(m - k);
  // R^{-1}, upper triangular; diag of (R^T R)^{-1} is the row sums of squares.
  std::vector<std::vector<double>> rinv(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    rinv[j][j] = 1.0 / r[j][j];
    for (std::size_t i = j; i-- > 0;) {
      double acc = 0.0;
      for (std::size_t l = i + 1; l <= j; ++l) acc += r[i][l] * rinv[l][j];
      rinv[i][j] = -acc / r[i][i];
    }
  }
  std::vector<FitValue> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    double var = 0.0;
    for (std::size_t j = i; j < k; ++j) var += rinv[i][j] * rinv[i][j];
    out[i] = {c[i], std::sqrt(sigma2 * var)};
  }
  return out;
}

FitValue power_law_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "power_law_slope: size mismatch");
  std::vector<std::vector<double>> cols(2);
  std::vector<double> rhs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    cols[0].push_back(std::log(x[i]));
    cols[1].push_back(1.0);
    rhs.push_back(std::log(y[i]));
  }
  return least_squares(cols, rhs)[0];
}

namespace {

struct Rescaled {
  double r;
  double dr;
};

Rescaled rescaled(const ode::State& s) {
  const double X = -s.x;
  const double root = std::sqrt(X / 6.0);
  const double scale = std::pow(24.0 * X, 0.125);
  const double r = (s.y + root) * scale;
  const double dr = (s.dy - 1.0 / (12.0 * root)) * scale - r / (8.0 * X);
  return {r, dr};
}

}  // namespace

std::vector<Extremum> oscillation_extrema(std::span<const ode::Sample> samples) {
  std::vector<Extremum> out;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto& a = samples[i].state;
    const auto& b = samples[i + 1].state;
    if (!(a.x < 0.0) || !(b.x < 0.0) || a.x == b.x) continue;
    const Rescaled ra = rescaled(a), rb = rescaled(b);
    if (!(ra.dr * rb.dr < 0.0)) continue;
    const double hh = b.x - a.x;
    const double s = ra.dr / (ra.dr - rb.dr);
    const double s2 = s * s, s3 = s2 * s;
    const double value = (2 * s3 - 3 * s2 + 1) * ra.r + (s3 - 2 * s2 + s) * hh * ra.dr +
                         (-2 * s3 + 3 * s2) * rb.r + (s3 - s2) * hh * rb.dr;
    out.push_back({a.x + s * hh, value});
  }
  return out;
}

std::vector<double> poles_from_samples(std::span<const ode::Sample> samples, double y_min) {
  std::vector<double> poles;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const auto& s = samples[i].state;
    if (s.y > y_min && s.y > samples[i - 1].state.y && s.y >= samples[i + 1].state.y && s.dy != 0.0) {
      poles.push_back(s.x + 2.0 * s.y / s.dy);
    }
  }
  return poles;
}

FitResult fit_oscillatory(std::span<const ode::Sample> samples) {
  std::vector<Extremum> ext;
  for (const auto& e : oscillation_extrema(samples)) {
    if (-e.x >= kOscFitStart) ext.push_back(e);
  }
  if (static_cast<int>(ext.size()) < kMinFitFeatures) {
    throw Error(ErrorKind::InsufficientCells, "too few oscillation extrema beyond -x = 10");
  }
  const double n = static_cast<double>(ext.size());
  double mean = 0.0;
  for (const auto& e : ext) mean += e.value * e.value;
  mean /= n;
  double var = 0.0;
  for (const auto& e : ext) var += (e.value * e.value - mean) * (e.value * e.value - mean);
  var /= std::max(1.0, n - 1.0);

  FitResult fr;
  fr.cls = stokes::SolutionClass::Oscillatory;
  fr.osc.a = mean;
  fr.amplitude = {mean, std::sqrt(var / n)};

  const double c = asym::osc_phase_coefficient();
  auto free_phase = [&](double x) {
    const double X = -x;
    return c * std::pow(X, 1.25) - 0.625 * fr.osc.a * std::log(X);
  };
  std::complex<double> acc = 0.0;
  for (const auto& e : ext) {
    acc += (e.value > 0 ? 1.0 : -1.0) * std::polar(1.0, -free_phase(e.x));
  }
  fr.osc.phi = std::arg(acc);
  double spread = 0.0;
  for (const auto& e : ext) {
    const auto z = (e.value > 0 ? 1.0 : -1.0) * std::polar(1.0, -free_phase(e.x) - fr.osc.phi);
    spread += std::arg(z) * std::arg(z);
  }
  fr.phase = {fr.osc.phi, std::sqrt(spread / std::max(1.0, n - 1.0) / n)};
  fr.features = static_cast<int>(ext.size());
  fr.s2 = stokes::invert_osc(fr.osc, stokes::arg_s2_from_osc(fr.osc));
  return fr;
}

FitResult fit_singular(std::span<const double> pole_positions) {
  std::vector<double> X;
  for (double p : pole_positions) {
    if (-p >= kSingFitStart) X.push_back(-p);
  }
  std::sort(X.begin(), X.end());
  if (static_cast<int>(X.size()) < kMinFitFeatures) {
    throw Error(ErrorKind::InsufficientCells, "too few poles beyond -x = 5");
  }
  const double c = asym::sing_phase_coefficient();
  std::vector<std::vector<double>> cols(3);
  std::vector<double> rhs;
  long n = std::lround(c * std::pow(X[0], 1.25) / kPi);
  for (std::size_t j = 0; j < X.size(); ++j) {
    if (j > 0) n += std::lround(c * (std::pow(X[j], 1.25) - std::pow(X[j - 1], 1.25)) / kPi);
    cols[0].push_back(0.625 * std::log(X[j]));
    cols[1].push_back(1.0);
    cols[2].push_back(std::pow(X[j], -1.25));
    rhs.push_back(static_cast<double>(n) * kPi - c * std::pow(X[j], 1.25));
  }
  const auto coef = least_squares(cols, rhs);

  FitResult fr;
  fr.cls = stokes::SolutionClass::Singular;
  fr.sing.b = coef[0].value;
  double psi = coef[1].value - kPi * std::round(coef[1].value / kPi);
  if (psi <= -kPi / 2) psi += kPi;
  fr.sing.psi = psi;
  fr.amplitude = coef[0];
  fr.phase = {psi, coef[1].std_error};
  fr.features = static_cast<int>(X.size());
  fr.s2 = stokes::invert_sing(fr.sing, stokes::arg_s2_from_sing(fr.sing));
  return fr;
}

FitResult fit_params(std::span<const ode::Sample> samples, stokes::SolutionClass cls) {
  switch (cls) {
    case stokes::SolutionClass::Oscillatory:
      return fit_oscillatory(samples);
    case stokes::SolutionClass::Singular:
      return fit_singular(poles_from_samples(samples));
    case stokes::SolutionClass::Separatrix:
      break;
  }
  throw Error(ErrorKind::OutOfRegime, "no parameter fit for the separatrix class");
}

FitResult fit_params(const ode::Trajectory& traj, stokes::SolutionClass cls) {
  const auto& samples = traj.dense.empty() ? traj.samples : traj.dense;
  if (cls == stokes::SolutionClass::Singular && !traj.poles.empty()) {
    std::vector<double> p;
    p.reserve(traj.poles.size());
    for (const auto& pf : traj.poles) p.push_back(pf.pole.p);
    return fit_singular(p);
  }
  return fit_params(samples, cls);
}

}  // namespace painleve::harness
