#include "painleve/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "painleve/errors.hpp"

namespace painleve::stokes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

std::size_t slot(int k) {
  const int m = ((k + 2) % 5 + 5) % 5;
  return static_cast<std::size_t>(m);
}

// Unreduced phases; reduction happens in the public wrappers.
double raw_phi(Complex s2, double a) {
  return std::arg(s2) - log_phase_constant() * a - specfun::log_gamma(Complex(0.0, -0.5 * a)).imag() -
         kPi / 4.0;
}

double raw_psi(Complex s2, double b) {
  return 0.5 * std::arg(s2) + log_phase_constant() * b +
         0.5 * specfun::log_gamma(Complex(0.5, -b)).imag() + kPi / 4.0;
}

}  // namespace

Complex& StokesMultipliers::at(int k) { return s[slot(k)]; }
const Complex& StokesMultipliers::at(int k) const { return s[slot(k)]; }

StokesMultipliers StokesMultipliers::uniform(Complex value) {
  StokesMultipliers S;
  S.s.fill(value);
  return S;
}

const char* to_string(SolutionClass c) {
  switch (c) {
    case SolutionClass::Oscillatory: return "oscillatory";
    case SolutionClass::Separatrix: return "separatrix";
    case SolutionClass::Singular: return "singular";
  }
  return "unknown";
}

double log_phase_constant() { return 19.0 / 8.0 * std::log(2.0) + 5.0 / 8.0 * std::log(3.0); }

StokesMultipliers complete_from_pair(Complex s2, Complex sm2) {
  const Complex q = 1.0 + s2 * sm2;
  if (std::abs(q) <= 1e-12) {
    throw Error(ErrorKind::DegenerateProduct,
                "1 + s_2 s_{-2} vanishes; s_1 and s_{-1} must be supplied directly");
  }
  StokesMultipliers S;
  S.at(2) = s2;
  S.at(-2) = sm2;
  S.at(0) = kI * q;  // 1 + s_2 s_{-2} = -i s_0
  S.at(1) = (kI - sm2) / q;
  S.at(-1) = (kI - s2) / q;
  return S;
}

double constraint_residual(const StokesMultipliers& S) {
  double worst = 0.0;
  for (int k = -2; k <= 2; ++k) {
    worst = std::max(worst, std::abs(1.0 + S.at(k) * S.at(k + 1) + kI * S.at(k + 3)));
  }
  return worst;
}

double reality_residual(const StokesMultipliers& S) {
  return std::abs(std::conj(S.at(2)) + S.at(-2)) + std::abs(std::conj(S.at(0)) + S.at(0)) +
         std::abs(std::conj(S.at(1)) + S.at(-1));
}

SolutionClass classify(Complex s2, double tol) {
  const double m = std::abs(s2);
  if (m < 1.0 - tol) return SolutionClass::Oscillatory;
  if (m > 1.0 + tol) return SolutionClass::Singular;
  return SolutionClass::Separatrix;
}

SolutionClass classify(const StokesMultipliers& S, double tol) { return classify(S.at(2), tol); }

OscParams osc_params(Complex s2) {
  const double m2 = std::norm(s2);
  if (!(m2 < 1.0)) {
    throw Error(ErrorKind::OutOfRegime, "osc_params needs |s_2| < 1");
  }
  OscParams p;
  p.a = -std::log1p(-m2) / kPi;
  if (p.a == 0.0) {
    p.phi = 0.0;
    p.phi_applicable = false;
    return p;
  }
  p.phi = specfun::reduce_angle(raw_phi(s2, p.a));
  return p;
}

SingParams sing_params(Complex s2) {
  const double m2 = std::norm(s2);
  if (!(m2 > 1.0)) {
    throw Error(ErrorKind::OutOfRegime, "sing_params needs |s_2| > 1");
  }
  SingParams p;
  p.b = std::log(m2 - 1.0) / (2.0 * kPi);
  p.psi = specfun::reduce_angle(raw_psi(s2, p.b));
  return p;
}

Complex invert_osc(const OscParams& p, double arg_s2) {
  const double modulus = std::sqrt(-std::expm1(-kPi * p.a));
  return std::polar(modulus, arg_s2);
}

Complex invert_sing(const SingParams& p, double arg_s2) {
  const double modulus = std::sqrt(1.0 + std::exp(2.0 * kPi * p.b));
  return std::polar(modulus, arg_s2);
}

double arg_s2_from_osc(const OscParams& p) {
  if (p.a <= 0.0) return 0.0;
  const double arg = p.phi + log_phase_constant() * p.a +
                     specfun::log_gamma(Complex(0.0, -0.5 * p.a)).imag() + kPi / 4.0;
  return specfun::reduce_angle(arg);
}

double arg_s2_from_sing(const SingParams& p) {
  const double arg = 2.0 * (p.psi - log_phase_constant() * p.b -
                            0.5 * specfun::log_gamma(Complex(0.5, -p.b)).imag() - kPi / 4.0);
  return specfun::reduce_angle(arg);
}

LegacyOsc legacy_osc(Complex s2, bool corrected) {
  const double m2 = std::norm(s2);
  if (!(m2 < 1.0)) {
    throw Error(ErrorKind::OutOfRegime, "legacy_osc needs |s_2| < 1");
  }
  const double d2 = -std::log1p(-m2) / kPi;
  LegacyOsc out;
  out.d = std::sqrt(d2);
  const double offset = corrected ? -kPi / 4.0 : 3.0 * kPi / 4.0;
  out.chi = specfun::reduce_angle(std::arg(s2) - log_phase_constant() * d2 -
                                  specfun::log_gamma(Complex(0.0, -0.5 * d2)).imag() + offset);
  return out;
}

LegacySing legacy_sing(Complex s2, bool corrected) {
  const double m2 = std::norm(s2);
  if (!(m2 > 1.0)) {
    throw Error(ErrorKind::OutOfRegime, "legacy_sing needs |s_2| > 1");
  }
  LegacySing out;
  out.rho = std::log(m2 - 1.0) / (2.0 * kPi);
  const double offset = corrected ? kPi / 4.0 : -kPi / 4.0;
  out.sigma = specfun::reduce_angle(0.5 * std::arg(s2) + log_phase_constant() * out.rho +
                                    0.5 * specfun::log_gamma(Complex(0.5, -out.rho)).imag() + offset);
  return out;
}

StokesMultipliers zero_ic_multipliers() {
  return StokesMultipliers::uniform(Complex(0.0, 2.0 * std::cos(2.0 * kPi / 5.0)));
}

StokesMultipliers zero_pole_multipliers() {
  return StokesMultipliers::uniform(Complex(0.0, -2.0 * std::cos(kPi / 5.0)));
}

StokesMultipliers tronquee_multipliers() {
  StokesMultipliers S;
  S.at(2) = kI;
  S.at(-2) = kI;
  S.at(1) = 0.5 * kI;
  S.at(-1) = 0.5 * kI;
  S.at(0) = 0.0;
  return S;
}

namespace {
constexpr std::array<const char*, 5> kKeys = {"s_m2", "s_m1", "s_0", "s_1", "s_2"};
}

std::string to_json(const StokesMultipliers& S) {
  nlohmann::ordered_json j;
  for (int k = -2; k <= 2; ++k) {
    const Complex v = S.at(k);
    j[kKeys[slot(k)]] = {v.real(), v.imag()};
  }
  return j.dump();
}

StokesMultipliers from_json(const std::string& text) {
  StokesMultipliers S;
  try {
    const auto j = nlohmann::json::parse(text);
    for (int k = -2; k <= 2; ++k) {
      const auto& v = j.at(kKeys[slot(k)]);
      if (!v.is_array() || v.size() != 2) {
        throw Error(ErrorKind::SchemaError, std::string("expected [re,im] for ") + kKeys[slot(k)]);
      }
      S.at(k) = Complex(v[0].get<double>(), v[1].get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SchemaError, e.what());
  }
  return S;
}

}  // namespace painleve::stokes
