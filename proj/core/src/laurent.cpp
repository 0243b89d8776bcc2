#include "painleve/laurent.hpp"

#include "painleve/errors.hpp"

namespace painleve::ode {

std::vector<double> laurent_coeffs(const PoleData& pd, int degree) {
  if (degree < 4) {
    throw Error(ErrorKind::DegreeTooSmall, "Laurent degree must be at least 4 to carry h");
  }
  return laurent_coefficients<double>(pd.p, pd.h, degree);
}

State laurent_eval(const PoleData& pd, int degree, double x) {
  const double t = x - pd.p;
  if (t == 0.0) {
    throw Error(ErrorKind::AtPole, "laurent_eval at the pole itself");
  }
  const auto v = laurent_value(laurent_coeffs(pd, degree), t);
  return {x, v.y, v.dy};
}

double laurent_hamiltonian(const PoleData& pd, int degree, double x) {
  const double t = x - pd.p;
  if (t == 0.0) {
    throw Error(ErrorKind::AtPole, "laurent_hamiltonian at the pole itself");
  }
  const auto c = laurent_coeffs(pd, degree);
  double tail = 0.0;
  for (int k = degree; k >= 2; --k) {
    tail = tail * t + c[static_cast<std::size_t>(k + 2)] / (k + 1);
  }
  return 1.0 / t - 14.0 * pd.h - tail * t * t * t;
}

}  // namespace painleve::ode
