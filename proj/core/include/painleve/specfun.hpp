#pragma once

#include <complex>

namespace painleve {

using Complex = std::complex<double>;

namespace specfun {

/// Log-gamma on the branch that is real on the positive real axis and
/// continuous in the plane cut along the negative real axis (the same
/// convention as scipy.special.loggamma). exp(log_gamma(z)) == Gamma(z).
/// Throws Error(PoleOfGamma) within 1e-12 of a nonpositive integer.
Complex log_gamma(Complex z);

/// arg Gamma(z) reduced to (-pi, pi].
double arg_gamma(Complex z);

/// Gamma(z) itself, exp(log_gamma(z)).
Complex gamma(Complex z);

/// Reduce an angle to (-pi, pi].
double reduce_angle(double theta);

}  // namespace specfun
}  // namespace painleve
