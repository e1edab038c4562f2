#pragma once

#include <functional>

namespace fracheat {

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
/// Bisects until the local error estimate is below
/// abs_tol + rel_tol * |local integral|; depth-capped.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10);

/// I(tau, alpha) = integral_0^inf exp(-tau * u^alpha) * cos(u) du.
///
/// Non-oscillatory when the envelope dies before the first zero of cos;
/// otherwise the integral is summed over half-period cycles and the
/// alternating tail is resummed with Wynn's epsilon algorithm.
double fourier_cos_decay(double tau, double alpha, double abs_tol = 1e-10);

}  // namespace fracheat
