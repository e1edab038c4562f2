#pragma once

#include <span>
#include <string>

#include "fracheat/profile.hpp"
#include "fracheat/threshold.hpp"

namespace fracheat {

enum class Regime {
  SmallTime,
  LargeTimeIncreasing,
  IntermediateDecreasing,
  LargeTimeDecreasing
};

const char* to_string(Regime r);

struct RegimePrefactors {
  double lower = 1.0;
  double upper = 1.0;
};

/// Constant set for the two-sided envelopes.  All multiplicative constants
/// default to 1 and are treated as fitted nuisance parameters by the verify
/// harness; the exponent constants differ between lower and upper bounds
/// (the lower envelope decays at least as fast).
struct EnvelopeConfig {
  double alpha = 1.0;
  int d = 1;
  PotentialProfile profile;
  ThresholdModel thresholds;

  double C0 = 1.0;        // regime switch multiplier on t0(|x| ^ |y|)
  double Ctilde0 = 1.0;   // large-time switch for decreasing classification
  double c_lower_exp = 2.0;
  double c_upper_exp = 0.5;
  double lambda1 = 1.0;   // injected from the spectral model or config
  double c_int_lower = 2.0;
  double c_int_upper = 0.5;
  double C9 = 1.0;        // time dilation inside s0 for the upper bound

  RegimePrefactors pref_small;
  RegimePrefactors pref_large_inc;
  RegimePrefactors pref_intermediate;
  RegimePrefactors pref_large_dec;

  double survival_C3 = 1.0;
  double survival_C4 = 1.0;
  double survival_C5 = 1.0;  // refinement switch t >= C5 * t0(|x|)

  double offdiag_prefactor = 1.0;  // C8 in the off-diagonal bound
  double offdiag_separation = 1.0; // C0' in |x-y| >= 2*C0'*t^(1/alpha)
};

struct EnvelopePair {
  double lower = 0.0;
  double upper = 0.0;
  Regime regime = Regime::SmallTime;
};

double norm_of(std::span<const double> x);

/// min(t^(-d/alpha), t/r^(d+alpha)); on the diagonal (r = 0) the second
/// branch is +infinity, so the value is t^(-d/alpha).
double free_kernel_shape(double t, double r, double alpha, int d);

/// Transition density of the 1d symmetric alpha-stable law at time t,
/// computed by Fourier inversion (1/pi) * int_0^inf exp(-t xi^alpha)
/// cos(xi r) dxi to absolute tolerance ~1e-8.
double free_kernel_exact_1d(double t, double r, double alpha);

/// Ground-state profile H(x) = 1 / (g(|x|) (1+|x|)^(d+alpha)).
double ground_state_profile(double r, const PotentialProfile& profile,
                            double alpha, int d);
double ground_state_profile(std::span<const double> x,
                            const EnvelopeConfig& config);

enum class SurvivalRefinement { PureExponential, General, Logarithmic };

struct SurvivalBound {
  double value = 0.0;  // C3 * (exp(-C4 t g(|x|)) + t/(1+|x|)^alpha)
  SurvivalRefinement refinement = SurvivalRefinement::General;
  double refined_value = 0.0;
};

SurvivalBound survival_upper(double t, std::span<const double> x,
                             const EnvelopeConfig& config);

/// omega_{d-1} * int_0^R exp(-c t g(r)) r^(d-1) dr by adaptive radial
/// quadrature (relative tolerance 1e-6).  R may be +infinity provided the
/// integral converges; the integration marches in log(1+r) so that
/// astronomically large R (from s0 at small t) stays representable.
double confinement_integral(double t, double R, double c,
                            const PotentialProfile& profile, int d);

/// Two-sided heat-kernel envelope, dispatched on t against C0*t0(|x|^|y|)
/// and the almost-monotonicity classification.  The boundary
/// t = C0*t0 belongs to the small-time regime.
EnvelopePair heat_envelope(double t, std::span<const double> x,
                           std::span<const double> y,
                           const EnvelopeConfig& config);
EnvelopePair heat_envelope1(double t, double x, double y,
                            const EnvelopeConfig& config);

/// Off-diagonal upper bound C8 * t/|x-y|^(d+alpha) * (1 ^ 1/(t max g)).
/// Requires the separation |x-y| >= 2*C0'*t^(1/alpha).
double offdiag_upper(double t, std::span<const double> x,
                     std::span<const double> y, const EnvelopeConfig& config);

enum class QBranch { One, LogBranch, PowerBranch };

struct GreenValue {
  double value = 0.0;
  double q = 1.0;
  QBranch branch = QBranch::One;
};

/// Green-function envelope shape
///   |x-y|^-(d-alpha) * (1 ^ 1/(g(|x|)|x-y|^alpha))
///                    * (1 ^ 1/(g(|y|)|x-y|^alpha)) * Q(x,y)
/// with the three-branch correction Q (alpha < d; alpha = d = 1;
/// alpha > d = 1).
GreenValue green_envelope(std::span<const double> x,
                          std::span<const double> y,
                          const EnvelopeConfig& config);
GreenValue green_envelope1(double x, double y, const EnvelopeConfig& config);

/// Constants of the log-potential closed forms; mirrors the envelope
/// defaults (exponent constants split between lower and upper).
struct Example1Constants {
  double C0 = 1.0;   // regime switch on log^(1-beta)(2+|x|)
  double C1 = 1.0, C2 = 2.0;   // small-time lower prefactor/exponent
  double C3 = 1.0, C4 = 0.5;   // small-time upper prefactor/exponent
  double C5 = 1.0, C6 = 1.0;   // (2-i) prefactors
  double C7 = 1.0, C8 = 0.5;   // (2-ii) lower prefactor/exponent
  double C9 = 1.0, C10 = 1.0;  // (2-ii) upper prefactor/exponent
  double lambda1 = 1.0;
};

/// Closed-form envelopes for V(x) = log^beta(1+|x|): small-time product
/// form, beta <= 1 spectral form, beta > 1 with the exp(C t^(-1/(beta-1)))
/// factor for t <= 1.  H(x) = 1/(log^beta(2+|x|)(1+|x|)^(d+alpha)).
EnvelopePair example1_envelope(double t, std::span<const double> x,
                               std::span<const double> y, double beta,
                               double alpha, int d,
                               const Example1Constants& constants);

/// Closed-form s0 for the log profile (beta > 1):
/// exp(t^(-1/(beta-1))) - 2 for t <= log^(1-beta)(4), else 2.  Returns
/// +infinity if the exponential overflows.
double example1_s0(double t, double beta);

/// Dirichlet ball-kernel envelope shape
///   (t^(-d/alpha) ^ t/r^(d+alpha)) * (delta^(alpha/2)/sqrt(t) ^ 1),
/// delta = R - r the distance of y to the boundary of B(x, R); requires
/// r < R.
double dirichlet_ball_envelope(double t, double r, double R, double alpha,
                               int d);

}  // namespace fracheat
