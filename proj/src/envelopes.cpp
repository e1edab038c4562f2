#include "fracheat/envelopes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracheat/quadrature.hpp"

namespace fracheat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dist_of(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("points have mismatched dimensions");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double sphere_area(int d) {
  // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2); equals 2 for d = 1.
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::SmallTime: return "small_time";
    case Regime::LargeTimeIncreasing: return "large_time_increasing";
    case Regime::IntermediateDecreasing: return "intermediate_decreasing";
    case Regime::LargeTimeDecreasing: return "large_time_decreasing";
  }
  return "small_time";
}

double norm_of(std::span<const double> x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

double free_kernel_shape(double t, double r, double alpha, int d) {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const double diag = std::pow(t, -static_cast<double>(d) / alpha);
  if (r <= 0.0) return diag;  // t / 0^(d+alpha) = +inf
  return std::min(diag, t / std::pow(r, d + alpha));
}

double free_kernel_exact_1d(double t, double r, double alpha) {
  if (alpha <= 0.0 || alpha >= 2.0)
    throw std::invalid_argument("alpha must lie in (0,2)");
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  r = std::abs(r);
  if (r == 0.0) {
    const double xi_max = std::pow(60.0 / t, 1.0 / alpha);
    const auto f = [t, alpha](double xi) {
      return std::exp(-t * std::pow(xi, alpha));
    };
    return integrate(f, 0.0, xi_max, 1e-12, 1e-12) / kPi;
  }
  // Substitute u = xi r: q = (1/(pi r)) * I(t r^-alpha, alpha).
  const double tau = t / std::pow(r, alpha);
  return fourier_cos_decay(tau, alpha, 1e-12) / (kPi * r);
}

double ground_state_profile(double r, const PotentialProfile& profile,
                            double alpha, int d) {
  return 1.0 / (profile.g(r) * std::pow(1.0 + r, d + alpha));
}

double ground_state_profile(std::span<const double> x,
                            const EnvelopeConfig& config) {
  return ground_state_profile(norm_of(x), config.profile, config.alpha,
                              config.d);
}

SurvivalBound survival_upper(double t, std::span<const double> x,
                             const EnvelopeConfig& config) {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const double r = norm_of(x);
  const double g = config.profile.g(r);
  SurvivalBound out;
  out.value = config.survival_C3 *
              (std::exp(-config.survival_C4 * t * g) +
               t / std::pow(1.0 + r, config.alpha));
  const double t0 = solve_t0(config.profile, config.alpha, r);
  if (t <= config.C0 * t0) {
    out.refinement = SurvivalRefinement::PureExponential;
    out.refined_value =
        config.survival_C3 * std::exp(-config.survival_C4 * t * g);
  } else if (t >= config.survival_C5 * t0) {
    out.refinement = SurvivalRefinement::Logarithmic;
    out.refined_value =
        std::log(2.0 + r) / std::pow(1.0 + r, config.alpha);
  } else {
    out.refinement = SurvivalRefinement::General;
    out.refined_value = out.value;
  }
  return out;
}

double confinement_integral(double t, double R, double c,
                            const PotentialProfile& profile, int d) {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  if (R < 0.0) throw std::invalid_argument("R must be non-negative");
  if (R == 0.0) return 0.0;
  // r = e^u - 1 keeps huge radii representable; the integrand in u is
  // exp(-c t g(e^u - 1)) (e^u - 1)^(d-1) e^u.
  const auto f = [&](double u) {
    const double r = std::expm1(u);
    double v = std::exp(-c * t * profile.g(r)) * std::exp(u);
    if (d > 1) v *= std::pow(r, d - 1);
    return v;
  };
  const double u_end = std::isinf(R)
                           ? std::numeric_limits<double>::infinity()
                           : std::log1p(R);
  double total = 0.0;
  double prev_seg = std::numeric_limits<double>::infinity();
  double lo = 0.0;
  const double step = 1.0;
  const int max_segments = 8192;
  for (int k = 0; k < max_segments; ++k) {
    const double hi = std::min(lo + step, u_end);
    const double seg = integrate(f, lo, hi, 1e-300, 1e-8);
    total += seg;
    lo = hi;
    if (lo >= u_end) return sphere_area(d) * total;
    if (seg <= 1e-16 * total && seg < prev_seg) {
      return sphere_area(d) * total;  // decayed past the peak
    }
    prev_seg = seg;
  }
  throw std::runtime_error(
      "confinement integral did not converge (growth too slow for R=inf?)");
}

EnvelopePair heat_envelope(double t, std::span<const double> x,
                           std::span<const double> y,
                           const EnvelopeConfig& config) {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const auto cls = config.thresholds.classification;
  if (cls == Classification::Neither)
    throw std::logic_error("heat envelope requires an almost-monotone model");

  const double rx = norm_of(x);
  const double ry = norm_of(y);
  const double m = std::min(rx, ry);
  const double M = std::max(rx, ry);
  const double r = dist_of(x, y);
  const double t0m = solve_t0(config.profile, config.alpha, m);

  EnvelopePair out;
  if (t <= config.C0 * t0m) {
    out.regime = Regime::SmallTime;
    const double shape = free_kernel_shape(t, r, config.alpha, config.d);
    const double comb = std::min(1.0 / (t * config.profile.g(M)), 1.0);
    const double gm = config.profile.g(m);
    out.lower = config.pref_small.lower * shape * comb *
                std::exp(-config.c_lower_exp * t * gm);
    out.upper = config.pref_small.upper * shape * comb *
                std::exp(-config.c_upper_exp * t * gm);
  } else {
    const double HH = ground_state_profile(rx, config.profile, config.alpha,
                                           config.d) *
                      ground_state_profile(ry, config.profile, config.alpha,
                                           config.d);
    if (cls == Classification::AlmostIncreasing) {
      out.regime = Regime::LargeTimeIncreasing;
      const double decay = std::exp(-config.lambda1 * t);
      out.lower = config.pref_large_inc.lower * decay * HH;
      out.upper = config.pref_large_inc.upper * decay * HH;
    } else if (t <= config.Ctilde0) {
      out.regime = Regime::IntermediateDecreasing;
      const double Ilo =
          confinement_integral(t, eval_s0(config.thresholds, t),
                               config.c_int_lower, config.profile, config.d);
      const double Iup = confinement_integral(
          t, eval_s0(config.thresholds, config.C9 * t), config.c_int_upper,
          config.profile, config.d);
      out.lower = config.pref_intermediate.lower * HH * Ilo;
      out.upper = config.pref_intermediate.upper * HH * Iup;
    } else {
      out.regime = Regime::LargeTimeDecreasing;
      const double decay = std::exp(-config.lambda1 * t);
      out.lower = config.pref_large_dec.lower * decay * HH;
      out.upper = config.pref_large_dec.upper * decay * HH;
    }
  }
  if (out.lower > out.upper) std::swap(out.lower, out.upper);
  return out;
}

EnvelopePair heat_envelope1(double t, double x, double y,
                            const EnvelopeConfig& config) {
  return heat_envelope(t, std::span<const double>(&x, 1),
                       std::span<const double>(&y, 1), config);
}

double offdiag_upper(double t, std::span<const double> x,
                     std::span<const double> y,
                     const EnvelopeConfig& config) {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const double r = dist_of(x, y);
  const double sep =
      2.0 * config.offdiag_separation * std::pow(t, 1.0 / config.alpha);
  if (r < sep) {
    throw std::invalid_argument(
        "off-diagonal bound requires |x-y| >= 2*C0'*t^(1/alpha)");
  }
  const double gmax =
      std::max(config.profile.g(norm_of(x)), config.profile.g(norm_of(y)));
  return config.offdiag_prefactor * t / std::pow(r, config.d + config.alpha) *
         std::min(1.0, 1.0 / (t * gmax));
}

GreenValue green_envelope(std::span<const double> x,
                          std::span<const double> y,
                          const EnvelopeConfig& config) {
  if (config.thresholds.classification == Classification::Neither)
    throw std::logic_error("green envelope requires an almost-monotone model");
  const double r = dist_of(x, y);
  if (r == 0.0) throw std::invalid_argument("green envelope requires x != y");
  const double alpha = config.alpha;
  const int d = config.d;
  const double gx = config.profile.g(norm_of(x));
  const double gy = config.profile.g(norm_of(y));
  const double gm = std::min(gx, gy);
  const double ralpha = std::pow(r, alpha);

  GreenValue out;
  if (alpha < d) {
    out.branch = QBranch::One;
    out.q = 1.0;
  } else if (d == 1) {
    const double inv = 1.0 / (ralpha * gm);
    if (alpha == 1.0) {
      out.branch = QBranch::LogBranch;
      out.q = std::max(std::log(inv), 1.0);
    } else {
      out.branch = QBranch::PowerBranch;
      out.q = std::max(std::pow(inv, (alpha - d) / alpha), 1.0);
    }
  } else {
    throw std::invalid_argument(
        "green envelope: alpha >= d is only covered for d = 1");
  }
  out.value = std::pow(r, -(d - alpha)) * std::min(1.0, 1.0 / (gx * ralpha)) *
              std::min(1.0, 1.0 / (gy * ralpha)) * out.q;
  return out;
}

GreenValue green_envelope1(double x, double y, const EnvelopeConfig& config) {
  return green_envelope(std::span<const double>(&x, 1),
                        std::span<const double>(&y, 1), config);
}

EnvelopePair example1_envelope(double t, std::span<const double> x,
                               std::span<const double> y, double beta,
                               double alpha, int d,
                               const Example1Constants& k) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const double rx = norm_of(x);
  const double ry = norm_of(y);
  const double m = std::min(rx, ry);
  const double M = std::max(rx, ry);
  const double r = dist_of(x, y);
  const auto logb = [beta](double s) {
    return std::pow(std::log(2.0 + s), beta);
  };
  const auto H = [&](double s) {
    return 1.0 / (logb(s) * std::pow(1.0 + s, d + alpha));
  };

  EnvelopePair out;
  const double switch_t = k.C0 * std::pow(std::log(2.0 + m), 1.0 - beta);
  if (t <= switch_t) {
    out.regime = Regime::SmallTime;
    const double shape = free_kernel_shape(t, r, alpha, d);
    const double comb = std::min(1.0 / (t * logb(M)), 1.0);
    out.lower = k.C1 * shape * comb * std::exp(-k.C2 * t * logb(m));
    out.upper = k.C3 * shape * comb * std::exp(-k.C4 * t * logb(m));
  } else if (beta <= 1.0) {
    out.regime = Regime::LargeTimeIncreasing;
    const double v = std::exp(-k.lambda1 * t) * H(rx) * H(ry);
    out.lower = k.C5 * v;
    out.upper = k.C6 * v;
  } else {
    const double HH = H(rx) * H(ry);
    if (t <= 1.0) {
      out.regime = Regime::IntermediateDecreasing;
      const double e = std::pow(t, -1.0 / (beta - 1.0));
      out.lower = k.C7 * std::exp(k.C8 * e) * HH;
      out.upper = k.C9 * std::exp(k.C10 * e) * HH;
    } else {
      out.regime = Regime::LargeTimeDecreasing;
      const double v = std::exp(-k.lambda1 * t) * HH;
      out.lower = k.C7 * v;
      out.upper = k.C9 * v;
    }
  }
  if (out.lower > out.upper) std::swap(out.lower, out.upper);
  return out;
}

double example1_s0(double t, double beta) {
  if (beta <= 1.0)
    throw std::invalid_argument("closed-form s0 needs beta > 1");
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const double T0 = std::pow(std::log(4.0), 1.0 - beta);
  if (t >= T0) return 2.0;
  return std::exp(std::pow(t, -1.0 / (beta - 1.0))) - 2.0;
}

double dirichlet_ball_envelope(double t, double r, double R, double alpha,
                               int d) {
  if (r >= R) throw std::invalid_argument("requires |x-y| < R");
  const double delta = R - r;
  return free_kernel_shape(t, r, alpha, d) *
         std::min(std::pow(delta, 0.5 * alpha) / std::sqrt(t), 1.0);
}

}  // namespace fracheat
