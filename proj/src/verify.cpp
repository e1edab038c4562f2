#include "fracheat/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracheat {

namespace {

constexpr std::array<Regime, 4> kRegimes = {
    Regime::SmallTime, Regime::LargeTimeIncreasing,
    Regime::IntermediateDecreasing, Regime::LargeTimeDecreasing};

// Envelope with the per-regime prefactors divided back out.
struct Shapes {
  double lower = 0.0;
  double upper = 0.0;
  Regime regime = Regime::SmallTime;
};

const RegimePrefactors& prefactors_of(const EnvelopeConfig& cfg, Regime r) {
  switch (r) {
    case Regime::SmallTime: return cfg.pref_small;
    case Regime::LargeTimeIncreasing: return cfg.pref_large_inc;
    case Regime::IntermediateDecreasing: return cfg.pref_intermediate;
    case Regime::LargeTimeDecreasing: return cfg.pref_large_dec;
  }
  return cfg.pref_small;
}

RegimePrefactors& prefactors_of(EnvelopeConfig& cfg, Regime r) {
  switch (r) {
    case Regime::SmallTime: return cfg.pref_small;
    case Regime::LargeTimeIncreasing: return cfg.pref_large_inc;
    case Regime::IntermediateDecreasing: return cfg.pref_intermediate;
    case Regime::LargeTimeDecreasing: return cfg.pref_large_dec;
  }
  return cfg.pref_small;
}

Shapes envelope_shapes(const ValuePoint& p, const EnvelopeConfig& cfg) {
  const EnvelopePair env = heat_envelope(p.t, p.x, p.y, cfg);
  const RegimePrefactors& pref = prefactors_of(cfg, env.regime);
  return {env.lower / pref.lower, env.upper / pref.upper, env.regime};
}

}  // namespace

Regime regime_partition(double t, std::span<const double> x,
                        std::span<const double> y,
                        const EnvelopeConfig& config) {
  const auto cls = config.thresholds.classification;
  if (cls == Classification::Neither)
    throw std::logic_error("regime partition requires almost-monotone t0");
  const double m = std::min(norm_of(x), norm_of(y));
  const double t0m = solve_t0(config.profile, config.alpha, m);
  if (t <= config.C0 * t0m) return Regime::SmallTime;
  if (cls == Classification::AlmostIncreasing)
    return Regime::LargeTimeIncreasing;
  return t <= config.Ctilde0 ? Regime::IntermediateDecreasing
                             : Regime::LargeTimeDecreasing;
}

EnvelopeConfig fit_constants(const ValueTable& values,
                             const EnvelopeConfig& config) {
  EnvelopeConfig fitted = config;

  // Small-time exponent: regress log(value / (shape*comb)) on t*g(m).
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ValuePoint& p : values) {
      if (p.value <= 0.0) continue;
      if (regime_partition(p.t, p.x, p.y, config) != Regime::SmallTime)
        continue;
      const double m = std::min(norm_of(p.x), norm_of(p.y));
      const double M = std::max(norm_of(p.x), norm_of(p.y));
      std::vector<double> diff(p.x.size());
      for (std::size_t i = 0; i < p.x.size(); ++i) diff[i] = p.x[i] - p.y[i];
      const double r = norm_of(diff);
      const double shape = free_kernel_shape(p.t, r, config.alpha, config.d);
      const double comb = std::min(1.0 / (p.t * config.profile.g(M)), 1.0);
      const double xv = p.t * config.profile.g(m);
      const double yv = std::log(p.value / (shape * comb));
      sx += xv;
      sy += yv;
      sxx += xv * xv;
      sxy += xv * yv;
      ++n;
    }
    if (n >= 3) {
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      const double c_fit = std::max(-slope, 1e-3);
      fitted.c_lower_exp = 1.5 * c_fit;
      fitted.c_upper_exp = c_fit / 1.5;
    }
  }

  // Per-regime prefactors: tight at the extremal points.
  std::array<double, 4> lo_ratio, up_ratio;
  lo_ratio.fill(std::numeric_limits<double>::infinity());
  up_ratio.fill(0.0);
  for (const ValuePoint& p : values) {
    if (p.value <= 0.0) continue;
    const Shapes s = envelope_shapes(p, fitted);
    const auto idx = static_cast<std::size_t>(s.regime);
    lo_ratio[idx] = std::min(lo_ratio[idx], p.value / s.lower);
    up_ratio[idx] = std::max(up_ratio[idx], p.value / s.upper);
  }
  for (Regime r : kRegimes) {
    const auto idx = static_cast<std::size_t>(r);
    if (up_ratio[idx] > 0.0 && std::isfinite(lo_ratio[idx])) {
      prefactors_of(fitted, r) = {lo_ratio[idx], up_ratio[idx]};
    }
  }
  return fitted;
}

VerifyReport sandwich_check(const ValueTable& values,
                            const EnvelopeConfig& config,
                            const SpreadThresholds& thresholds) {
  VerifyReport report;
  report.fitted = config;
  report.thresholds = thresholds;

  std::array<RatioStats, 4> stats;
  std::array<ValuePoint, 4> worst_lo, worst_up;
  for (Regime r : kRegimes) {
    auto& s = stats[static_cast<std::size_t>(r)];
    s.regime = r;
    s.min_ratio_lower = std::numeric_limits<double>::infinity();
    s.max_ratio_upper = 0.0;
  }
  std::array<double, 4> max_lo;
  std::array<double, 4> min_up;
  max_lo.fill(0.0);
  min_up.fill(std::numeric_limits<double>::infinity());

  for (const ValuePoint& p : values) {
    const EnvelopePair env = heat_envelope(p.t, p.x, p.y, config);
    auto& s = stats[static_cast<std::size_t>(env.regime)];
    if (p.value <= 0.0) {
      report.feasible = false;
      s.worst_points.push_back(p);
      continue;
    }
    const double rl = p.value / env.lower;
    const double ru = p.value / env.upper;
    ++s.n_points;
    s.min_ratio_lower = std::min(s.min_ratio_lower, rl);
    s.max_ratio_upper = std::max(s.max_ratio_upper, ru);
    const auto idx = static_cast<std::size_t>(env.regime);
    if (rl > max_lo[idx]) {
      max_lo[idx] = rl;
      worst_lo[idx] = p;
    }
    if (ru < min_up[idx]) {
      min_up[idx] = ru;
      worst_up[idx] = p;
    }
  }

  report.pass = report.feasible;
  for (Regime r : kRegimes) {
    const auto idx = static_cast<std::size_t>(r);
    auto& s = stats[idx];
    if (s.n_points == 0) continue;
    s.spread = max_lo[idx] / min_up[idx];
    s.worst_points.push_back(worst_lo[idx]);
    s.worst_points.push_back(worst_up[idx]);
    if (s.spread > thresholds.of(r)) report.pass = false;
    report.stats.push_back(s);
  }
  return report;
}

RatioStats green_sandwich(const ValueTable& values,
                          const EnvelopeConfig& config) {
  RatioStats s;
  s.regime = config.thresholds.classification == Classification::AlmostIncreasing
                 ? Regime::LargeTimeIncreasing
                 : Regime::LargeTimeDecreasing;
  double min_r = std::numeric_limits<double>::infinity();
  double max_r = 0.0;
  ValuePoint worst_min, worst_max;
  for (const ValuePoint& p : values) {
    if (p.value <= 0.0) {
      s.worst_points.push_back(p);
      s.spread = std::numeric_limits<double>::infinity();
      continue;
    }
    const double env = green_envelope(p.x, p.y, config).value;
    const double r = p.value / env;
    ++s.n_points;
    if (r < min_r) {
      min_r = r;
      worst_min = p;
    }
    if (r > max_r) {
      max_r = r;
      worst_max = p;
    }
  }
  if (s.n_points > 0 && std::isfinite(min_r)) {
    if (!std::isinf(s.spread)) s.spread = max_r / min_r;
    s.min_ratio_lower = 1.0;  // prefactors chosen tight by construction
    s.max_ratio_upper = 1.0;
    s.worst_points.push_back(worst_min);
    s.worst_points.push_back(worst_max);
  }
  return s;
}

McReport mc_vs_oracle(const std::vector<KernelEstimateEntry>& mc,
                      const std::vector<double>& oracle,
                      const std::vector<double>& bias_allowance) {
  if (mc.size() != oracle.size() || mc.size() != bias_allowance.size())
    throw std::invalid_argument("mc/oracle tables must have matching points");
  McReport report;
  int ok_count = 0;
  for (std::size_t i = 0; i < mc.size(); ++i) {
    McComparison c;
    c.t = mc[i].t;
    c.x = mc[i].x;
    c.y = mc[i].y;
    c.mc = mc[i].value;
    c.oracle = oracle[i];
    c.stderr = mc[i].stderr;
    c.bias_allowance = bias_allowance[i];
    c.z = c.stderr > 0.0 ? (c.mc - c.oracle) / c.stderr : 0.0;
    c.ok = std::abs(c.mc - c.oracle) <= 3.0 * c.stderr + c.bias_allowance;
    if (c.ok) ++ok_count;
    report.comparisons.push_back(c);
  }
  report.frac_ok =
      mc.empty() ? 1.0 : static_cast<double>(ok_count) / mc.size();
  report.pass = report.frac_ok >= 0.95;
  return report;
}

}  // namespace fracheat
