#pragma once

#include <span>
#include <vector>

#include "fracheat/envelopes.hpp"
#include "fracheat/stable_sim.hpp"

namespace fracheat {

struct ValuePoint {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  double value = 0.0;
  double stderr = 0.0;  // 0 for oracle tables
};

using ValueTable = std::vector<ValuePoint>;

/// Comparability statistics of a value table against the two-sided
/// envelope within one regime.  With tightly fitted prefactors,
/// min_ratio_lower ~ 1 and max_ratio_upper ~ 1 at the touching points and
/// spread measures the dynamic range of value/envelope over the grid.
struct RatioStats {
  Regime regime = Regime::SmallTime;
  int n_points = 0;
  double min_ratio_lower = 0.0;  // min over grid of value / lower envelope
  double max_ratio_upper = 0.0;  // max over grid of value / upper envelope
  double spread = 0.0;  // max(value/lower) / min(value/upper)
  std::vector<ValuePoint> worst_points;
};

struct SpreadThresholds {
  double small_time = 1000.0;
  double large_time = 100.0;  // applies to all three large-time regimes

  double of(Regime r) const {
    return r == Regime::SmallTime ? small_time : large_time;
  }
};

struct VerifyReport {
  std::vector<RatioStats> stats;
  EnvelopeConfig fitted;
  SpreadThresholds thresholds;
  bool pass = false;
  bool feasible = true;  // false if non-positive values blocked the fit
};

/// The regime the envelope dispatcher selects: pure function of
/// (t, |x| ^ |y|, classification, C0, Ctilde0).
Regime regime_partition(double t, std::span<const double> x,
                        std::span<const double> y,
                        const EnvelopeConfig& config);

/// Fits the free constants to a value table: small-time exponent by
/// log-linear regression of the shape-normalized values against t*g(m)
/// (then relaxed by a safety factor 1.5 on both sides), per-regime
/// prefactors set to the extremal ratios so the sandwich is tight at one
/// grid point per side.
EnvelopeConfig fit_constants(const ValueTable& values,
                             const EnvelopeConfig& config);

/// Per-regime ratio statistics with the given (normally fitted) config;
/// pass iff every populated regime's spread is within its threshold.
VerifyReport sandwich_check(const ValueTable& values,
                            const EnvelopeConfig& config,
                            const SpreadThresholds& thresholds);

/// One-sided variant for the Green function: single envelope shape, one
/// prefactor pair; spread = max(value/shape) / min(value/shape).
RatioStats green_sandwich(const ValueTable& values,
                          const EnvelopeConfig& config);

struct McComparison {
  double t = 0.0, x = 0.0, y = 0.0;
  double mc = 0.0, oracle = 0.0, stderr = 0.0;
  double bias_allowance = 0.0;  // absolute
  double z = 0.0;               // (mc - oracle) / stderr
  bool ok = false;              // |mc - oracle| <= 3*stderr + bias
};

struct McReport {
  std::vector<McComparison> comparisons;
  double frac_ok = 0.0;
  bool pass = false;  // >= 95% of points ok
};

McReport mc_vs_oracle(const std::vector<KernelEstimateEntry>& mc,
                      const std::vector<double>& oracle,
                      const std::vector<double>& bias_allowance);

}  // namespace fracheat
