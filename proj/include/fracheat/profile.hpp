#pragma once

#include <span>
#include <string>
#include <vector>

namespace fracheat {

enum class ProfileKind { Power, Log, Custom };

/// Radial growth profile g of a confining potential V(x) = g(|x|).
///
/// g is non-decreasing with g(0) >= 1, g(r) -> infinity, and doubling
/// g(2r) <= C1*g(r).  Built-in kinds:
///   Power(p):  g(r) = (1+r)^p
///   Log(beta): g(r) = log^beta(e+r)
/// Custom profiles are tabulated and interpolated log-linearly in
/// (log(1+r), log g), extended constantly below the first node and by the
/// last two-node slope above the last one.
///
/// Instances are immutable; evaluation is pure and thread-safe.
class PotentialProfile {
public:
  static PotentialProfile power(double p, int d);
  static PotentialProfile log_pow(double beta, int d);
  /// Tabulated radial profile. Radii strictly increasing, values
  /// non-decreasing with values[0] >= 1 (unless normalize_g0, which
  /// divides the table by values[0]).
  static PotentialProfile custom(std::vector<double> radii,
                                 std::vector<double> values, int d,
                                 bool normalize_g0 = false);

  double g(double r) const;
  /// V(x) = g(|x|); depends on x only through |x|.
  double V(std::span<const double> x) const;
  double V1(double x) const { return g(x < 0 ? -x : x); }

  ProfileKind kind() const { return kind_; }
  int dimension() const { return d_; }
  /// p for Power, beta for Log.
  double param() const { return param_; }
  const std::string& description() const { return description_; }

private:
  PotentialProfile() = default;

  ProfileKind kind_ = ProfileKind::Power;
  int d_ = 1;
  double param_ = 1.0;
  std::vector<double> table_u_;  // log(1+r) nodes
  std::vector<double> table_w_;  // log g nodes
  std::string description_;
};

/// Result of checking Assumption (H)-style conditions on a sample grid.
struct AssumptionHReport {
  double doubling_constant = 1.0;   // max over grid of g(2r)/g(r)
  bool growth_verified = false;     // g(r_max) > 10*g(0)
  std::vector<double> sample_grid;
  double q1_estimate = 0.0;         // slope of log g vs log(1+r), upper half
};

/// Geometric validation grid: r = 0 plus 64 points from 2^-6 to r_max.
std::vector<double> validation_grid(double r_max);

/// Checks monotonicity, g >= 1, growth, and measures the doubling constant
/// and the polynomial growth exponent q1 on a geometric grid.
/// Throws std::runtime_error naming the violating radius if g is
/// non-monotone or dips below 1 on the grid.
AssumptionHReport verify_assumption_h(const PotentialProfile& profile,
                                      double r_max, int n_samples);

}  // namespace fracheat
