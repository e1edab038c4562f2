#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracheat/profile.hpp"

namespace fracheat {

/// Per-path random substream: xoshiro256++ seeded by a splitmix64 walk
/// over (seed, path_index).  Identical (seed, path) gives an identical
/// stream regardless of how paths are scheduled, so parallel execution
/// is reproducible by construction.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path_index);

  std::uint64_t next_u64();
  /// Uniform on (0, 1), 53-bit, never exactly 0.
  double uniform();
  double exponential();  // rate 1
  double normal();       // Box-Muller, pairs cached per stream

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Standard symmetric alpha-stable variate (characteristic function
/// exp(-|xi|^alpha)) by the Chambers-Mallows-Stuck formula.
double sample_stable_symmetric(double alpha, PathRng& rng);

/// One-sided rho-stable variate with Laplace transform exp(-lambda^rho),
/// 0 < rho < 1 (Kanter's representation).
double sample_stable_subordinator(double rho, PathRng& rng);

/// Increment of the rotationally invariant alpha-stable process over dt:
/// characteristic function exp(-dt |xi|^alpha).  d = 1 uses the scaled
/// CMS variate; d >= 2 subordinates a Gaussian vector by 2S with S a
/// positive (alpha/2)-stable increment.
void sample_increment(double alpha, double dt, int d, PathRng& rng,
                      std::span<double> out);

using Potential = std::function<double(std::span<const double>)>;

Potential potential_of(const PotentialProfile& profile);

struct PathPoint {
  double time = 0.0;
  std::vector<double> x;
};

/// exp(-sum_i V(x_i) (t_{i+1} - t_i)): left-endpoint quadrature of the
/// action integral; lies in (0, 1] since V >= 0.
double feynman_kac_weight(std::span<const PathPoint> path, const Potential& V);
double feynman_kac_weight(std::span<const PathPoint> path,
                          const PotentialProfile& profile);

struct SimConfig {
  double alpha = 1.0;
  int d = 1;
  long n_paths = 10000;
  int n_steps = 100;
  std::uint64_t seed = 0;
  double delta = 0.0;  // kernel terminal window; 0 means t/50
  PotentialProfile profile;
};

struct MeanStderr {
  double mean = 0.0;
  double stderr = 0.0;
};

/// Sample mean/standard error of the Feynman-Kac weight over n_paths
/// independent paths from x.  V defaults to the profile potential.
MeanStderr estimate_survival(std::span<const double> x, double t,
                             const SimConfig& cfg,
                             const Potential* V_override = nullptr);

struct KernelEstimateEntry {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  double stderr = 0.0;
  long n_paths = 0;
  std::string bias_note;
};

/// Terminal-window kernel estimator (d = 1 only):
///   p(t,x,y) ~= E_x[ exp(-int_0^{t-delta} V) q(delta, X_{t-delta}, y) ]
/// with q the free kernel; first-order bias ~ delta*V(y), recorded in
/// bias_note.
KernelEstimateEntry estimate_kernel(double x, double y, double t,
                                    const SimConfig& cfg,
                                    const Potential* V_override = nullptr);

/// Deterministic order-independent reduction (pairwise summation).
double pairwise_sum(std::span<const double> values);

}  // namespace fracheat
