#pragma once

#include <vector>

#include "fracheat/profile.hpp"

namespace fracheat {

enum class Classification { AlmostIncreasing, AlmostDecreasing, Neither };

const char* to_string(Classification c);

/// Threshold time t0(s): the unique crossing of the strictly decreasing
/// t -> exp(-t*g(s)) with the strictly increasing t -> t/(1+s)^alpha.
/// Bisection on [0, max(1, alpha*log(1+s)/g(s) + 1)]; the residual of the
/// defining equation at the returned t is at most tol.
double solve_t0(const PotentialProfile& profile, double alpha, double s,
                double tol = 1e-12);

/// Sampled t0 values with a monotone profile h fitted by isotonic (or
/// antitonic) regression of log t0, whichever direction gives the smaller
/// multiplicative spread.  Immutable after fit.
struct ThresholdModel {
  double alpha = 1.0;
  PotentialProfile profile;
  std::vector<double> sample_s;
  std::vector<double> sample_t0;
  std::vector<double> h_fit;      // tabulated on sample_s, monotone
  double C_star = 1.0;            // max_i max(t0_i/h_i, h_i/t0_i)
  double C_doubling = 1.0;        // measured doubling spread of h
  Classification classification = Classification::Neither;
  double T0 = 0.0;                // h(2)
  double T_inf = 0.0;             // h at the last grid node

  /// Interpolated h (log-linear in (log(2+s), log h)); clamped beyond
  /// the grid ends.
  double h(double s) const;
};

/// Solves t0 on the grid, fits both monotone directions, classifies.
/// A spread above class_threshold in both directions yields Neither
/// (a valid outcome).  Ties go to AlmostIncreasing, which also covers
/// essentially-constant t0.
ThresholdModel fit_threshold_model(const PotentialProfile& profile,
                                   double alpha,
                                   const std::vector<double>& s_grid,
                                   double class_threshold = 8.0);

/// s0(t) = inf{s >= 0 : h(s) <= t} clipped below at 2; decreasing models
/// only.  Resolved by bisection on the tabulated h to relative 1e-6.
double eval_s0(const ThresholdModel& model, double t);

/// s1(t) = inf{s > 0 : h(s) >= t} clipped below at 2; increasing models
/// only.
double eval_s1(const ThresholdModel& model, double t);

/// Pool-adjacent-violators: least-squares monotone fit of y.
/// increasing = false gives the antitonic fit.
std::vector<double> isotonic_fit(const std::vector<double>& y, bool increasing);

/// Geometric grid of n points covering [0, s_max] (first node 0).
std::vector<double> threshold_grid(double s_max, int n);

}  // namespace fracheat
