#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracheat/envelopes.hpp"
#include "fracheat/profile.hpp"
#include "fracheat/verify.hpp"

namespace fracheat {

/// Experiment configuration parsed from a single TOML file (a small
/// subset: [section] headers, scalar and flat-array values, # comments).
/// Unknown keys are rejected; numeric ranges are validated on parse.
struct ExperimentConfig {
  double alpha = 1.0;

  struct Profile {
    std::string kind = "power";
    double p = 2.0;
    double beta = 2.0;
    int d = 1;
    std::vector<double> radii;   // custom tables
    std::vector<double> values;
    bool normalize_g0 = false;
  } profile;

  struct Thresholds {
    double grid_max = 1000.0;
    int grid_n = 48;
    double tol = 1e-12;
    double class_threshold = 8.0;
  } thresholds;

  struct Envelope {
    double C0 = 1.0;
    double Ctilde0 = 1.0;
    double c_lower_exp = 2.0;
    double c_upper_exp = 0.5;
    double c_int_lower = 2.0;
    double c_int_upper = 0.5;
    double C9 = 1.0;
    double lambda1 = 0.0;  // 0: take the spectral value
  } envelope;

  struct Sim {
    long n_paths = 100000;
    int n_steps = 200;
    std::uint64_t seed = 1;
    double delta = 0.0;  // 0: t/50
  } sim;

  struct Spectral {
    double L = 20.0;
    int N = 1024;
    int K = 400;
  } spectral;

  struct Verify {
    double t_min = 0.01;
    double t_max = 10.0;
    int t_n = 13;
    std::vector<double> x_set = {0.0, 1.0, 2.0, 4.0, 8.0};
    double spread_small = 1000.0;
    double spread_large = 100.0;
    std::string oracle = "spectral";
  } verify;

  struct Output {
    std::string dir = ".";
  } output;

  std::string config_hash;  // FNV-1a of the file bytes, hex

  PotentialProfile build_profile() const;
  /// Threshold fit + envelope constants; lambda1 must be supplied when
  /// the config leaves it at 0.
  EnvelopeConfig build_envelope_config(double lambda1_value) const;
  SpreadThresholds spread_thresholds() const;
};

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace fracheat
