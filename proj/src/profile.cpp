#include "fracheat/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracheat {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

PotentialProfile PotentialProfile::power(double p, int d) {
  require(p > 0.0, "power profile requires p > 0");
  require(d >= 1, "dimension must be >= 1");
  PotentialProfile prof;
  prof.kind_ = ProfileKind::Power;
  prof.d_ = d;
  prof.param_ = p;
  std::ostringstream os;
  os << "power p=" << p;
  prof.description_ = os.str();
  return prof;
}

PotentialProfile PotentialProfile::log_pow(double beta, int d) {
  require(beta > 0.0, "log profile requires beta > 0");
  require(d >= 1, "dimension must be >= 1");
  PotentialProfile prof;
  prof.kind_ = ProfileKind::Log;
  prof.d_ = d;
  prof.param_ = beta;
  std::ostringstream os;
  os << "log beta=" << beta;
  prof.description_ = os.str();
  return prof;
}

PotentialProfile PotentialProfile::custom(std::vector<double> radii,
                                          std::vector<double> values, int d,
                                          bool normalize_g0) {
  require(d >= 1, "dimension must be >= 1");
  require(radii.size() == values.size(), "custom table: length mismatch");
  require(radii.size() >= 2, "custom table needs at least two nodes");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    require(radii[i] >= 0.0 && radii[i] < radii[i + 1],
            "custom table: radii must be non-negative, strictly increasing");
    if (values[i + 1] < values[i]) {
      std::ostringstream os;
      os << "custom table not monotone at r=" << radii[i + 1] << ": g="
         << values[i + 1] << " < " << values[i];
      throw std::invalid_argument(os.str());
    }
  }
  if (normalize_g0) {
    const double g0 = values.front();
    require(g0 > 0.0, "custom table: g(0) must be positive");
    for (double& v : values) v /= g0;
  }
  if (values.front() < 1.0) {
    std::ostringstream os;
    os << "custom table: g(" << radii.front() << ")=" << values.front()
       << " < 1";
    throw std::invalid_argument(os.str());
  }
  PotentialProfile prof;
  prof.kind_ = ProfileKind::Custom;
  prof.d_ = d;
  prof.param_ = 0.0;
  prof.table_u_.reserve(radii.size());
  prof.table_w_.reserve(values.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    prof.table_u_.push_back(std::log1p(radii[i]));
    prof.table_w_.push_back(std::log(values[i]));
  }
  prof.description_ = "custom table";
  return prof;
}

double PotentialProfile::g(double r) const {
  switch (kind_) {
    case ProfileKind::Power:
      return std::pow(1.0 + r, param_);
    case ProfileKind::Log: {
      const double e = 2.718281828459045235;
      return std::pow(std::log(e + r), param_);
    }
    case ProfileKind::Custom: {
      const double u = std::log1p(r);
      const auto& us = table_u_;
      const auto& ws = table_w_;
      if (u <= us.front()) return std::exp(ws.front());
      std::size_t hi;
      double slope;
      if (u >= us.back()) {
        hi = us.size() - 1;  // extend by the last two-node slope
        slope = (ws[hi] - ws[hi - 1]) / (us[hi] - us[hi - 1]);
        return std::exp(ws[hi] + slope * (u - us[hi]));
      }
      hi = static_cast<std::size_t>(
          std::upper_bound(us.begin(), us.end(), u) - us.begin());
      slope = (ws[hi] - ws[hi - 1]) / (us[hi] - us[hi - 1]);
      return std::exp(ws[hi - 1] + slope * (u - us[hi - 1]));
    }
  }
  return 1.0;
}

double PotentialProfile::V(std::span<const double> x) const {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return g(std::sqrt(s));
}

std::vector<double> validation_grid(double r_max) {
  // Geometric grid; doubling is a dyadic condition, so log-spaced radii.
  const int n = 64;
  const double r0 = std::pow(2.0, -6);
  std::vector<double> grid;
  grid.reserve(n + 1);
  grid.push_back(0.0);
  const double ratio = std::pow(r_max / r0, 1.0 / (n - 1));
  double r = r0;
  for (int i = 0; i < n; ++i, r *= ratio) grid.push_back(r);
  grid.back() = r_max;
  return grid;
}

AssumptionHReport verify_assumption_h(const PotentialProfile& profile,
                                      double r_max, int n_samples) {
  if (r_max <= 1.0) throw std::invalid_argument("r_max must exceed 1");
  if (n_samples < 16) throw std::invalid_argument("need n_samples >= 16");

  AssumptionHReport rep;
  std::vector<double> grid;
  grid.push_back(0.0);
  const double r0 = std::pow(2.0, -6);
  const double ratio = std::pow(r_max / r0, 1.0 / (n_samples - 1));
  double r = r0;
  for (int i = 0; i < n_samples; ++i, r *= ratio) grid.push_back(r);
  grid.back() = r_max;
  rep.sample_grid = grid;

  double prev = -1.0;
  for (double ri : grid) {
    const double gi = profile.g(ri);
    if (gi < 1.0) {
      std::ostringstream os;
      os << "g(" << ri << ")=" << gi << " violates g >= 1";
      throw std::runtime_error(os.str());
    }
    if (gi < prev) {
      std::ostringstream os;
      os << "g not monotone at r=" << ri << ": " << gi << " < " << prev;
      throw std::runtime_error(os.str());
    }
    prev = gi;
  }

  double dbl = 1.0;
  for (double ri : grid) {
    if (2.0 * ri > r_max) break;
    dbl = std::max(dbl, profile.g(2.0 * ri) / profile.g(ri));
  }
  rep.doubling_constant = dbl;
  rep.growth_verified = profile.g(r_max) > 10.0 * profile.g(0.0);

  // q1: least-squares slope of log g against log(1+r), upper half of grid.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = grid.size() / 2; i < grid.size(); ++i) {
    const double x = std::log1p(grid[i]);
    const double y = std::log(profile.g(grid[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  rep.q1_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

}  // namespace fracheat
