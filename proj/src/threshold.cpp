#include "fracheat/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracheat {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::AlmostIncreasing: return "almost_increasing";
    case Classification::AlmostDecreasing: return "almost_decreasing";
    case Classification::Neither: return "neither";
  }
  return "neither";
}

double solve_t0(const PotentialProfile& profile, double alpha, double s,
                double tol) {
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  if (s < 0.0) throw std::invalid_argument("s must be non-negative");
  const double gs = profile.g(s);
  const double pow_s = std::pow(1.0 + s, alpha);
  // F(t) = exp(-t g) - t/(1+s)^alpha is strictly decreasing, F(0) = 1,
  // and F < 0 at the bracket top (the top exceeds alpha*log(1+s)/g + 1).
  double lo = 0.0;
  double hi = std::max(1.0, alpha * std::log1p(s) / gs + 1.0);
  const auto F = [&](double t) { return std::exp(-t * gs) - t / pow_s; };
  double mid = 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = F(mid);
    if (std::abs(fm) <= tol || hi - lo <= 1e-18 * mid) break;
    (fm > 0.0 ? lo : hi) = mid;
  }
  return mid;
}

std::vector<double> isotonic_fit(const std::vector<double>& y,
                                 bool increasing) {
  // PAVA with uniform weights; the antitonic fit runs on negated data.
  const std::size_t n = y.size();
  std::vector<double> vals(n), counts(n);
  std::vector<std::size_t> sizes(n);
  std::size_t top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = increasing ? y[i] : -y[i];
    vals[top] = v;
    counts[top] = 1.0;
    sizes[top] = 1;
    while (top > 0 && vals[top - 1] >= vals[top]) {
      const double c = counts[top - 1] + counts[top];
      vals[top - 1] = (vals[top - 1] * counts[top - 1] +
                       vals[top] * counts[top]) / c;
      counts[top - 1] = c;
      sizes[top - 1] += sizes[top];
      --top;
    }
    ++top;
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t b = 0; b < top; ++b) {
    const double v = increasing ? vals[b] : -vals[b];
    out.insert(out.end(), sizes[b], v);
  }
  return out;
}

std::vector<double> threshold_grid(double s_max, int n) {
  if (n < 32) throw std::invalid_argument("threshold grid needs >= 32 points");
  std::vector<double> grid;
  grid.reserve(n);
  grid.push_back(0.0);
  const double s0 = 1.0 / 64.0;
  const double ratio = std::pow(s_max / s0, 1.0 / (n - 2));
  double s = s0;
  for (int i = 1; i < n; ++i, s *= ratio) grid.push_back(s);
  grid.back() = s_max;
  return grid;
}

namespace {

double spread_of(const std::vector<double>& t0,
                 const std::vector<double>& h) {
  double sp = 1.0;
  for (std::size_t i = 0; i < t0.size(); ++i) {
    const double r = t0[i] / h[i];
    sp = std::max(sp, std::max(r, 1.0 / r));
  }
  return sp;
}

}  // namespace

ThresholdModel fit_threshold_model(const PotentialProfile& profile,
                                   double alpha,
                                   const std::vector<double>& s_grid,
                                   double class_threshold) {
  if (s_grid.size() < 32)
    throw std::invalid_argument("fit grid needs >= 32 points");
  ThresholdModel m;
  m.alpha = alpha;
  m.profile = profile;
  m.sample_s = s_grid;
  m.sample_t0.reserve(s_grid.size());
  std::vector<double> logs;
  logs.reserve(s_grid.size());
  for (double s : s_grid) {
    const double t0 = solve_t0(profile, alpha, s);
    m.sample_t0.push_back(t0);
    logs.push_back(std::log(t0));
  }

  // Fit in log space: the comparability constant C_* is multiplicative.
  const std::vector<double> inc_log = isotonic_fit(logs, true);
  const std::vector<double> dec_log = isotonic_fit(logs, false);
  std::vector<double> h_inc(inc_log.size()), h_dec(dec_log.size());
  for (std::size_t i = 0; i < inc_log.size(); ++i) {
    h_inc[i] = std::exp(inc_log[i]);
    h_dec[i] = std::exp(dec_log[i]);
  }
  const double sp_inc = spread_of(m.sample_t0, h_inc);
  const double sp_dec = spread_of(m.sample_t0, h_dec);

  const bool increasing = sp_inc <= sp_dec;  // ties: bounded h is (2-i)
  m.h_fit = increasing ? std::move(h_inc) : std::move(h_dec);
  m.C_star = increasing ? sp_inc : sp_dec;
  m.classification = m.C_star <= class_threshold
                         ? (increasing ? Classification::AlmostIncreasing
                                       : Classification::AlmostDecreasing)
                         : Classification::Neither;

  double dbl = 1.0;
  for (double s : s_grid) {
    if (2.0 * s > s_grid.back()) break;
    const double r = m.h(2.0 * s) / m.h(s);
    dbl = std::max(dbl, std::max(r, 1.0 / r));
  }
  m.C_doubling = dbl;
  m.T0 = m.h(2.0);
  m.T_inf = m.h_fit.back();
  return m;
}

double ThresholdModel::h(double s) const {
  const auto& ss = sample_s;
  const auto& hs = h_fit;
  if (s <= ss.front()) return hs.front();
  if (s >= ss.back()) return hs.back();
  const std::size_t hi = static_cast<std::size_t>(
      std::upper_bound(ss.begin(), ss.end(), s) - ss.begin());
  const double ua = std::log(2.0 + ss[hi - 1]);
  const double ub = std::log(2.0 + ss[hi]);
  const double u = std::log(2.0 + s);
  const double wa = std::log(hs[hi - 1]);
  const double wb = std::log(hs[hi]);
  return std::exp(wa + (wb - wa) * (u - ua) / (ub - ua));
}

namespace {

// Leftmost s in [lo_s, hi_s] where pred(h(s)) flips from false to true,
// to relative tolerance 1e-6.
template <typename Pred>
double bisect_inverse(const ThresholdModel& m, double lo, double hi,
                      Pred hit) {
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hit(m.h(mid)))
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-6 * (2.0 + hi)) break;
  }
  return hi;
}

}  // namespace

double eval_s0(const ThresholdModel& model, double t) {
  if (model.classification != Classification::AlmostDecreasing)
    throw std::logic_error("s0 needs an almost-decreasing model");
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const double s_lo = model.sample_s.front();
  const double s_hi = model.sample_s.back();
  if (model.h(s_lo) <= t) return 2.0;          // h never exceeds t: inf at 0
  if (model.h(s_hi) > t) return std::max(s_hi, 2.0);  // inf empty on grid
  const double s = bisect_inverse(model, s_lo, s_hi,
                                  [t](double h) { return h <= t; });
  return std::max(s, 2.0);
}

double eval_s1(const ThresholdModel& model, double t) {
  if (model.classification != Classification::AlmostIncreasing)
    throw std::logic_error("s1 needs an almost-increasing model");
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  const double s_lo = model.sample_s.front();
  const double s_hi = model.sample_s.back();
  if (model.h(s_lo) >= t) return 2.0;
  if (model.h(s_hi) < t) return std::max(s_hi, 2.0);
  const double s = bisect_inverse(model, s_lo, s_hi,
                                  [t](double h) { return h >= t; });
  return std::max(s, 2.0);
}

}  // namespace fracheat
