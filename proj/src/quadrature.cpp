#include "fracheat/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace fracheat {

namespace {

// Kronrod-15 abscissae/weights on [-1,1] and the embedded Gauss-7 weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = hw * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {resk * hw, std::abs((resk - resg) * hw)};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double abs_tol, double rel_tol, int depth, double& acc) {
  const GkResult r = gk15(f, a, b);
  if (depth >= 48 || r.error <= abs_tol + rel_tol * std::abs(r.value)) {
    acc += r.value;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * abs_tol, rel_tol, depth + 1, acc);
  adapt(f, c, b, 0.5 * abs_tol, rel_tol, depth + 1, acc);
}

// Wynn epsilon table applied to the sequence of partial sums.
double wynn_epsilon(const std::vector<double>& partial) {
  const std::size_t n = partial.size();
  std::vector<double> prev(n, 0.0);  // eps_{-1}
  std::vector<double> cur = partial;
  double best = partial.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (std::abs(diff) < 1e-300) {
        return cur[i + 1];  // converged to machine precision
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (k % 2 == 0 && !next.empty()) best = next.back();
    prev = std::move(cur);
    cur = std::move(next);
    if (cur.size() < 2) break;
  }
  return best;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
  if (a == b) return 0.0;
  double acc = 0.0;
  adapt(f, a, b, abs_tol, rel_tol, 0, acc);
  return acc;
}

double fourier_cos_decay(double tau, double alpha, double abs_tol) {
  const auto f = [tau, alpha](double u) {
    return std::exp(-tau * std::pow(u, alpha)) * std::cos(u);
  };
  // Envelope is below e^-60 past u_max.
  const double u_max = std::pow(60.0 / tau, 1.0 / alpha);
  const double pi = 3.14159265358979323846;
  if (u_max <= 0.5 * pi) {
    return integrate(f, 0.0, u_max, abs_tol, 1e-12);
  }

  // Cycle decomposition at the zeros of cos: u_k = pi/2 + k*pi.
  double head = integrate(f, 0.0, 0.5 * pi, 0.1 * abs_tol, 1e-12);
  std::vector<double> partial;
  const std::size_t max_cycles = 512;
  partial.reserve(max_cycles);
  double sum = head;
  double lo = 0.5 * pi;
  for (std::size_t k = 0; k < max_cycles; ++k) {
    const double hi = lo + pi;
    const double seg = (hi >= u_max) ? integrate(f, lo, std::max(lo, u_max),
                                                 0.1 * abs_tol, 1e-12)
                                     : gk15(f, lo, hi).value;
    sum += seg;
    partial.push_back(sum);
    if (hi >= u_max) return sum;  // envelope exhausted: raw sum is exact
    if (std::abs(seg) < 0.05 * abs_tol && k >= 4) return sum;
    lo = hi;
  }
  // Slowly decaying alternating tail: extrapolate the partial sums.
  const std::size_t keep = 48;
  if (partial.size() > keep) {
    partial.erase(partial.begin(), partial.end() - keep);
  }
  return wynn_epsilon(partial);
}

}  // namespace fracheat
