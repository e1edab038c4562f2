#include "fracheat/stable_sim.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracheat/envelopes.hpp"

namespace fracheat {

namespace {

constexpr double kPi = 3.14159265358979323846;
// log(1e30): accumulated action beyond this makes the weight < 1e-30.
constexpr double kActionCutoff = 69.077552789821371;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t v, int k) {
  return (v << k) | (v >> (64 - k));
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t path_index) {
  std::uint64_t state = seed ^ (path_index * 0xd1342543de82ef95ull + 1ull);
  for (auto& si : s_) si = splitmix64(state);
}

std::uint64_t PathRng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double PathRng::uniform() {
  // 53-bit mantissa in (0,1): the +0.5 offset excludes both endpoints.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PathRng::exponential() { return -std::log(uniform()); }

double PathRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double radius = std::sqrt(2.0 * exponential());
  const double angle = 2.0 * kPi * uniform();
  cached_normal_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

double sample_stable_symmetric(double alpha, PathRng& rng) {
  if (alpha <= 0.0 || alpha >= 2.0)
    throw std::invalid_argument("alpha must lie in (0,2)");
  const double u = kPi * (rng.uniform() - 0.5);  // Uniform(-pi/2, pi/2)
  const double e = rng.exponential();
  // CMS, symmetric case; reduces to tan(u) at alpha = 1.
  const double su = std::sin(alpha * u);
  const double cu = std::pow(std::cos(u), 1.0 / alpha);
  const double tail =
      std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
  return su / cu * tail;
}

double sample_stable_subordinator(double rho, PathRng& rng) {
  if (rho <= 0.0 || rho >= 1.0)
    throw std::invalid_argument("subordinator index must lie in (0,1)");
  const double u = kPi * rng.uniform();  // Uniform(0, pi)
  const double e = rng.exponential();
  const double a = std::pow(std::sin(rho * u), rho / (1.0 - rho)) *
                   std::sin((1.0 - rho) * u) /
                   std::pow(std::sin(u), 1.0 / (1.0 - rho));
  return std::pow(a / e, (1.0 - rho) / rho);
}

void sample_increment(double alpha, double dt, int d, PathRng& rng,
                      std::span<double> out) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (static_cast<int>(out.size()) != d)
    throw std::invalid_argument("output size must equal d");
  if (d == 1) {
    out[0] = std::pow(dt, 1.0 / alpha) * sample_stable_symmetric(alpha, rng);
    return;
  }
  // Subordination: S with Laplace exp(-dt lambda^(alpha/2)), then B(2S).
  const double s =
      std::pow(dt, 2.0 / alpha) * sample_stable_subordinator(0.5 * alpha, rng);
  const double sd = std::sqrt(2.0 * s);
  for (int i = 0; i < d; ++i) out[i] = sd * rng.normal();
}

Potential potential_of(const PotentialProfile& profile) {
  return [profile](std::span<const double> x) { return profile.V(x); };
}

double feynman_kac_weight(std::span<const PathPoint> path,
                          const Potential& V) {
  if (path.size() < 2)
    throw std::invalid_argument("path needs at least two points");
  double action = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double dt = path[i + 1].time - path[i].time;
    if (dt <= 0.0)
      throw std::invalid_argument("path times must be strictly increasing");
    action += V(path[i].x) * dt;
  }
  return std::exp(-action);
}

double feynman_kac_weight(std::span<const PathPoint> path,
                          const PotentialProfile& profile) {
  return feynman_kac_weight(path, potential_of(profile));
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) +
         pairwise_sum(values.subspan(half));
}

namespace {

MeanStderr reduce(const std::vector<double>& samples) {
  const double n = static_cast<double>(samples.size());
  const double mean = pairwise_sum(samples) / n;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double d = samples[i] - mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / (n * (n - 1.0));
  return {mean, std::sqrt(var)};
}

}  // namespace

MeanStderr estimate_survival(std::span<const double> x, double t,
                             const SimConfig& cfg,
                             const Potential* V_override) {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  if (cfg.n_steps < 10) throw std::invalid_argument("need n_steps >= 10");
  if (static_cast<int>(x.size()) != cfg.d)
    throw std::invalid_argument("start point dimension mismatch");
  const Potential V =
      V_override != nullptr ? *V_override : potential_of(cfg.profile);

  const double dt = t / cfg.n_steps;
  std::vector<double> weights(cfg.n_paths);
  std::vector<double> pos(cfg.d), inc(cfg.d);
  for (long p = 0; p < cfg.n_paths; ++p) {
    PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
    pos.assign(x.begin(), x.end());
    double action = 0.0;
    for (int i = 0; i < cfg.n_steps; ++i) {
      action += V(pos) * dt;
      if (action > kActionCutoff) break;
      sample_increment(cfg.alpha, dt, cfg.d, rng, inc);
      for (int j = 0; j < cfg.d; ++j) pos[j] += inc[j];
    }
    weights[p] = std::exp(-action);
  }
  return reduce(weights);
}

KernelEstimateEntry estimate_kernel(double x, double y, double t,
                                    const SimConfig& cfg,
                                    const Potential* V_override) {
  if (cfg.d != 1)
    throw std::invalid_argument(
        "kernel estimation needs d = 1 (exact terminal kernel)");
  const double delta = cfg.delta > 0.0 ? cfg.delta : t / 50.0;
  if (delta >= t) throw std::invalid_argument("requires delta < t");
  if (cfg.n_steps < 10) throw std::invalid_argument("need n_steps >= 10");
  const Potential V =
      V_override != nullptr ? *V_override : potential_of(cfg.profile);

  const bool cauchy = cfg.alpha == 1.0;
  const auto terminal = [&](double z) {
    const double r = z - y;
    if (cauchy) return delta / (kPi * (delta * delta + r * r));
    return free_kernel_exact_1d(delta, std::abs(r), cfg.alpha);
  };

  const double horizon = t - delta;
  const double dt = horizon / cfg.n_steps;
  std::vector<double> samples(cfg.n_paths);
  std::vector<double> pos(1), inc(1);
  for (long p = 0; p < cfg.n_paths; ++p) {
    PathRng rng(cfg.seed, static_cast<std::uint64_t>(p));
    pos[0] = x;
    double action = 0.0;
    bool dead = false;
    for (int i = 0; i < cfg.n_steps; ++i) {
      action += V(pos) * dt;
      if (action > kActionCutoff) {
        dead = true;
        break;
      }
      sample_increment(cfg.alpha, dt, 1, rng, inc);
      pos[0] += inc[0];
    }
    samples[p] = dead ? 0.0 : std::exp(-action) * terminal(pos[0]);
  }
  const MeanStderr ms = reduce(samples);

  KernelEstimateEntry entry;
  entry.t = t;
  entry.x = x;
  entry.y = y;
  entry.value = ms.mean;
  entry.stderr = ms.stderr;
  entry.n_paths = cfg.n_paths;
  std::ostringstream note;
  std::vector<double> ypt = {y};
  note << "terminal-window bias ~ delta*V(y) = " << delta * V(ypt);
  entry.bias_note = note.str();
  return entry;
}

}  // namespace fracheat
