#include "fracheat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "fracheat/envelopes.hpp"

namespace fracheat {

int SpectralModel::nearest_index(double x) const {
  const double fi = (x + L) / h;
  const int i = static_cast<int>(std::lround(fi));
  return std::clamp(i, 0, N - 1);
}

std::vector<double> centered_diff_weights(double alpha, int k_max) {
  if (alpha <= 0.0 || alpha >= 2.0)
    throw std::invalid_argument("alpha must lie in (0,2)");
  std::vector<double> w(k_max + 1);
  // w_0 = Gamma(alpha+1)/Gamma(alpha/2+1)^2; the ratio
  // w_{k+1}/w_k = (k - alpha/2) / (k + 1 + alpha/2) is cancellation-free.
  const double half = 0.5 * alpha;
  w[0] = std::tgamma(alpha + 1.0) / std::pow(std::tgamma(half + 1.0), 2);
  for (int k = 0; k < k_max; ++k) {
    w[k + 1] = w[k] * (k - half) / (k + 1.0 + half);
  }
  return w;
}

Eigen::MatrixXd build_operator(double L, int N, double alpha,
                               const PotentialProfile& profile) {
  if (N < 64) throw std::invalid_argument("N must be >= 64");
  if (L <= 0.0) throw std::invalid_argument("L must be positive");
  const double h = 2.0 * L / (N - 1);
  const double scale = std::pow(h, -alpha);
  const std::vector<double> w = centered_diff_weights(alpha, N - 1);
  Eigen::MatrixXd A(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      A(i, j) = scale * w[std::abs(i - j)];
    }
  }
  for (int i = 0; i < N; ++i) {
    const double x = -L + i * h;
    const double v = profile.g(std::abs(x));
    if (!std::isfinite(v))
      throw std::invalid_argument("potential is not finite on the grid");
    A(i, i) += v;
  }
  return A;
}

SpectralModel eigendecompose(double L, int N, double alpha,
                             const PotentialProfile& profile, int K) {
  if (K < 1 || K > N) throw std::invalid_argument("need 1 <= K <= N");
  const Eigen::MatrixXd A = build_operator(L, N, alpha, profile);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");

  SpectralModel m;
  m.L = L;
  m.N = N;
  m.h = 2.0 * L / (N - 1);
  m.alpha = alpha;
  m.profile = profile;
  m.K = K;
  m.grid.resize(N);
  for (int i = 0; i < N; ++i) m.grid[i] = -L + i * m.h;
  m.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + K);

  const double rescale = 1.0 / std::sqrt(m.h);
  m.modes.resize(K, N);
  for (int n = 0; n < K; ++n) {
    m.modes.row(n) = solver.eigenvectors().col(n).transpose() * rescale;
  }
  // Ground state positive at the grid center.
  if (m.modes(0, N / 2) < 0.0) m.modes.row(0) = -m.modes.row(0);
  return m;
}

std::vector<double> operator_eigenvalues(double L, int N, double alpha,
                                         const PotentialProfile& profile,
                                         int n_values) {
  const Eigen::MatrixXd A = build_operator(L, N, alpha, profile);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");
  const int k = std::min<int>(n_values, N);
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + k};
}

double kernel_from_eigs(const SpectralModel& model, double t, int ix, int iy,
                        KernelDiag* diag) {
  if (t <= 0.0) throw std::invalid_argument("t must be positive");
  double sum = 0.0;
  for (int n = 0; n < model.K; ++n) {
    sum += std::exp(-model.eigenvalues[n] * t) * model.modes(n, ix) *
           model.modes(n, iy);
  }
  if (diag != nullptr) {
    const double lead = std::exp(-model.eigenvalues[0] * t);
    diag->truncation_warning =
        std::exp(-model.eigenvalues[model.K - 1] * t) * model.K >
        1e-8 * lead;
    diag->clipped = sum < 0.0;
  }
  return std::max(sum, 0.0);
}

double green_from_eigs(const SpectralModel& model, int ix, int iy,
                       double* tail_bound) {
  double sum = 0.0;
  for (int n = 0; n < model.K; ++n) {
    sum += model.modes(n, ix) * model.modes(n, iy) / model.eigenvalues[n];
  }
  if (tail_bound != nullptr) {
    const double phi_inf = model.modes.cwiseAbs().maxCoeff();
    *tail_bound = model.K * phi_inf * phi_inf / model.eigenvalues[model.K - 1];
  }
  return sum;
}

GroundState ground_state(const SpectralModel& model) {
  GroundState gs;
  gs.lambda1 = model.eigenvalues[0];
  gs.phi1.resize(model.N);
  gs.phi1_over_H.resize(model.N);
  for (int i = 0; i < model.N; ++i) {
    gs.phi1[i] = model.modes(0, i);
    const double H = ground_state_profile(std::abs(model.grid[i]),
                                          model.profile, model.alpha, 1);
    gs.phi1_over_H[i] = gs.phi1[i] / H;
  }
  return gs;
}

namespace {

constexpr char kMagic[8] = {'F', 'H', 'S', 'P', 'E', 'C', '0', '1'};

std::uint64_t profile_hash(const PotentialProfile& p) {
  // FNV-1a over the description string and dimension.
  std::uint64_t hash = 1469598103934665603ull;
  const auto mix = [&hash](const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(data[i]);
      hash *= 1099511628211ull;
    }
  };
  mix(p.description().data(), p.description().size());
  const int d = p.dimension();
  mix(reinterpret_cast<const char*>(&d), sizeof(d));
  return hash;
}

}  // namespace

void save_model(const SpectralModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint64_t hash = profile_hash(model.profile);
  const std::int64_t n64 = model.N, k64 = model.K;
  out.write(reinterpret_cast<const char*>(&model.L), sizeof(double));
  out.write(reinterpret_cast<const char*>(&n64), sizeof(n64));
  out.write(reinterpret_cast<const char*>(&model.alpha), sizeof(double));
  out.write(reinterpret_cast<const char*>(&k64), sizeof(k64));
  out.write(reinterpret_cast<const char*>(&hash), sizeof(hash));
  out.write(reinterpret_cast<const char*>(model.eigenvalues.data()),
            model.K * sizeof(double));
  out.write(reinterpret_cast<const char*>(model.modes.data()),
            static_cast<std::streamsize>(sizeof(double)) * model.K * model.N);
  if (!out) throw std::runtime_error("write failed: " + path);
}

SpectralModel load_model(const std::string& path,
                         const PotentialProfile& profile) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a spectral cache: " + path);
  SpectralModel m;
  std::int64_t n64 = 0, k64 = 0;
  std::uint64_t hash = 0;
  in.read(reinterpret_cast<char*>(&m.L), sizeof(double));
  in.read(reinterpret_cast<char*>(&n64), sizeof(n64));
  in.read(reinterpret_cast<char*>(&m.alpha), sizeof(double));
  in.read(reinterpret_cast<char*>(&k64), sizeof(k64));
  in.read(reinterpret_cast<char*>(&hash), sizeof(hash));
  if (hash != profile_hash(profile))
    throw std::runtime_error("cache profile hash mismatch: " + path);
  m.profile = profile;
  m.N = static_cast<int>(n64);
  m.K = static_cast<int>(k64);
  m.h = 2.0 * m.L / (m.N - 1);
  m.grid.resize(m.N);
  for (int i = 0; i < m.N; ++i) m.grid[i] = -m.L + i * m.h;
  m.eigenvalues.resize(m.K);
  in.read(reinterpret_cast<char*>(m.eigenvalues.data()),
          m.K * sizeof(double));
  m.modes.resize(m.K, m.N);
  in.read(reinterpret_cast<char*>(m.modes.data()),
          static_cast<std::streamsize>(sizeof(double)) * m.K * m.N);
  if (!in) throw std::runtime_error("truncated cache: " + path);
  return m;
}

}  // namespace fracheat
