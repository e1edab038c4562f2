#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fracheat/profile.hpp"

namespace fracheat {

/// Discretization of (-Delta)^(alpha/2) + V on [-L, L] with exterior
/// killing, eigendecomposed.  Eigenfunctions are grid-orthonormal:
/// sum_i phi_n(x_i) phi_m(x_i) h = delta_nm; phi_1 is sign-fixed positive.
/// Immutable once built; evaluations are read-only.
struct SpectralModel {
  double L = 0.0;
  int N = 0;
  double h = 0.0;
  double alpha = 1.0;
  PotentialProfile profile;
  int K = 0;
  std::vector<double> grid;          // x_i = -L + i h
  std::vector<double> eigenvalues;   // ascending, K of them
  Eigen::MatrixXd modes;             // K x N, row n = phi_{n+1} on the grid

  int nearest_index(double x) const;
};

/// Weights of the fractional centered difference: w_0 > 0, w_k < 0 for
/// k != 0, w_{-k} = w_k; discrete symbol |2 sin(xi h/2) / h|^alpha after
/// the h^-alpha scaling.
std::vector<double> centered_diff_weights(double alpha, int k_max);

/// Dense symmetric matrix A = F + diag(V(x_i)), F the fractional centered
/// difference with u = 0 outside [-L, L].
Eigen::MatrixXd build_operator(double L, int N, double alpha,
                               const PotentialProfile& profile);

/// Lowest K eigenpairs of the operator, eigenvectors rescaled by h^(-1/2).
SpectralModel eigendecompose(double L, int N, double alpha,
                             const PotentialProfile& profile, int K);

/// Lowest n_values eigenvalues only (cheaper; used by refinement checks).
std::vector<double> operator_eigenvalues(double L, int N, double alpha,
                                         const PotentialProfile& profile,
                                         int n_values);

struct KernelDiag {
  bool truncation_warning = false;  // e^(-lambda_K t) * K above 1e-8 of lead
  bool clipped = false;             // negative synthesis value clipped to 0
};

/// p(t, x_i, x_j) = sum_n e^(-lambda_n t) phi_n(x_i) phi_n(x_j), clipped
/// at zero when truncation noise turns tiny values negative.
double kernel_from_eigs(const SpectralModel& model, double t, int ix, int iy,
                        KernelDiag* diag = nullptr);

/// G(x_i, x_j) = sum_n phi_n(x_i) phi_n(x_j) / lambda_n over retained
/// modes; *tail_bound (optional) receives K |phi|_inf^2 / lambda_K.
double green_from_eigs(const SpectralModel& model, int ix, int iy,
                       double* tail_bound = nullptr);

struct GroundState {
  double lambda1 = 0.0;
  std::vector<double> phi1;
  std::vector<double> phi1_over_H;  // comparability ratio table
};

GroundState ground_state(const SpectralModel& model);

/// Binary cache with a header recording (L, N, alpha, K, profile hash).
/// Loading re-attaches the given profile and rejects the file if its
/// recorded hash does not match.
void save_model(const SpectralModel& model, const std::string& path);
SpectralModel load_model(const std::string& path,
                         const PotentialProfile& profile);

}  // namespace fracheat
