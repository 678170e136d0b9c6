#pragma once

#include <Eigen/Core>
#include <optional>

namespace specrp {

// All tracker matrices are tiny (d <= 6 in every experiment); fixed-capacity
// storage keeps the ARE fixed-point loop off the heap.
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;

// Linear Gaussian state-space parameters: x_{k+1} = A x_k + w_k,
// y_k = C x_k + v_k, with w ~ N(0, Q) and v ~ N(0, R).
struct TrackerParams {
  SmallMatrix A;
  SmallMatrix C;
  SmallMatrix Q;  // symmetric positive definite, function of the probe
  SmallMatrix R;  // symmetric positive definite, function of the response

  void validate() const;  // throws on asymmetry or non-positive-definiteness
};

struct KalmanState {
  SmallVector xhat;
  SmallMatrix Sigma;  // symmetric nonnegative definite
};

inline constexpr double kAreTol = 1e-10;
inline constexpr int kAreMaxIter = 100000;

// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
// (rotation threshold 1e-14). Throws on asymmetric input.
SmallVector symmetric_eigenvalues(const SmallMatrix& S, double sym_tol = 1e-10);

double lambda_max(const SmallMatrix& S, double sym_tol = 1e-10);

// One measurement update of the classical Kalman recursion (predict with A,
// Q, then correct with y through C, R); the posterior covariance is
// symmetrized. Throws if the innovation covariance is numerically singular
// (condition number > 1e12).
KalmanState kalman_step(const KalmanState& state, const SmallVector& y,
                        const TrackerParams& params);

// Fixed point of the one-step predicted-covariance map, iterated from
// Sigma_0 = Q until the ARE residual infinity norm is <= tol. Throws on
// non-convergence.
SmallMatrix solve_are(const TrackerParams& params, double tol = kAreTol,
                      int max_iter = kAreMaxIter);

// Same fixed-point iteration started from a caller-supplied nonnegative
// definite Sigma0 (warm start for sweeps of nearby configurations).
SmallMatrix solve_are_from(const TrackerParams& params,
                           const SmallMatrix& Sigma0, double tol = kAreTol,
                           int max_iter = kAreMaxIter);

double are_residual(const TrackerParams& params, const SmallMatrix& Sigma);

// Fixed point of Sigma = A Sigma A' + Q; nullopt when the iteration diverges
// (spectral radius of A >= 1).
std::optional<SmallMatrix> solve_lyapunov(const SmallMatrix& A,
                                          const SmallMatrix& Q,
                                          double tol = kAreTol,
                                          int max_iter = kAreMaxIter);

}  // namespace specrp
