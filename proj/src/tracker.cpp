#include "specrp/tracker.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

namespace specrp {

namespace {

void check_symmetric(const SmallMatrix& S, double tol, const char* what) {
  if (S.rows() != S.cols())
    throw std::invalid_argument(std::string(what) + ": matrix not square");
  for (int i = 0; i < S.rows(); ++i)
    for (int j = i + 1; j < S.cols(); ++j)
      if (std::abs(S(i, j) - S(j, i)) > tol)
        throw std::invalid_argument(std::string(what) + ": matrix not symmetric");
}

SmallMatrix symmetrized(const SmallMatrix& S) {
  return 0.5 * (S + S.transpose());
}

}  // namespace

SmallVector symmetric_eigenvalues(const SmallMatrix& S, double sym_tol) {
  check_symmetric(S, sym_tol, "symmetric_eigenvalues");
  const int d = static_cast<int>(S.rows());
  SmallMatrix a = symmetrized(S);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double thresh = 1e-14 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= thresh) break;

    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        if (std::abs(a(p, q)) <= thresh) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  SmallVector ev(d);
  for (int i = 0; i < d; ++i) ev(i) = a(i, i);
  std::sort(ev.data(), ev.data() + d);
  return ev;
}

double lambda_max(const SmallMatrix& S, double sym_tol) {
  const SmallVector ev = symmetric_eigenvalues(S, sym_tol);
  return ev(ev.size() - 1);
}

void TrackerParams::validate() const {
  if (A.rows() != A.cols()) throw std::invalid_argument("A must be square");
  if (C.cols() != A.rows()) throw std::invalid_argument("C columns must match A");
  check_symmetric(Q, 1e-12, "Q");
  check_symmetric(R, 1e-12, "R");
  if (Q.rows() != A.rows()) throw std::invalid_argument("Q size must match A");
  if (R.rows() != C.rows()) throw std::invalid_argument("R size must match C rows");
  if (symmetric_eigenvalues(Q)(0) <= 0.0)
    throw std::invalid_argument("Q must be positive definite");
  if (symmetric_eigenvalues(R)(0) <= 0.0)
    throw std::invalid_argument("R must be positive definite");
}

KalmanState kalman_step(const KalmanState& state, const SmallVector& y,
                        const TrackerParams& params) {
  // Q = 0 (noise-free dynamics) is allowed here; only the innovation
  // covariance must stay invertible.
  check_symmetric(params.Q, 1e-12, "Q");
  check_symmetric(params.R, 1e-12, "R");
  const int d = static_cast<int>(params.A.rows());
  const int p = static_cast<int>(params.C.rows());
  if (state.xhat.size() != d || state.Sigma.rows() != d || y.size() != p)
    throw std::invalid_argument("kalman_step: dimension mismatch");

  const SmallMatrix pred =
      symmetrized(params.A * state.Sigma * params.A.transpose() + params.Q);
  const SmallMatrix innov_cov =
      symmetrized(params.C * pred * params.C.transpose() + params.R);

  const SmallVector ev = symmetric_eigenvalues(innov_cov);
  if (!(ev(0) > 0.0) || ev(p - 1) / ev(0) > 1e12)
    throw std::runtime_error("kalman_step: innovation covariance singular");

  const SmallMatrix gain =
      pred * params.C.transpose() * innov_cov.inverse();
  const SmallVector xpred = params.A * state.xhat;

  KalmanState next;
  next.xhat = xpred + gain * (y - params.C * xpred);
  next.Sigma = symmetrized(pred - gain * params.C * pred);
  return next;
}

double are_residual(const TrackerParams& params, const SmallMatrix& Sigma) {
  const SmallMatrix innov_cov =
      params.C * Sigma * params.C.transpose() + params.R;
  const SmallMatrix updated =
      Sigma - Sigma * params.C.transpose() * innov_cov.inverse() * params.C *
                  Sigma;
  const SmallMatrix next =
      params.A * updated * params.A.transpose() + params.Q;
  return (next - Sigma).cwiseAbs().maxCoeff();
}

SmallMatrix solve_are(const TrackerParams& params, double tol, int max_iter) {
  return solve_are_from(params, params.Q, tol, max_iter);
}

SmallMatrix solve_are_from(const TrackerParams& params,
                           const SmallMatrix& Sigma0, double tol,
                           int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("solve_are: tol must be > 0");
  SmallMatrix sigma = symmetrized(Sigma0);
  const SmallMatrix At = params.A.transpose();
  const SmallMatrix Ct = params.C.transpose();
  for (int iter = 0; iter < max_iter; ++iter) {
    const SmallMatrix innov_cov = params.C * sigma * Ct + params.R;
    const SmallMatrix updated = sigma - sigma * Ct * innov_cov.inverse() *
                                            params.C * sigma;
    const SmallMatrix next =
        symmetrized(params.A * updated * At + params.Q);
    if ((next - sigma).cwiseAbs().maxCoeff() <= tol) return sigma;
    sigma = next;
  }
  throw std::runtime_error(
      "solve_are: no convergence (configuration may be undetectable or "
      "unstabilizable)");
}

std::optional<SmallMatrix> solve_lyapunov(const SmallMatrix& A,
                                          const SmallMatrix& Q, double tol,
                                          int max_iter) {
  if (A.rows() != A.cols() || Q.rows() != A.rows() || Q.rows() != Q.cols())
    throw std::invalid_argument("solve_lyapunov: dimension mismatch");
  const double blowup = 1e12 * (Q.cwiseAbs().maxCoeff() + 1.0);
  SmallMatrix sigma = symmetrized(Q);
  for (int iter = 0; iter < max_iter; ++iter) {
    const SmallMatrix next = symmetrized(A * sigma * A.transpose() + Q);
    if ((next - sigma).cwiseAbs().maxCoeff() <= tol) return next;
    if (next.cwiseAbs().maxCoeff() > blowup) return std::nullopt;
    sigma = next;
  }
  return std::nullopt;
}

}  // namespace specrp
