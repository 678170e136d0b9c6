#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/LU>
#include <random>

#include "specrp/random.hpp"
#include "specrp/tracker.hpp"

using namespace specrp;

namespace {

SmallMatrix random_spd(int d, Rng& rng, double shift = 0.5) {
  std::normal_distribution<double> g(0.0, 1.0);
  SmallMatrix B(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = g(rng);
  SmallMatrix S = B * B.transpose();
  S.diagonal().array() += shift;
  return S;
}

}  // namespace

TEST_CASE("symmetric eigenvalues: known spectra") {
  CHECK(lambda_max(SmallMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  SmallMatrix d23 = SmallMatrix::Zero(2, 2);
  d23(0, 0) = 2.0;
  d23(1, 1) = 3.0;
  CHECK(lambda_max(d23) == doctest::Approx(3.0));

  SmallMatrix asym(2, 2);
  asym << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(symmetric_eigenvalues(asym), std::invalid_argument);
}

TEST_CASE("lambda_max matches a power-iteration oracle on random matrices") {
  Rng rng = make_rng(child_seed(31, "jacobi"));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const SmallMatrix S = random_spd(4, rng, 0.1);
    SmallVector v = SmallVector::Ones(4).normalized();
    double ev = 0.0;
    for (int it = 0; it < 100000; ++it) {
      SmallVector w = S * v;
      const double next = w.norm();
      w /= next;
      if ((w - v).norm() < 1e-12) {
        v = w;
        ev = next;
        break;
      }
      v = w;
      ev = next;
    }
    CHECK(lambda_max(S) == doctest::Approx(ev).epsilon(1e-9));

    // trace and determinant cross-check the full spectrum
    const SmallVector all = symmetric_eigenvalues(S);
    CHECK(all.sum() == doctest::Approx(S.trace()).epsilon(1e-10));
    CHECK(all.prod() == doctest::Approx(S.determinant()).epsilon(1e-8));
  }
}

TEST_CASE("kalman step: uninformative measurement leaves the prior") {
  TrackerParams p;
  p.A = SmallMatrix::Zero(2, 2);
  p.C = SmallMatrix::Identity(2, 2);
  p.Q = SmallMatrix::Identity(2, 2);
  p.R = 1e12 * SmallMatrix::Identity(2, 2);
  KalmanState s{SmallVector::Zero(2), SmallMatrix::Identity(2, 2)};
  const KalmanState next = kalman_step(s, SmallVector::Ones(2), p);
  CHECK((next.Sigma - p.Q).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("kalman step: noise-free known scalar state is inert") {
  TrackerParams p;
  p.A = SmallMatrix::Ones(1, 1);
  p.C = SmallMatrix::Ones(1, 1);
  p.Q = SmallMatrix::Zero(1, 1);
  p.R = SmallMatrix::Ones(1, 1);
  KalmanState s{SmallVector::Zero(1), SmallMatrix::Zero(1, 1)};
  s.xhat(0) = 3.0;
  for (double y : {100.0, -5.0, 0.0}) {
    SmallVector obs(1);
    obs(0) = y;
    s = kalman_step(s, obs, p);
    CHECK(s.Sigma(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.xhat(0) == doctest::Approx(3.0));
  }
}

TEST_CASE("kalman step matches joint-Gaussian conditioning") {
  Rng rng = make_rng(child_seed(37, "conditioning"));
  std::normal_distribution<double> g(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    TrackerParams p;
    p.A = SmallMatrix(2, 2);
    p.C = SmallMatrix(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        p.A(i, j) = g(rng);
        p.C(i, j) = g(rng);
      }
    p.Q = random_spd(2, rng);
    p.R = random_spd(2, rng);
    KalmanState s{SmallVector::Zero(2), random_spd(2, rng)};
    s.xhat << g(rng), g(rng);
    SmallVector y(2);
    y << g(rng), g(rng);

    const KalmanState next = kalman_step(s, y, p);

    // stack (x_{k+1}, y_{k+1}) and condition
    const Eigen::MatrixXd P = p.A * s.Sigma * p.A.transpose() + p.Q;
    Eigen::MatrixXd J(4, 4);
    J.topLeftCorner(2, 2) = P;
    J.topRightCorner(2, 2) = P * p.C.transpose();
    J.bottomLeftCorner(2, 2) = p.C * P;
    J.bottomRightCorner(2, 2) = p.C * P * p.C.transpose() + p.R;
    const Eigen::MatrixXd Syy_inv = J.bottomRightCorner(2, 2).fullPivLu().inverse();
    const Eigen::VectorXd prior_mean = p.A * s.xhat;
    const Eigen::VectorXd obs_mean = p.C * prior_mean;
    const Eigen::VectorXd cond_mean =
        prior_mean + J.topRightCorner(2, 2) * Syy_inv * (y - obs_mean);
    const Eigen::MatrixXd cond_cov =
        P - J.topRightCorner(2, 2) * Syy_inv * J.bottomLeftCorner(2, 2);

    CHECK((next.xhat - cond_mean).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((next.Sigma - cond_cov).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("kalman covariance is independent of the observations") {
  Rng rng = make_rng(child_seed(41, "cov-indep"));
  std::normal_distribution<double> g(0.0, 1.0);
  TrackerParams p;
  p.A = SmallMatrix(2, 2);
  p.A << 1.0, 1.0, 0.0, 1.0;
  p.C = SmallMatrix::Identity(2, 2);
  p.Q = random_spd(2, rng);
  p.R = random_spd(2, rng);
  KalmanState s1{SmallVector::Zero(2), SmallMatrix::Identity(2, 2)};
  KalmanState s2 = s1;
  for (int k = 0; k < 20; ++k) {
    SmallVector y1(2), y2(2);
    y1 << g(rng), g(rng);
    y2 << g(rng), g(rng);
    s1 = kalman_step(s1, y1, p);
    s2 = kalman_step(s2, y2, p);
    CHECK(s1.Sigma == s2.Sigma);  // bit-identical
  }
}

TEST_CASE("are: scalar closed form and trivial cases") {
  TrackerParams p;
  p.A = SmallMatrix::Ones(1, 1);
  p.C = SmallMatrix::Ones(1, 1);
  p.Q = SmallMatrix::Ones(1, 1);
  p.R = SmallMatrix::Ones(1, 1);
  const SmallMatrix s = solve_are(p);
  CHECK(s(0, 0) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-9));
  CHECK(are_residual(p, s) <= kAreTol);

  Rng rng = make_rng(child_seed(43, "are-a0"));
  TrackerParams pz;
  pz.A = SmallMatrix::Zero(3, 3);
  pz.C = SmallMatrix::Identity(3, 3);
  pz.Q = random_spd(3, rng);
  pz.R = random_spd(3, rng);
  CHECK((solve_are(pz) - pz.Q).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("are: kinematic configuration converges below 1e-10") {
  TrackerParams p;
  p.A = SmallMatrix(2, 2);
  p.A << 1.0, 1.0, 0.0, 1.0;
  p.C = SmallMatrix::Identity(2, 2);
  p.Q = SmallMatrix::Identity(2, 2);
  p.R = SmallMatrix::Identity(2, 2);
  const SmallMatrix s = solve_are(p);
  CHECK(are_residual(p, s) <= 1e-10);

  // warm start from the solution converges immediately to the same point
  const SmallMatrix warm = solve_are_from(p, s);
  CHECK((warm - s).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("are monotonicity in the observation noise") {
  Rng rng = make_rng(child_seed(47, "are-mono"));
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    TrackerParams p;
    p.A = SmallMatrix(2, 2);
    p.A << 1.0, 1.0, 0.0, 1.0;
    p.C = SmallMatrix::Identity(2, 2);
    p.Q = SmallMatrix::Identity(2, 2) * u(rng);
    p.R = SmallMatrix::Zero(2, 2);
    p.R(0, 0) = u(rng);
    p.R(1, 1) = u(rng);
    TrackerParams p2 = p;
    p2.R(0, 0) += u(rng);
    p2.R(1, 1) += u(rng);
    const SmallMatrix s1 = solve_are(p);
    const SmallMatrix s2 = solve_are(p2);
    CHECK(lambda_max(s2) >= lambda_max(s1) - 1e-9);
    CHECK(symmetric_eigenvalues(SmallMatrix(s2 - s1))(0) >= -1e-8);  // Loewner
  }
}

TEST_CASE("lyapunov: closed forms and divergence") {
  SmallMatrix A = SmallMatrix::Ones(1, 1) * 0.5;
  SmallMatrix Q = SmallMatrix::Ones(1, 1) * 0.75;
  auto s = solve_lyapunov(A, Q);
  REQUIRE(s.has_value());
  CHECK((*s)(0, 0) == doctest::Approx(1.0).epsilon(1e-9));

  Rng rng = make_rng(child_seed(53, "lyap"));
  const SmallMatrix Q3 = random_spd(3, rng);
  auto s0 = solve_lyapunov(SmallMatrix::Zero(3, 3), Q3);
  REQUIRE(s0.has_value());
  CHECK((*s0 - Q3).cwiseAbs().maxCoeff() < 1e-12);

  SmallMatrix kin(2, 2);
  kin << 1.0, 1.0, 0.0, 1.0;
  CHECK(!solve_lyapunov(kin, SmallMatrix::Identity(2, 2)).has_value());
}

TEST_CASE("validate rejects non-spd inputs") {
  TrackerParams p;
  p.A = SmallMatrix::Identity(2, 2);
  p.C = SmallMatrix::Identity(2, 2);
  p.Q = SmallMatrix::Identity(2, 2);
  p.R = SmallMatrix::Identity(2, 2);
  CHECK_NOTHROW(p.validate());
  p.Q(0, 0) = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.Q(0, 0) = 1.0;
  p.R(0, 1) = 0.5;  // asymmetric
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
