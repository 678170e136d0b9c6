#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/LU>

#include "specrp/waveforms.hpp"

using namespace specrp;

namespace {

WaveformSpec unit_spec(WaveformFamily fam, double lambda, double b = 0.0) {
  WaveformSpec s;
  s.family = fam;
  s.lambda = lambda;
  s.b = b;
  s.c = 1.0;
  s.fc = 1.0;
  s.eta = 1.0;
  return s;
}

}  // namespace

TEST_CASE("closed forms at unit constants") {
  const SmallMatrix tri = obs_noise_cov(unit_spec(WaveformFamily::TriangularCW, 1.0));
  CHECK(tri(0, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(tri(1, 1) == doctest::Approx(5.0 / 2.0).epsilon(1e-14));
  CHECK(tri(0, 1) == 0.0);

  const SmallMatrix gau = obs_noise_cov(unit_spec(WaveformFamily::GaussianCW, 1.0));
  CHECK(gau(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gau(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gau(0, 1) == 0.0);
}

TEST_CASE("chirp with zero rate equals the gaussian continuous wave exactly") {
  for (double lambda : {0.1, 0.7, 1.0, 3.0}) {
    WaveformSpec chirp = unit_spec(WaveformFamily::GaussianLFMChirp, lambda, 0.0);
    chirp.c = 3e8;
    chirp.fc = 1e9;
    chirp.eta = 2.0;
    WaveformSpec cw = chirp;
    cw.family = WaveformFamily::GaussianCW;
    const SmallMatrix a = obs_noise_cov(chirp);
    const SmallMatrix b = obs_noise_cov(cw);
    CHECK(a(0, 0) == b(0, 0));
    CHECK(a(1, 1) == b(1, 1));
    CHECK(a(0, 1) == 0.0);
    CHECK(b(0, 1) == 0.0);
  }
}

TEST_CASE("determinant of cw covariances is independent of the pulse length") {
  const double c = 3e8, fc = 1e9, eta = 1.7;
  const double tri_det = 5.0 * std::pow(c, 4) / (24.0 * fc * fc * eta * eta);
  const double gau_det = std::pow(c, 4) / (4.0 * fc * fc * eta * eta);
  for (double lambda : {0.1, 1.0, 10.0}) {
    WaveformSpec t = unit_spec(WaveformFamily::TriangularCW, lambda);
    t.c = c;
    t.fc = fc;
    t.eta = eta;
    WaveformSpec g = t;
    g.family = WaveformFamily::GaussianCW;
    const SmallMatrix Rt = obs_noise_cov(t);
    const SmallMatrix Rg = obs_noise_cov(g);
    CHECK(Rt.determinant() == doctest::Approx(tri_det).epsilon(1e-12));
    CHECK(Rg.determinant() == doctest::Approx(gau_det).epsilon(1e-12));
  }
}

TEST_CASE("chirp covariance is positive definite on a parameter grid") {
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double lambda = 0.05 + 0.1 * i;
      const double b = -2.0 + 0.21 * j;
      const SmallMatrix R =
          obs_noise_cov(unit_spec(WaveformFamily::GaussianLFMChirp, lambda, b));
      CHECK(R(0, 1) == R(1, 0));
      CHECK(R(0, 0) > 0.0);
      CHECK(R.determinant() > 0.0);
    }
  }
}

TEST_CASE("range/doppler variance trade-off in the pulse length") {
  for (auto fam : {WaveformFamily::TriangularCW, WaveformFamily::GaussianCW}) {
    double prev_range = 0.0, prev_doppler = 1e300;
    for (double lambda : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const SmallMatrix R = obs_noise_cov(unit_spec(fam, lambda));
      CHECK(R(0, 0) > prev_range);
      CHECK(R(1, 1) < prev_doppler);
      prev_range = R(0, 0);
      prev_doppler = R(1, 1);
    }
  }
}

TEST_CASE("spectral shortcut returns the prescribed eigenvalues") {
  Eigen::Vector3d beta(0.5, 2.0, 7.0);
  const SmallMatrix R = cov_from_spectrum(beta);
  REQUIRE(R.rows() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(R(i, i) == beta(i));
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(R(i, j) == 0.0);
  }
}

TEST_CASE("invalid parameters are rejected") {
  WaveformSpec s = unit_spec(WaveformFamily::GaussianCW, 0.0);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.lambda = 1.0;
  s.eta = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.eta = 1.0;
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS(obs_noise_cov(unit_spec(WaveformFamily::TriangularCW, -1.0)));
}
