#pragma once

#include <Eigen/Core>

#include "specrp/tracker.hpp"

namespace specrp {

enum class WaveformFamily { TriangularCW, GaussianCW, GaussianLFMChirp };

// Closed-form map from waveform parameters to the 2x2 range/Doppler
// observation-noise covariance. Units are SI.
struct WaveformSpec {
  WaveformFamily family = WaveformFamily::GaussianCW;
  double lambda = 1.0;  // pulse parameter (lambda_1 for the chirp), s
  double b = 0.0;       // chirp rate (chirp only), 1/s^2
  double c = 3e8;       // propagation speed, m/s
  double fc = 1e9;      // carrier frequency, Hz
  double eta = 1.0;     // signal-to-noise ratio

  void validate() const;  // throws on non-positive lambda, c, fc, eta
};

SmallMatrix obs_noise_cov(const WaveformSpec& spec);

// Spectral shortcut used by the simulators: observation-noise covariance with
// prescribed eigenvalues, bypassing the physical waveform parameters.
SmallMatrix cov_from_spectrum(const Eigen::VectorXd& beta);

}  // namespace specrp
