#include "specrp/waveforms.hpp"

#include <stdexcept>

namespace specrp {

void WaveformSpec::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("waveform: lambda must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("waveform: c must be > 0");
  if (!(fc > 0.0)) throw std::invalid_argument("waveform: fc must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("waveform: eta must be > 0");
}

SmallMatrix obs_noise_cov(const WaveformSpec& spec) {
  spec.validate();
  const double c2 = spec.c * spec.c;
  const double l2 = spec.lambda * spec.lambda;
  const double fc2 = spec.fc * spec.fc;
  SmallMatrix R(2, 2);
  switch (spec.family) {
    case WaveformFamily::TriangularCW:
      R << c2 * l2 / (12.0 * spec.eta), 0.0,
           0.0, 5.0 * c2 / (2.0 * fc2 * l2 * spec.eta);
      break;
    case WaveformFamily::GaussianCW:
      R << c2 * l2 / (2.0 * spec.eta), 0.0,
           0.0, c2 / (2.0 * fc2 * l2 * spec.eta);
      break;
    case WaveformFamily::GaussianLFMChirp: {
      const double off = -c2 * spec.b * l2 / (spec.fc * spec.eta);
      // split so b = 0 reproduces the CW entry bit-for-bit
      R << c2 * l2 / (2.0 * spec.eta), off,
           off, c2 / (2.0 * fc2 * l2 * spec.eta) +
                    2.0 * c2 * spec.b * spec.b * l2 / (fc2 * spec.eta);
      break;
    }
  }
  return R;
}

SmallMatrix cov_from_spectrum(const Eigen::VectorXd& beta) {
  const int m = static_cast<int>(beta.size());
  SmallMatrix R = SmallMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    if (!(beta(i) > 0.0))
      throw std::invalid_argument("cov_from_spectrum: eigenvalues must be > 0");
    R(i, i) = beta(i);
  }
  return R;
}

}  // namespace specrp
