#include "specrp/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "specrp/revealed_prefs.hpp"

namespace specrp {

void NoiseModel::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("NoiseModel: sigma must be finite and >= 0");
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty())
    throw std::invalid_argument("EmpiricalCdf: no samples");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double min_perturbation(const Eigen::MatrixXd& cross_costs, double tol) {
  const int n = static_cast<int>(cross_costs.rows());
  if (cross_costs.cols() != n || n == 0)
    throw std::invalid_argument("min_perturbation: bad cross-cost matrix");
  if (tol <= 0.0) throw std::invalid_argument("min_perturbation: tol <= 0");

  const auto feasible = [&](double phi) {
    Eigen::MatrixXd shifted = cross_costs.array() + phi;
    shifted.diagonal().setZero();
    return cyclically_consistent(shifted);
  };

  if (feasible(0.0)) return 0.0;

  double hi = 0.0;
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s)
      if (t != s) hi = std::max(hi, -cross_costs(t, s));
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

Eigen::MatrixXd cross_costs_of(const std::vector<Eigen::VectorXd>& probes,
                               const std::vector<Eigen::VectorXd>& responses) {
  const int n = static_cast<int>(probes.size());
  if (responses.size() != probes.size() || n == 0)
    throw std::invalid_argument("detector: probe/response count mismatch");
  Eigen::MatrixXd a(n, n);
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s)
      a(t, s) = t == s ? 0.0 : probes[t].dot(responses[s] - responses[t]);
  return a;
}

}  // namespace

double min_perturbation_response(
    const std::vector<Eigen::VectorXd>& probes,
    const std::vector<Eigen::VectorXd>& noisy_responses) {
  return min_perturbation(cross_costs_of(probes, noisy_responses));
}

double min_perturbation_probe(const std::vector<Eigen::VectorXd>& noisy_probes,
                              const std::vector<Eigen::VectorXd>& responses) {
  return min_perturbation(cross_costs_of(noisy_probes, responses));
}

namespace {

// M draws shared by both cases: weights[t] dot (eps_t - eps_s) maximized over
// t != s, with eps iid N(0, sigma^2 I) per epoch.
EmpiricalCdf sample_m(const std::vector<Eigen::VectorXd>& weights,
                      const NoiseModel& noise, int num_samples, Rng& rng,
                      bool diff_in_weights,
                      const std::vector<Eigen::VectorXd>& points) {
  noise.validate();
  const int n = static_cast<int>(weights.size());
  if (n < 2) throw std::invalid_argument("sample_m: need at least two epochs");
  if (num_samples < 1)
    throw std::invalid_argument("sample_m: need at least one sample");
  const int m = static_cast<int>(weights[0].size());

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(num_samples));
  std::vector<Eigen::VectorXd> eps(n);
  for (int l = 0; l < num_samples; ++l) {
    for (int t = 0; t < n; ++t) {
      eps[t] = Eigen::VectorXd(m);
      for (int i = 0; i < m; ++i) eps[t](i) = noise.sigma * gauss(rng);
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < n; ++t)
      for (int s = 0; s < n; ++s) {
        if (t == s) continue;
        const double v = diff_in_weights
                             ? eps[t].dot(points[t] - points[s])
                             : weights[t].dot(eps[t] - eps[s]);
        best = std::max(best, v);
      }
    samples.push_back(best);
  }
  return EmpiricalCdf(std::move(samples));
}

}  // namespace

EmpiricalCdf sample_m_response(const std::vector<Eigen::VectorXd>& probes,
                               const NoiseModel& noise, int num_samples,
                               Rng& rng) {
  return sample_m(probes, noise, num_samples, rng, false, probes);
}

EmpiricalCdf sample_m_probe(const std::vector<Eigen::VectorXd>& responses,
                            const NoiseModel& noise, int num_samples,
                            Rng& rng) {
  return sample_m(responses, noise, num_samples, rng, true, responses);
}

DetectorOutcome decide(double phi_star, const EmpiricalCdf& cdf, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("decide: gamma must be in (0, 1)");
  DetectorOutcome out;
  out.phi_star = phi_star;
  out.gamma = gamma;
  out.statistic = 1.0 - cdf(phi_star);
  out.accept_h0 = out.statistic > gamma;
  return out;
}

double type_i_lower_bound(double phi_star,
                          const std::vector<Eigen::VectorXd>& probes) {
  if (phi_star < 0.0)
    throw std::invalid_argument("type_i_lower_bound: phi_star < 0");
  if (probes.empty())
    throw std::invalid_argument("type_i_lower_bound: no probes");
  const double c = std::sqrt(2.0 / M_PI);
  double log_miss = 0.0;  // log prod_t (1 - tail_t)
  for (const auto& alpha : probes) {
    const double a2 = 2.0 * alpha.squaredNorm();
    if (!(a2 > 0.0))
      throw std::invalid_argument("type_i_lower_bound: zero probe");
    const double tail = c * std::sqrt(a2) *
                        std::exp(-phi_star * phi_star / (2.0 * a2)) /
                        (phi_star + std::sqrt(phi_star * phi_star + 4.0 * a2));
    log_miss += std::log1p(-std::min(tail, 1.0 - 1e-16));
  }
  return -std::expm1(log_miss);
}

}  // namespace specrp
