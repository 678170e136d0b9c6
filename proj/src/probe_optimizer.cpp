#include "specrp/probe_optimizer.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "specrp/revealed_prefs.hpp"

namespace specrp {

Eigen::MatrixXd project_probe(const Eigen::MatrixXd& probe) {
  return probe.cwiseMax(kProbeFloor);
}

std::vector<Eigen::VectorXd> probe_columns(const Eigen::MatrixXd& probe) {
  std::vector<Eigen::VectorXd> cols;
  cols.reserve(static_cast<std::size_t>(probe.cols()));
  for (Eigen::Index n = 0; n < probe.cols(); ++n) cols.push_back(probe.col(n));
  return cols;
}

void SpsaConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("SpsaConfig: iterations < 1");
  if (trials < 1) throw std::invalid_argument("SpsaConfig: trials < 1");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("SpsaConfig: gamma must be in (0, 1)");
  if (!(omega > 0.0)) throw std::invalid_argument("SpsaConfig: omega <= 0");
  if (mu0 < 0.0) throw std::invalid_argument("SpsaConfig: mu0 < 0");
  if (cdf_samples < 1) throw std::invalid_argument("SpsaConfig: cdf_samples < 1");
  if (resample_cap < 1) throw std::invalid_argument("SpsaConfig: resample_cap < 1");
}

namespace {

bool violates_garp(const std::vector<Eigen::VectorXd>& probes,
                   const std::vector<Eigen::VectorXd>& responses) {
  const int n = static_cast<int>(probes.size());
  Eigen::MatrixXd a(n, n);
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s)
      a(t, s) = t == s ? 0.0 : probes[t].dot(responses[s] - responses[t]);
  return !cyclically_consistent(a);
}

}  // namespace

double estimate_type_ii(const Eigen::MatrixXd& probe, const Responder& responder,
                        const NoiseModel& noise, const EmpiricalCdf& cdf,
                        int trials, double gamma, Rng& rng, int resample_cap) {
  if (trials < 1) throw std::invalid_argument("estimate_type_ii: trials < 1");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("estimate_type_ii: gamma must be in (0, 1)");
  noise.validate();
  const auto probes = probe_columns(probe);
  const int m = static_cast<int>(probe.rows());

  std::normal_distribution<double> gauss(0.0, 1.0);
  int accepted = 0;
  for (int s = 0; s < trials; ++s) {
    std::vector<Eigen::VectorXd> responses;
    int attempts = 0;
    do {
      if (++attempts > resample_cap)
        throw std::runtime_error(
            "estimate_type_ii: responder keeps producing rationalizable data");
      responses = responder(probes, rng);
      if (responses.size() != probes.size())
        throw std::invalid_argument("estimate_type_ii: responder epoch mismatch");
    } while (!violates_garp(probes, responses));

    for (auto& beta : responses)
      for (int i = 0; i < m; ++i) beta(i) += noise.sigma * gauss(rng);
    const double phi_star = min_perturbation_response(probes, responses);
    if (cdf(phi_star) <= 1.0 - gamma) ++accepted;
  }
  return static_cast<double>(accepted) / static_cast<double>(trials);
}

namespace {

double evaluate_cost(const Eigen::MatrixXd& probe, const SpsaConfig& cfg,
                     const Responder& responder, const NoiseModel& noise,
                     std::uint64_t cdf_seed, std::uint64_t trial_seed) {
  Rng cdf_rng = make_rng(cdf_seed);
  const EmpiricalCdf cdf = sample_m_response(probe_columns(probe), noise,
                                             cfg.cdf_samples, cdf_rng);
  Rng trial_rng = make_rng(trial_seed);
  return estimate_type_ii(probe, responder, noise, cdf, cfg.trials, cfg.gamma,
                          trial_rng, cfg.resample_cap);
}

}  // namespace

SpsaResult spsa_optimize(const Eigen::MatrixXd& initial, const SpsaConfig& cfg,
                         const Responder& responder, const NoiseModel& noise) {
  cfg.validate();
  noise.validate();
  if (initial.size() == 0)
    throw std::invalid_argument("spsa_optimize: empty probe matrix");

  Eigen::MatrixXd probe = project_probe(initial);
  const Eigen::Index m = probe.rows(), n = probe.cols();

  SpsaResult result;
  result.trajectory.reserve(static_cast<std::size_t>(cfg.iterations));

  for (int k = 1; k <= cfg.iterations; ++k) {
    const std::uint64_t iter_seed = child_seed(cfg.seed, "spsa-iter", k);

    result.trajectory.push_back(
        {k, probe,
         evaluate_cost(probe, cfg, responder, noise,
                       child_seed(iter_seed, "log-cdf"),
                       child_seed(iter_seed, "log-trials"))});

    Rng delta_rng = make_rng(child_seed(iter_seed, "delta"));
    Eigen::MatrixXd delta(m, n);
    for (Eigen::Index j = 0; j < n; ++j)  // column-major flattening
      for (Eigen::Index i = 0; i < m; ++i)
        delta(i, j) = (delta_rng() & 1u) ? 1.0 : -1.0;

    const std::uint64_t cdf_plus = child_seed(iter_seed, "cdf+");
    const std::uint64_t trials_plus = child_seed(iter_seed, "trials+");
    const std::uint64_t cdf_minus =
        cfg.common_random_numbers ? cdf_plus : child_seed(iter_seed, "cdf-");
    const std::uint64_t trials_minus =
        cfg.common_random_numbers ? trials_plus
                                  : child_seed(iter_seed, "trials-");

    const double j_plus =
        evaluate_cost(project_probe(probe + cfg.omega * delta), cfg, responder,
                      noise, cdf_plus, trials_plus);
    const double j_minus =
        evaluate_cost(project_probe(probe - cfg.omega * delta), cfg, responder,
                      noise, cdf_minus, trials_minus);
    result.cost_evaluations += 2;

    // entrywise (J+ - J-) / (2 omega delta_ij) with delta_ij = +-1
    const double scale = (j_plus - j_minus) / (2.0 * cfg.omega);
    const double mu_k = cfg.mu0 / static_cast<double>(k);
    probe = project_probe(probe - mu_k * scale * delta);
  }
  return result;
}

}  // namespace specrp
