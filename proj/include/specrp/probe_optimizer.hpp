#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "specrp/detector.hpp"
#include "specrp/random.hpp"

namespace specrp {

// Probe entries are clamped to this floor after every SPSA update and before
// every perturbed cost evaluation.
inline constexpr double kProbeFloor = 1e-6;

// Columns of the m x N probe matrix are the per-epoch probe vectors alpha_n.
Eigen::MatrixXd project_probe(const Eigen::MatrixXd& probe);
std::vector<Eigen::VectorXd> probe_columns(const Eigen::MatrixXd& probe);

// Clean responses of the interrogated system to a block of probes.
using Responder = std::function<std::vector<Eigen::VectorXd>(
    const std::vector<Eigen::VectorXd>& probes, Rng& rng)>;

struct SpsaConfig {
  int iterations = 200;       // K
  int trials = 100;           // S per cost evaluation
  double gamma = 0.05;        // detector significance
  double omega = 0.005;       // gradient step
  double mu0 = 0.005;         // step size mu_k = mu0 / k
  int cdf_samples = 1000;     // L draws for the refreshed M distribution
  int resample_cap = 1000;    // per-trial cap on non-violating redraws
  std::uint64_t seed = 0;
  // Reuse one noise stream across the two perturbed evaluations of an
  // iteration; lowers gradient-estimate variance. Off restores fully
  // independent evaluations.
  bool common_random_numbers = true;

  void validate() const;
};

// Fraction of S trials in which the detector accepts H0 against a
// non-maximizing responder: the empirical misclassification probability the
// probe is optimized to drive down. Trials whose clean probe/response pairs
// happen to be rationalizable are redrawn (capped), so every counted trial is
// a true negative.
double estimate_type_ii(const Eigen::MatrixXd& probe, const Responder& responder,
                        const NoiseModel& noise, const EmpiricalCdf& cdf,
                        int trials, double gamma, Rng& rng,
                        int resample_cap = 1000);

struct SpsaTrajectoryPoint {
  int iter = 0;
  Eigen::MatrixXd probe;
  double j_hat = 0.0;
};

struct SpsaResult {
  std::vector<SpsaTrajectoryPoint> trajectory;  // one point per iteration
  long cost_evaluations = 0;  // gradient evaluations only, 2 per iteration
};

// Two-sided simultaneous perturbation descent on the probe matrix: per
// iteration one +-1 perturbation direction, two cost evaluations, update
// P <- P - mu_k * gradient, projection to the positivity floor. The M
// distribution is re-sampled for every evaluated probe. Seed-deterministic.
SpsaResult spsa_optimize(const Eigen::MatrixXd& initial, const SpsaConfig& cfg,
                         const Responder& responder, const NoiseModel& noise);

}  // namespace specrp
