#pragma once

#include <Eigen/Core>
#include <vector>

#include "specrp/dataset.hpp"
#include "specrp/random.hpp"

namespace specrp {

// Zero-mean Gaussian noise, iid across epochs and coordinates.
struct NoiseModel {
  double sigma = 0.0;  // >= 0

  void validate() const;
};

// Empirical distribution of the calibration statistic M: evaluation uses the
// <= convention, so it is a right-continuous step function on [0, 1].
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;  // fraction of samples <= x
  const std::vector<double>& sorted_samples() const { return samples_; }

 private:
  std::vector<double> samples_;
};

struct DetectorOutcome {
  double phi_star = 0.0;
  double statistic = 0.0;  // 1 - F_M(phi_star)
  bool accept_h0 = false;  // H0: constrained utility maximizer
  double gamma = 0.0;
};

// Smallest uniform relaxation Phi >= 0 making the perturbed Afriat system
// feasible, by bisection against the cyclical-consistency oracle on the
// cross-costs a[t][s] + Phi. Feasibility is monotone in Phi and the bracket
// max(0, max_{t!=s} -a[t][s]) is always feasible.
double min_perturbation(const Eigen::MatrixXd& cross_costs,
                        double tol = 1e-9);

// Noisy responses (entries may be negative), clean probes.
double min_perturbation_response(const std::vector<Eigen::VectorXd>& probes,
                                 const std::vector<Eigen::VectorXd>& noisy_responses);

// Noisy probes (must stay positive), clean responses.
double min_perturbation_probe(const std::vector<Eigen::VectorXd>& noisy_probes,
                              const std::vector<Eigen::VectorXd>& responses);

// L draws of M = max_{t!=s} alpha_t'(eps_t - eps_s).
EmpiricalCdf sample_m_response(const std::vector<Eigen::VectorXd>& probes,
                               const NoiseModel& noise, int num_samples,
                               Rng& rng);

// L draws of M = max_{t!=s} eps_t'(beta_t - beta_s).
EmpiricalCdf sample_m_probe(const std::vector<Eigen::VectorXd>& responses,
                            const NoiseModel& noise, int num_samples,
                            Rng& rng);

// H0 accepted iff 1 - F_M(phi_star) > gamma; ties rejected toward H1.
DetectorOutcome decide(double phi_star, const EmpiricalCdf& cdf, double gamma);

// Analytical lower bound on the tail mass above phi_star under iid standard
// normal response noise:
// 1 - prod_t { 1 - sqrt(2/pi) sqrt(2|a_t|^2) exp(-phi^2 / 4|a_t|^2)
//              / (phi + sqrt(phi^2 + 8|a_t|^2)) }.
double type_i_lower_bound(double phi_star,
                          const std::vector<Eigen::VectorXd>& probes);

}  // namespace specrp
