#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "specrp/dataset.hpp"
#include "specrp/random.hpp"
#include "specrp/revealed_prefs.hpp"
#include "specrp/tracker.hpp"

namespace specrp {

// Utility maximized by the synthetic cognitive radar. Determinant and Trace
// act on the response spectrum directly: det -> prod(beta), trace ->
// sum(beta). CobbDouglas is prod beta_i^{zeta_i}.
struct UtilitySpec {
  enum class Kind { Determinant, Trace, CobbDouglas };
  Kind kind = Kind::Determinant;
  Eigen::VectorXd exponents;  // CobbDouglas only, all > 0

  void validate(int dim) const;
};

double utility_value(const UtilitySpec& u, const Eigen::VectorXd& beta);

// argmax of u over {beta >= 0 : alpha' beta <= pbar}, by closed form:
// Cobb-Douglas spends the budget share zeta_i / sum(zeta) on coordinate i,
// Determinant is the equal-exponent special case, Trace is the corner on
// the cheapest coordinate.
Eigen::VectorXd maximize_linear_budget(const UtilitySpec& u,
                                       const Eigen::VectorXd& alpha,
                                       double pbar);

// Derivative-free maximizer over the same budget set (pairwise golden
// section on the spending-share simplex); cross-checks the closed forms.
Eigen::VectorXd maximize_linear_budget_numeric(const UtilitySpec& u,
                                               const Eigen::VectorXd& alpha,
                                               double pbar,
                                               int sweeps = 200);

// Nonlinear spectral budget: the probe is the spectrum of Q^{-1}, the
// response the spectrum of R, and the budget caps the top eigenvalue of the
// Riccati fixed point.
struct SpectralBudgetParams {
  SmallMatrix A;
  SmallMatrix C;
  double lambda_bar = 0.0;
  Eigen::VectorXd beta_bar;  // elementwise upper bound, > 0
};

TrackerParams tracker_params_for(const SpectralBudgetParams& p,
                                 const Eigen::VectorXd& alpha,
                                 const Eigen::VectorXd& beta);

// lambda_max of the Riccati fixed point at (alpha, beta).
double riccati_lambda_max(const SpectralBudgetParams& p,
                          const Eigen::VectorXd& alpha,
                          const Eigen::VectorXd& beta);

// Largest admissible cap: lambda_max of the fixed point at beta_bar.
double lambda_cap(const SpectralBudgetParams& p, const Eigen::VectorXd& alpha);

// argmax of u over {0 < beta <= beta_bar : riccati_lambda_max <= lambda_bar}.
// Search runs along the active constraint surface (bisection in one
// coordinate nested in golden section over the others). Throws when the
// feasible set is empty.
Eigen::VectorXd maximize_nonlinear_budget(const UtilitySpec& u,
                                          const Eigen::VectorXd& alpha,
                                          const SpectralBudgetParams& p);

// Budgets g_t(beta) = riccati_lambda_max(alpha_t, beta) - lambda_bar for the
// nonlinear revealed-preference test.
NonlinearBudgetSpec spectral_budgets(const ProbeResponseDataset& data,
                                     const SpectralBudgetParams& p);

// Multi-target beam allocation: same linear-budget program, probe =
// per-target predicted precision traces.
struct BeamConfig {
  int num_targets = 0;   // m >= 2
  double pbar = 1.0;     // average-precision budget
  std::vector<TrackerParams> targets;
};

Eigen::VectorXd beam_allocate(const UtilitySpec& u,
                              const Eigen::VectorXd& alpha,
                              const BeamConfig& cfg);

// alpha(i) = trace(inverse predicted covariance of target i).
Eigen::VectorXd predicted_precision_probe(
    const std::vector<SmallMatrix>& predicted_covariances);

enum class RandomResponderKind { UniformSimplex, RandomCobbDouglas };

// UniformSimplex: iid U(0,1) coordinates, rejected until they sum to <= 1.
// RandomCobbDouglas: fresh U(0,1) exponents normalized to sum 1, then the
// Cobb-Douglas budget allocation against alpha (pbar = 1).
Eigen::VectorXd random_response(RandomResponderKind kind, int m, Rng& rng,
                                const Eigen::VectorXd* alpha = nullptr);

// Scenario-driven reproducible dataset generation.
struct ScenarioConfig {
  enum class Kind { LinearWaveform, NonlinearWaveform, Beam };
  enum class Responder { Cognitive, UniformSimplex, RandomCobbDouglas };

  Kind kind = Kind::LinearWaveform;
  Responder responder = Responder::Cognitive;
  int num_epochs = 0;  // 0 -> scenario default
  int dim = 0;
  UtilitySpec utility;
  double pbar = 1.0;
  double probe_lo = 0.0, probe_hi = 0.0;  // 0,0 -> scenario default
  SpectralBudgetParams spectral;          // nonlinear-waveform only

  static ScenarioConfig linear_waveform_defaults();
  static ScenarioConfig nonlinear_waveform_defaults();
  static ScenarioConfig beam_defaults();

  void validate() const;
};

// Same seed, same config -> bit-identical dataset. For the nonlinear
// scenario, probe draws that make the budget empty or inactive are
// redrawn from the same stream.
ProbeResponseDataset generate_dataset(const ScenarioConfig& cfg,
                                      std::uint64_t seed);

}  // namespace specrp
