#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "specrp/dataset.hpp"

namespace specrp {

// Absolute tolerance on cross-cost comparisons. Cost values are O(1) in all
// experiment configurations.
inline constexpr double kGarpTol = 1e-9;

// Activity tolerance for nonlinear budgets: the observed response must sit on
// its budget surface, but it comes out of a numeric maximizer.
inline constexpr double kBudgetActivityTol = 1e-6;

// a[t][s] = alpha_t' (beta_s - beta_t); diagonal exactly zero.
struct CrossCostMatrix {
  Eigen::MatrixXd a;
};

// Epoch indices (1-based) of a revealed-preference cycle witnessing a strict
// violation, when one exists.
struct GarpVerdict {
  bool consistent = true;
  std::optional<std::vector<int>> violating_cycle;
};

// Scalars certifying rationality: u_s - u_t - lambda_t a[t][s] <= 0 with
// lambda_t > 0. Parameterizes the reconstructed utility.
struct AfriatSolution {
  Eigen::VectorXd u;
  Eigen::VectorXd lambda;
};

// N budget functions g_t: R^m_+ -> R, increasing and continuous, with
// g_t(beta_t) = 0 at the observed response.
struct NonlinearBudgetSpec {
  std::vector<std::function<double(const Eigen::VectorXd&)>> budgets;
};

CrossCostMatrix cross_cost_matrix(const ProbeResponseDataset& data);

// Cross-costs g_t(beta_s). Throws if some budget is not active at beta_t.
CrossCostMatrix nonlinear_cross_cost_matrix(const ProbeResponseDataset& data,
                                            const NonlinearBudgetSpec& budgets);

// Cyclical consistency of a cross-cost matrix: no cycle whose costs are all
// <= tol with at least one < -tol. Warshall-style transitive closure.
bool cyclically_consistent(const Eigen::MatrixXd& a, double tol = kGarpTol);

GarpVerdict verdict_from_cross_costs(const Eigen::MatrixXd& a,
                                     double tol = kGarpTol);

GarpVerdict check_garp(const ProbeResponseDataset& data);
GarpVerdict check_nonlinear_garp(const ProbeResponseDataset& data,
                                 const NonlinearBudgetSpec& budgets);

// Certificate construction from a cyclically consistent cross-cost matrix:
// multipliers lambda from the topological ordering of the revealed-preference
// classes, utility levels u as Bellman-Ford potentials on the lambda-scaled
// cross-cost graph. Falls back to the phase-1 simplex on the Afriat system
// when the potentials fail verification at kGarpTol.
std::optional<AfriatSolution> solve_afriat_from_cross_costs(
    const Eigen::MatrixXd& a);

std::optional<AfriatSolution> solve_afriat(const ProbeResponseDataset& data);
std::optional<AfriatSolution> solve_nonlinear_afriat(
    const ProbeResponseDataset& data, const NonlinearBudgetSpec& budgets);

// Independent feasibility route for Theorem-1 cross-checks: phase-1 simplex
// on the Afriat inequalities themselves.
bool afriat_lp_feasible(const Eigen::MatrixXd& a, double tol = kGarpTol);

// Largest violation of u_s - u_t - lambda_t a[t][s] <= 0 over all t, s.
double afriat_residual(const AfriatSolution& sol, const Eigen::MatrixXd& a);

// min_t { u_t + lambda_t alpha_t' (beta - beta_t) }: concave and monotone.
double reconstruct_utility(const AfriatSolution& sol,
                           const ProbeResponseDataset& data,
                           const Eigen::VectorXd& beta);

// min_t { u_t + lambda_t g_t(beta) } for the nonlinear-budget test.
double reconstruct_utility_nonlinear(const AfriatSolution& sol,
                                     const NonlinearBudgetSpec& budgets,
                                     const Eigen::VectorXd& beta);

// Linear budgets g_t(beta) = alpha_t' (beta - beta_t) as a NonlinearBudgetSpec,
// under which the nonlinear test reduces to the linear one.
NonlinearBudgetSpec linear_budgets(const ProbeResponseDataset& data);

}  // namespace specrp
