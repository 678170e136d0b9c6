#pragma once

#include <Eigen/Core>
#include <optional>

namespace specrp {

// Phase-1 feasibility for {x >= 0 : A x <= b} by dense tableau simplex:
// slacks make rows with b >= 0 basic, rows with b < 0 get an artificial,
// and the sum of artificials is minimized. Feasible iff that minimum is 0
// (within tol). Dantzig pricing with a Bland fallback against cycling.
//
// Returns a feasible x when one exists, std::nullopt otherwise.
// Throws std::runtime_error if the pivot loop fails to terminate.
std::optional<Eigen::VectorXd> phase1_feasible_point(
    const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol = 1e-9);

}  // namespace specrp
