#include "specrp/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace specrp {

namespace {

// Tableau layout: columns [x (n) | slack (m) | artificial (k) | rhs],
// rows [constraints (m) | phase-1 objective].
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;  // basic column per row
  int rows, cols;          // constraint rows, total columns incl. rhs

  double& obj(int col) { return t(rows, col); }
};

}  // namespace

std::optional<Eigen::VectorXd> phase1_feasible_point(const Eigen::MatrixXd& A,
                                                     const Eigen::VectorXd& b,
                                                     double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m) throw std::invalid_argument("phase1: size mismatch");
  if (m == 0) return Eigen::VectorXd::Zero(n);

  int num_art = 0;
  for (int i = 0; i < m; ++i)
    if (b(i) < 0) ++num_art;

  Tableau tb;
  tb.rows = m;
  tb.cols = n + m + num_art + 1;
  tb.t = Eigen::MatrixXd::Zero(m + 1, tb.cols);
  tb.basis.assign(m, -1);

  int art = 0;
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    tb.t.block(i, 0, 1, n) = sign * A.row(i);
    tb.t(i, n + i) = sign;  // slack
    tb.t(i, tb.cols - 1) = sign * b(i);
    if (b(i) < 0) {
      tb.t(i, n + m + art) = 1.0;
      tb.basis[i] = n + m + art;
      ++art;
    } else {
      tb.basis[i] = n + i;
    }
  }

  // Phase-1 objective: minimize sum of artificials. Cost 1 on each
  // artificial column, then price out the artificial-basic rows.
  for (int j = 0; j < num_art; ++j) tb.t(m, n + m + j) = 1.0;
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] >= n + m) tb.t.row(m) -= tb.t.row(i);

  const int max_pivots = 2000 * (m + n + 4);
  int degenerate_streak = 0;
  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    if (tb.t(m, tb.cols - 1) > -tol) break;  // objective value is -(sum art)

    // Entering column: most negative reduced cost (Dantzig); switch to
    // Bland's smallest-index rule after a long degenerate streak.
    const bool bland = degenerate_streak > m + n;
    int enter = -1;
    double best = -1e-12;
    for (int j = 0; j < tb.cols - 1; ++j) {
      const double rc = tb.t(m, j);
      if (rc >= (bland ? -1e-12 : best)) continue;
      // The phase-1 objective is bounded below, so a negative-cost column
      // with no positive entry is numerical noise, not unboundedness.
      bool usable = false;
      for (int i = 0; i < m && !usable; ++i) usable = tb.t(i, j) > 1e-11;
      if (!usable) continue;
      enter = j;
      best = rc;
      if (bland) break;
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double aij = tb.t(i, enter);
      if (aij > 1e-11) {
        const double ratio = tb.t(i, tb.cols - 1) / aij;
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && tb.basis[i] < tb.basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) break;  // cannot happen for usable columns; be safe

    degenerate_streak = best_ratio < 1e-12 ? degenerate_streak + 1 : 0;

    tb.t.row(leave) /= tb.t(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = tb.t(i, enter);
      if (f != 0.0) tb.t.row(i) -= f * tb.t.row(leave);
    }
    tb.basis[leave] = enter;
  }

  if (tb.t(m, tb.cols - 1) < -tol) return std::nullopt;  // infeasible

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) x(tb.basis[i]) = tb.t(i, tb.cols - 1);
  return x;
}

}  // namespace specrp
