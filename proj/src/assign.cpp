#include "mfgm/assign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mfgm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RawSolution {
  std::vector<int> assign;  // row -> column
  double value = 0.0;
  std::vector<double> u, v;  // dual potentials (rows / columns)
};

// Shortest-augmenting-path solver on the rectangular cost matrix, rows
// assigned one at a time, 1-indexed internally with a virtual column 0.
RawSolution solve_min(const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(cost.rows());
  const int n = static_cast<int>(cost.cols());
  std::vector<double> u(m + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= m; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  RawSolution sol;
  sol.assign.assign(m, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) sol.assign[p[j] - 1] = j - 1;
  for (int i = 0; i < m; ++i) sol.value += cost(i, sol.assign[i]);
  sol.u.assign(u.begin() + 1, u.end());
  sol.v.assign(v.begin() + 1, v.end());
  return sol;
}

// Optimal value over the given rows restricted to the free columns.
double solve_min_value(const Eigen::MatrixXd& cost, int first_row,
                       const std::vector<char>& col_taken) {
  const int m = static_cast<int>(cost.rows()) - first_row;
  if (m == 0) return 0.0;
  std::vector<int> cols;
  for (int j = 0; j < cost.cols(); ++j)
    if (!col_taken[j]) cols.push_back(j);
  Eigen::MatrixXd sub(m, static_cast<int>(cols.size()));
  for (int i = 0; i < m; ++i)
    for (std::size_t k = 0; k < cols.size(); ++k)
      sub(i, static_cast<int>(k)) = cost(first_row + i, cols[k]);
  return solve_min(sub).value;
}

RawSolution resolve_suffix(const Eigen::MatrixXd& cost, int first_row,
                           const std::vector<char>& col_taken,
                           std::vector<int>* cols_out) {
  const int m = static_cast<int>(cost.rows()) - first_row;
  std::vector<int> cols;
  for (int j = 0; j < cost.cols(); ++j)
    if (!col_taken[j]) cols.push_back(j);
  Eigen::MatrixXd sub(m, static_cast<int>(cols.size()));
  for (int i = 0; i < m; ++i)
    for (std::size_t k = 0; k < cols.size(); ++k)
      sub(i, static_cast<int>(k)) = cost(first_row + i, cols[k]);
  *cols_out = std::move(cols);
  return solve_min(sub);
}

// Greedy pass making the solution lexicographically smallest among optima:
// per row, try smaller columns whose reduced cost is (near) tight and keep
// one only if re-solving the remaining rows preserves the optimal value.
void lexicographic_pass(const Eigen::MatrixXd& cost, RawSolution* sol,
                        double tol) {
  const int m = static_cast<int>(cost.rows());
  const int n = static_cast<int>(cost.cols());
  // Small instances check every smaller column; larger ones trust the duals
  // to screen candidates (re-solve verification keeps this exact either way).
  const bool exhaustive = static_cast<long>(m) * n <= 2000;
  std::vector<char> taken(n, 0);
  double prefix = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < sol->assign[i]; ++j) {
      if (taken[j]) continue;
      if (!exhaustive) {
        const double reduced = cost(i, j) - sol->u[i] - sol->v[j];
        if (reduced > tol) continue;
      }
      std::vector<char> taken2 = taken;
      taken2[j] = 1;
      const double rest = solve_min_value(cost, i + 1, taken2);
      if (prefix + cost(i, j) + rest <= sol->value + tol) {
        std::vector<int> cols;
        RawSolution suffix = resolve_suffix(cost, i + 1, taken2, &cols);
        sol->assign[i] = j;
        for (int k = i + 1; k < m; ++k)
          sol->assign[k] = cols[suffix.assign[k - i - 1]];
        break;
      }
    }
    taken[sol->assign[i]] = 1;
    prefix += cost(i, sol->assign[i]);
  }
}

}  // namespace

Assignment solve(const AssignmentProblem& problem) {
  const auto& r = problem.rewards;
  if (r.rows() < 1 || r.rows() > r.cols())
    throw std::invalid_argument("rewards must be n_c x n with n_c <= n");
  if (!r.allFinite())
    throw std::invalid_argument("rewards must be finite");
  // Minimize internally; per-row shift keeps costs nonnegative and changes
  // every injection's total by the same constant.
  Eigen::MatrixXd cost(r.rows(), r.cols());
  if (problem.maximize) {
    for (int i = 0; i < r.rows(); ++i)
      cost.row(i) = Eigen::RowVectorXd::Constant(r.cols(), r.row(i).maxCoeff()) - r.row(i);
  } else {
    for (int i = 0; i < r.rows(); ++i)
      cost.row(i) = r.row(i) - Eigen::RowVectorXd::Constant(r.cols(), r.row(i).minCoeff());
  }
  RawSolution sol = solve_min(cost);
  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  lexicographic_pass(cost, &sol, 1e-9 * scale * r.rows());

  Assignment out;
  out.sigma.n = static_cast<int>(r.cols());
  out.sigma.map = sol.assign;
  out.sigma.check();
  for (int i = 0; i < r.rows(); ++i) out.value += r(i, sol.assign[i]);
  return out;
}

Injection project_to_injection(const TransportPlan& plan) {
  plan.check_valid();
  return solve({plan.rows, /*maximize=*/true}).sigma;
}

}  // namespace mfgm
