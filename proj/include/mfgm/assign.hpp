#pragma once

#include "mfgm/graph.hpp"

namespace mfgm {

struct AssignmentProblem {
  Eigen::MatrixXd rewards;  // n_c x n, n_c <= n
  bool maximize = true;
};

struct Assignment {
  Injection sigma;
  double value = 0.0;
};

/// Rectangular linear assignment via shortest augmenting paths, O(n_c^2 n).
/// Among optimal solutions the lexicographically smallest sigma is returned.
Assignment solve(const AssignmentProblem& problem);

/// Nearest injection to a transport plan in the linear-assignment sense:
/// solve with rewards = plan.rows, maximizing.
Injection project_to_injection(const TransportPlan& plan);

}  // namespace mfgm
