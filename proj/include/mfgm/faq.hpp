#pragma once

#include "mfgm/assign.hpp"
#include "mfgm/padding.hpp"

#include <string>
#include <vector>

namespace mfgm {

struct FaqConfig {
  int max_iters = 100;
  double tol = 1e-6;  // relative improvement of the relaxed objective
  bool stop_on_repeat = true;
};

struct FaqTrace {
  std::vector<double> relaxed;  // -trace objective after each update, non-increasing
  std::vector<double> alphas;
  int iterations = 0;  // update steps that actually moved the plan
  std::string terminated_by;
  std::string to_json() const;
};

struct FaqResult {
  Injection sigma;
  double objective = 0.0;  // block residual of the projected injection
  FaqTrace trace;
  TransportPlan plan;  // pre-projection plan, reusable as a warm start
};

/// Residual objective used for ranking: sum over the template block of
/// (Atil - P Btil P^T)^2 entries, P any permutation extending sigma.
double objective(const PaddedPair& pair, const Injection& sigma);

/// trace-form score sum_{i,j<=n_c} Acore_ij Btil_{sigma(i)sigma(j)}.
double trace_objective(const PaddedPair& pair, const Injection& sigma);

/// -trace(Atil^T D Btil D^T) evaluated from the free rows of D.
double relaxed_objective(const PaddedPair& pair, const Eigen::MatrixXd& rows);

/// Derivative of trace(Atil^T D Btil D^T) w.r.t. the free rows:
/// Acore X Btil^T + Acore^T X Btil.
Eigen::MatrixXd gradient_rows(const PaddedPair& pair, const Eigen::MatrixXd& rows);

/// Step size minimizing the relaxed objective along alpha*D + (1-alpha)*P.
double line_search(const PaddedPair& pair, const TransportPlan& plan,
                   const Injection& step);

FaqResult run_faq(const PaddedPair& pair, const TransportPlan& d0,
                  const FaqConfig& cfg = {});

}  // namespace mfgm
