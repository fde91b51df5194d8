#include "mfgm/faq.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfgm {

namespace {

// <Acore, M P^T> without forming P: column sigma(j) of M lands in column j.
double dot_with_cols(const Eigen::MatrixXd& a_core, const Eigen::MatrixXd& m,
                     const Injection& sigma) {
  double s = 0.0;
  for (int j = 0; j < a_core.cols(); ++j)
    s += a_core.col(j).dot(m.col(sigma(j)));
  return s;
}

double dot_with_rows(const Eigen::MatrixXd& a_core, const Eigen::MatrixXd& m) {
  return (a_core.array() * m.array()).sum();
}

Eigen::MatrixXd indicator_rows(const Injection& sigma) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(sigma.domain(), sigma.n);
  for (int i = 0; i < sigma.domain(); ++i) p(i, sigma(i)) = 1.0;
  return p;
}

void check_rows(const PaddedPair& pair, const Eigen::MatrixXd& rows) {
  if (rows.rows() != pair.n_c || rows.cols() != pair.n)
    throw std::invalid_argument("plan size does not match padded pair");
}

}  // namespace

double objective(const PaddedPair& pair, const Injection& sigma) {
  if (sigma.domain() != pair.n_c || sigma.n != pair.n)
    throw std::invalid_argument("injection size does not match padded pair");
  double s = 0.0;
  for (int i = 0; i < pair.n_c; ++i)
    for (int j = 0; j < pair.n_c; ++j) {
      const double d = pair.a_core(i, j) - pair.b.entry(sigma(i), sigma(j));
      s += d * d;
    }
  return s;
}

double trace_objective(const PaddedPair& pair, const Injection& sigma) {
  if (sigma.domain() != pair.n_c || sigma.n != pair.n)
    throw std::invalid_argument("injection size does not match padded pair");
  double s = 0.0;
  for (int i = 0; i < pair.n_c; ++i)
    for (int j = 0; j < pair.n_c; ++j)
      s += pair.a_core(i, j) * pair.b.entry(sigma(i), sigma(j));
  return s;
}

double relaxed_objective(const PaddedPair& pair, const Eigen::MatrixXd& rows) {
  check_rows(pair, rows);
  const Eigen::MatrixXd xb = pair.b.mul_right(rows);
  return -dot_with_rows(pair.a_core, xb * rows.transpose());
}

Eigen::MatrixXd gradient_rows(const PaddedPair& pair, const Eigen::MatrixXd& rows) {
  check_rows(pair, rows);
  const Eigen::MatrixXd xbt = pair.b.mul_right(rows, /*transpose=*/true);
  const Eigen::MatrixXd xb = pair.b.mul_right(rows);
  return pair.a_core * xbt + pair.a_core.transpose() * xb;
}

double line_search(const PaddedPair& pair, const TransportPlan& plan,
                   const Injection& step) {
  check_rows(pair, plan.rows);
  const Eigen::MatrixXd& x = plan.rows;
  const Eigen::MatrixXd xb = pair.b.mul_right(x);
  const Eigen::MatrixXd pb = pair.b.mul_right(indicator_rows(step));
  const double q_dd = dot_with_rows(pair.a_core, xb * x.transpose());
  const double q_dp = dot_with_cols(pair.a_core, xb, step);
  const double q_pd = dot_with_rows(pair.a_core, pb * x.transpose());
  const double q_pp = dot_with_cols(pair.a_core, pb, step);
  // g(alpha) = -q(D_a, D_a), D_a = alpha D + (1-alpha) P, a quadratic.
  const double ga = -(q_dd - q_dp - q_pd + q_pp);
  const double gb = -(q_dp + q_pd - 2.0 * q_pp);
  const double scale = std::max({1.0, std::abs(q_dd), std::abs(q_pp)});
  if (std::abs(ga) <= 1e-12 * scale && std::abs(gb) <= 1e-12 * scale)
    return 0.0;  // flat along the segment
  if (ga > 0.0) return std::clamp(-gb / (2.0 * ga), 0.0, 1.0);
  return (ga + gb < 0.0) ? 1.0 : 0.0;  // concave/linear: better endpoint
}

std::string FaqTrace::to_json() const {
  nlohmann::json j;
  j["relaxed"] = relaxed;
  j["alphas"] = alphas;
  j["iterations"] = iterations;
  j["terminated_by"] = terminated_by;
  return j.dump();
}

FaqResult run_faq(const PaddedPair& pair, const TransportPlan& d0,
                  const FaqConfig& cfg) {
  if (cfg.max_iters < 1 || cfg.tol <= 0.0)
    throw std::invalid_argument("bad solver config");
  check_rows(pair, d0.rows);
  d0.check_valid();

  FaqResult res;
  TransportPlan& plan = res.plan;
  plan = d0;
  if (plan.initial_weight == 0.0 && plan.steps.empty()) {
    plan.initial_weight = 1.0;
    plan.initial_rows = plan.rows;
  }

  double f = -relaxed_objective(pair, plan.rows);
  res.trace.relaxed.push_back(-f);
  Injection prev_p;
  for (int k = 0; k < cfg.max_iters; ++k) {
    const Eigen::MatrixXd grad = gradient_rows(pair, plan.rows);
    const Injection p = solve({grad, /*maximize=*/true}).sigma;
    if (cfg.stop_on_repeat && k > 0 && p == prev_p) {
      res.trace.terminated_by = "repeat";
      break;
    }
    prev_p = p;
    const Eigen::MatrixXd p_rows = indicator_rows(p);
    if ((plan.rows - p_rows).cwiseAbs().maxCoeff() == 0.0) {
      res.trace.terminated_by = "stationary";  // already at the step target
      break;
    }
    const double alpha = line_search(pair, plan, p);
    res.trace.alphas.push_back(alpha);
    if (alpha == 1.0) {
      res.trace.terminated_by = "stationary";
      break;
    }
    plan.rows = alpha * plan.rows + (1.0 - alpha) * p_rows;
    plan.initial_weight *= alpha;
    for (auto& [w, sigma] : plan.steps) w *= alpha;
    std::erase_if(plan.steps, [](const auto& s) { return s.first == 0.0; });
    plan.steps.emplace_back(1.0 - alpha, p);
    ++res.trace.iterations;

    const double f_new = -relaxed_objective(pair, plan.rows);
    if (-f_new > -f + 1e-9 * std::max(1.0, std::abs(f)))
      throw std::logic_error("relaxed objective increased during descent");
    res.trace.relaxed.push_back(-f_new);
    const bool converged = std::abs(f_new - f) <= cfg.tol * std::max(1.0, std::abs(f));
    f = f_new;
    if (converged) {
      res.trace.terminated_by = "tol";
      break;
    }
  }
  if (res.trace.terminated_by.empty()) res.trace.terminated_by = "max_iters";

  if (!plan.is_injection_indicator(&res.sigma))
    res.sigma = project_to_injection(plan);
  res.objective = objective(pair, res.sigma);
  return res;
}

}  // namespace mfgm
