#include "mfgm/models.hpp"

#include "mfgm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mfgm {

namespace {

void check_probability(const Eigen::MatrixXd& m, const char* what) {
  if ((m.array() < 0.0).any() || (m.array() > 1.0).any() || !m.allFinite())
    throw std::invalid_argument(std::string(what) + " entries must lie in [0,1]");
}

Eigen::MatrixXd hollow_constant(int n, double c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, c);
  m.diagonal().setZero();
  return m;
}

}  // namespace

std::pair<Graph, Graph> sample_corr_er(const CorrErParams& params,
                                       std::mt19937_64& rng) {
  const int n = params.n, n_c = params.n_c;
  if (n_c > n || n_c < 0) throw std::invalid_argument("need 0 <= n_c <= n");
  if (params.lambda.rows() != n || params.lambda.cols() != n)
    throw std::invalid_argument("probability matrix must be n x n");
  if (params.r.rows() != n_c || params.r.cols() != n_c)
    throw std::invalid_argument("correlation matrix must be n_c x n_c");
  check_probability(params.lambda, "probability");
  check_probability(params.r, "correlation");

  Graph a(n_c), b(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double l = params.lambda(u, v);
      if (v < n_c) {
        const double r = params.r(u, v);
        const bool z0 = canonical_uniform(rng) < l;
        const bool z1 = canonical_uniform(rng) < l * (1.0 - r);
        const bool z2 = canonical_uniform(rng) < l + r * (1.0 - l);
        if (z0) b.add_edge(u, v);
        if (z0 ? z2 : z1) a.add_edge(u, v);
      } else {
        if (canonical_uniform(rng) < l) b.add_edge(u, v);
      }
    }
  }
  return {std::move(a), std::move(b)};
}

CorrErParams homogeneous_params(int n, int n_c, double lambda, double rho) {
  CorrErParams p;
  p.n = n;
  p.n_c = n_c;
  p.lambda = hollow_constant(n, lambda);
  p.r = hollow_constant(n_c, rho);
  check_probability(p.lambda, "probability");
  check_probability(p.r, "correlation");
  return p;
}

CorrErParams planted_partition_params(int n, int n_c, double p, double q,
                                      double rho) {
  CorrErParams out;
  out.n = n;
  out.n_c = n_c;
  out.lambda = hollow_constant(n, p);
  out.lambda.topLeftCorner(n_c, n_c) = hollow_constant(n_c, q);
  out.r = hollow_constant(n_c, rho);
  check_probability(out.lambda, "probability");
  check_probability(out.r, "correlation");
  return out;
}

CorrErParams adversarial_naive_lambda(int n, int n_c, double beta, double rho,
                                      double eps) {
  if (n < 2 * n_c) throw std::invalid_argument("need n >= 2 n_c for a decoy block");
  const double decoy = beta + (1.0 - beta) * rho + eps;
  if (beta < 0.0 || beta > 1.0 || rho < 0.0 || rho > 1.0 || eps < 0.0 ||
      decoy >= 1.0)
    throw std::invalid_argument("infeasible (beta, rho, eps)");
  CorrErParams out;
  out.n = n;
  out.n_c = n_c;
  out.lambda = hollow_constant(n, beta);
  out.lambda.block(n_c, n_c, n_c, n_c) = hollow_constant(n_c, decoy);
  out.r = hollow_constant(n_c, rho);
  return out;
}

RdpgSample sample_rdpg_pair(const RdpgParams& params, std::mt19937_64& rng) {
  const int n = params.n, n_c = params.n_c;
  if (n_c < 1 || n_c > n) throw std::invalid_argument("need 1 <= n_c <= n");
  if (params.rho < 0.0 || params.rho > 1.0)
    throw std::invalid_argument("correlation must lie in [0,1]");

  // Uniform on the open triangle x,y > 0, x+y < 1 by folding the unit square.
  Eigen::MatrixXd pos(n, 2);
  for (int v = 0; v < n; ++v) {
    double x = canonical_uniform(rng);
    double y = canonical_uniform(rng);
    if (x + y >= 1.0) {
      x = 1.0 - x;
      y = 1.0 - y;
    }
    pos(v, 0) = x;
    pos(v, 1) = y;
  }

  std::vector<int> core;
  if (params.core == CoreSelection::Random) {
    const std::vector<int> perm = random_permutation(n, rng);
    core.assign(perm.begin(), perm.begin() + n_c);
  } else {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int u, int v) {
      return pos(u, 1) / pos(u, 0) > pos(v, 1) / pos(v, 0);
    });
    core.assign(idx.begin(), idx.begin() + n_c);
  }

  const std::vector<int> relabel = front_relabeling(core, n);
  Eigen::MatrixXd latent(n, 2);
  for (int v = 0; v < n; ++v) latent.row(relabel[v]) = pos.row(v);

  CorrErParams cp;
  cp.n = n;
  cp.n_c = n_c;
  cp.lambda = latent * latent.transpose();
  cp.lambda.diagonal().setZero();
  cp.r = hollow_constant(n_c, params.rho);

  RdpgSample out;
  auto [a, b] = sample_corr_er(cp, rng);
  out.a = std::move(a);
  out.b = std::move(b);
  out.truth = identity_injection(n_c, n);
  out.latent = std::move(latent);
  return out;
}

}  // namespace mfgm
