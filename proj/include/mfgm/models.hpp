#pragma once

#include "mfgm/graph.hpp"

#include <random>
#include <utility>

namespace mfgm {

/// Correlated Bernoulli graph pair: the template A shares marginals Lambda
/// with the core of B and each core edge pair (A_uv, B_uv) has correlation
/// R_uv. Both matrices hollow symmetric.
struct CorrErParams {
  Eigen::MatrixXd lambda;  // n x n edge probabilities
  Eigen::MatrixXd r;       // n_c x n_c correlations
  int n = 0;
  int n_c = 0;
};

/// Per core pair u<v, three independent coins decide both indicators:
/// z0 ~ Bern(L), z1 ~ Bern(L(1-R)), z2 ~ Bern(L + R(1-L));
/// B_uv = z0, A_uv = (1-z0) z1 + z0 z2. Remaining B pairs are plain Bern(L).
std::pair<Graph, Graph> sample_corr_er(const CorrErParams& params,
                                       std::mt19937_64& rng);

CorrErParams homogeneous_params(int n, int n_c, double lambda, double rho);

/// Core block density q, everything else p.
CorrErParams planted_partition_params(int n, int n_c, double p, double q,
                                      double rho);

/// Core at density beta plus a disjoint decoy block of n_c vertices whose
/// density beta + (1-beta)rho + eps makes zero-padding prefer the decoy.
CorrErParams adversarial_naive_lambda(int n, int n_c, double beta, double rho,
                                      double eps);

enum class CoreSelection { Random, MaxAngle };

struct RdpgParams {
  int n = 0;
  int n_c = 0;
  double rho = 1.0;
  CoreSelection core = CoreSelection::Random;
};

struct RdpgSample {
  Graph a;
  Graph b;
  Injection truth;         // identity: the core is relabeled to the front
  Eigen::MatrixXd latent;  // n x 2 positions after relabeling
};

/// Latent positions uniform on {(x,y) : x,y > 0, x + y < 1}; edge
/// probabilities are the dot products. MaxAngle keeps the n_c vertices with
/// the largest second/first coordinate ratio as the template.
RdpgSample sample_rdpg_pair(const RdpgParams& params, std::mt19937_64& rng);

}  // namespace mfgm
