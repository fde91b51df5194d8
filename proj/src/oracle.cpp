#include "mfgm/oracle.hpp"

#include "mfgm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfgm {

namespace {

struct Enumerator {
  const Eigen::MatrixXd& a_core;
  const Eigen::MatrixXd& b;
  ObjectiveKind kind;
  int n_c;
  int n;

  std::vector<int> sigma;
  std::vector<char> used;
  BruteForceResult result;

  double evaluate() const {
    double s = 0.0;
    for (int i = 0; i < n_c; ++i)
      for (int j = 0; j < n_c; ++j) {
        const double bij = b(sigma[i], sigma[j]);
        if (kind == ObjectiveKind::BlockResidual) {
          const double d = a_core(i, j) - bij;
          s += d * d;
        } else {
          s -= a_core(i, j) * bij;
        }
      }
    return s;
  }

  void recurse(int depth) {
    if (depth == n_c) {
      const double val = evaluate();
      ++result.enumerated;
      const double tol = 1e-9 * std::max(1.0, std::abs(result.optimum));
      if (result.minimizers.empty() || val < result.optimum - tol) {
        result.optimum = val;
        result.minimizers.clear();
        result.minimizers.push_back({n, sigma});
      } else if (val <= result.optimum + tol) {
        result.minimizers.push_back({n, sigma});
      }
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      sigma[depth] = j;
      recurse(depth + 1);
      used[j] = 0;
    }
  }
};

}  // namespace

BruteForceResult brute_force_gmp(const PaddedPair& pair,
                                 const EnumerationBudget& budget,
                                 ObjectiveKind kind) {
  if (budget.max_injections < 1) throw std::invalid_argument("bad budget");
  long long count = 1;
  for (int k = 0; k < pair.n_c; ++k) {
    count *= pair.n - k;
    if (count > budget.max_injections)
      throw std::invalid_argument("enumeration exceeds budget");
  }
  const Eigen::MatrixXd b = pair.b.dense();
  Enumerator e{pair.a_core, b, kind, pair.n_c, pair.n, {}, {}, {}};
  e.sigma.assign(pair.n_c, -1);
  e.used.assign(pair.n, 0);
  e.recurse(0);
  return std::move(e.result);
}

double verify_recovery_rate(const CorrErParams& params, const Scheme& scheme,
                            int replicates, std::uint64_t seed,
                            const EnumerationBudget& budget) {
  if (replicates < 1) throw std::invalid_argument("need replicates >= 1");
  Scheme s = scheme;
  if (s.kind == Scheme::Kind::Oracle && !s.lambda && s.lambda_file.empty())
    s.lambda = params.lambda;  // score against the true probabilities
  const Injection truth = identity_injection(params.n_c, params.n);
  int hits = 0;
  for (int r = 0; r < replicates; ++r) {
    std::mt19937_64 rng = make_stream(seed, static_cast<std::uint64_t>(r));
    auto [a, b] = sample_corr_er(params, rng);
    const PaddedPair pair = pad(a, b, s);
    const BruteForceResult bf =
        brute_force_gmp(pair, budget, ObjectiveKind::NegTrace);
    if (std::find(bf.minimizers.begin(), bf.minimizers.end(), truth) !=
        bf.minimizers.end())
      ++hits;
  }
  return static_cast<double>(hits) / replicates;
}

}  // namespace mfgm
