#pragma once

#include "mfgm/models.hpp"
#include "mfgm/padding.hpp"

#include <cstdint>
#include <vector>

namespace mfgm {

struct EnumerationBudget {
  long long max_injections = 2'000'000;
};

enum class ObjectiveKind {
  BlockResidual,  // sum over the template block of (Atil - P Btil P^T)^2
  NegTrace,       // -sum Acore_ij Btil_{sigma(i)sigma(j)}
};

struct BruteForceResult {
  std::vector<Injection> minimizers;  // lexicographic order
  double optimum = 0.0;
  long long enumerated = 0;
};

/// Exhaustive sweep of every injection [n_c] -> [n]. Deliberately plain so
/// it can serve as ground truth; refuses (rather than samples) when the
/// count exceeds the budget.
BruteForceResult brute_force_gmp(const PaddedPair& pair,
                                 const EnumerationBudget& budget = {},
                                 ObjectiveKind kind = ObjectiveKind::BlockResidual);

/// Monte-Carlo fraction of replicates where the identity injection attains
/// the global trace-form optimum under the given scheme. Replicate r draws
/// from make_stream(seed, r), so two schemes scored with the same seed see
/// identical graph pairs.
double verify_recovery_rate(const CorrErParams& params, const Scheme& scheme,
                            int replicates, std::uint64_t seed,
                            const EnumerationBudget& budget = {});

}  // namespace mfgm
