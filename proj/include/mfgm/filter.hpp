#pragma once

#include "mfgm/faq.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>

namespace mfgm {

struct FilterConfig {
  int restarts = 50;
  int seeds = 0;  // seed vertices are assumed relabeled to the front
  Scheme scheme1 = Scheme::centered();
  std::optional<Scheme> scheme2;  // second-stage re-matching
  std::uint64_t rng_seed = 0;
  FaqConfig faq;
  int workers = 1;
};

struct MatchResult {
  Injection injection;
  double objective1 = 0.0;
  std::optional<double> objective2;
  int restart = 0;
  int iterations = 0;
  double alpha0 = 0.0;
  bool failed = false;
  std::string error;
};

struct PairFrequency {
  Eigen::MatrixXi counts;  // n_c x n
  int total = 0;
};

/// Seed rows are exact indicators; each remaining row mixes a random
/// permutation of the non-seed block with the flat distribution:
/// alpha*P + (1-alpha)/(n-s) on non-seed columns, alpha ~ Unif(0,1).
/// Returns the plan and the alpha that was drawn (0 when fully seeded).
std::pair<TransportPlan, double> random_start(int n_c, int n, int s,
                                              std::mt19937_64& rng);

/// Soft-seeded random restarts: pad per scheme1, solve from random_start,
/// optionally re-pad per scheme2 and re-solve warm-started at the first
/// stage's pre-projection plan. Results come back sorted by objective1
/// ascending (ties keep restart order); failed restarts sort last.
std::vector<MatchResult> run_filter(const Graph& a, const Graph& b,
                                    const FilterConfig& cfg);

std::vector<MatchResult> rank_by_objective(std::vector<MatchResult> results);

PairFrequency pair_frequencies(const std::vector<MatchResult>& results);

struct GapRow {
  int correct = 0;
  double mean_objective = 0.0;
  int count = 0;
};

/// Mean objective1 per achieved correct-match count, ascending in correct.
std::vector<GapRow> objective_gap_profile(const std::vector<MatchResult>& results,
                                          const Injection& truth);

/// CSV schema: restart,objective1,objective2,iters,alpha0,correct_matches,
/// edge_errors,sigma (targets space-separated). Unknown fields stay empty.
void write_results_csv(std::ostream& out, const std::vector<MatchResult>& results,
                       const Graph& a, const Graph& b,
                       const Injection* truth = nullptr);

void write_pair_frequency_csv(std::ostream& out, const PairFrequency& freq);

/// printf %.17g — round-trips doubles and keeps output byte-stable.
std::string format_double(double x);

}  // namespace mfgm
