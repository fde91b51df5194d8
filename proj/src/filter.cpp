#include "mfgm/filter.hpp"

#include "mfgm/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace mfgm {

std::pair<TransportPlan, double> random_start(int n_c, int n, int s,
                                              std::mt19937_64& rng) {
  if (s < 0 || s > n_c || n_c > n)
    throw std::invalid_argument("need 0 <= s <= n_c <= n");
  TransportPlan plan;
  plan.rows = Eigen::MatrixXd::Zero(n_c, n);
  for (int i = 0; i < s; ++i) plan.rows(i, i) = 1.0;
  double alpha = 0.0;
  if (s < n_c) {
    alpha = canonical_uniform(rng);
    const std::vector<int> perm = random_permutation(n - s, rng);
    const double flat = (1.0 - alpha) / (n - s);
    for (int i = s; i < n_c; ++i) {
      for (int j = s; j < n; ++j) plan.rows(i, j) = flat;
      plan.rows(i, s + perm[i - s]) += alpha;
    }
  }
  plan.initial_weight = 1.0;
  plan.initial_rows = plan.rows;
  return {std::move(plan), alpha};
}

std::vector<MatchResult> run_filter(const Graph& a, const Graph& b,
                                    const FilterConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("need at least one restart");
  if (cfg.seeds < 0 || cfg.seeds > a.order())
    throw std::invalid_argument("seed count out of range");
  const PaddedPair pair1 = pad(a, b, cfg.scheme1);
  std::optional<PaddedPair> pair2;
  if (cfg.scheme2) pair2 = pad(a, b, *cfg.scheme2);

  std::vector<MatchResult> results(cfg.restarts);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int idx; (idx = next.fetch_add(1)) < cfg.restarts;) {
      MatchResult& m = results[idx];
      m.restart = idx;
      try {
        std::mt19937_64 rng = make_stream(cfg.rng_seed, idx);
        auto [d0, alpha0] = random_start(pair1.n_c, pair1.n, cfg.seeds, rng);
        m.alpha0 = alpha0;
        FaqResult first = run_faq(pair1, d0, cfg.faq);
        m.objective1 = first.objective;
        m.injection = first.sigma;
        m.iterations = first.trace.iterations;
        if (pair2) {
          FaqResult second = run_faq(*pair2, first.plan, cfg.faq);
          m.objective2 = second.objective;
          m.injection = second.sigma;
          m.iterations += second.trace.iterations;
        }
      } catch (const std::exception& e) {
        m.failed = true;
        m.error = e.what();
        m.objective1 = std::numeric_limits<double>::infinity();
      }
    }
  };
  const int workers = std::clamp(cfg.workers, 1, cfg.restarts);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rank_by_objective(std::move(results));
}

std::vector<MatchResult> rank_by_objective(std::vector<MatchResult> results) {
  if (results.empty()) throw std::invalid_argument("no results to rank");
  std::stable_sort(results.begin(), results.end(),
                   [](const MatchResult& x, const MatchResult& y) {
                     if (x.failed != y.failed) return !x.failed;
                     return x.objective1 < y.objective1;
                   });
  return results;
}

PairFrequency pair_frequencies(const std::vector<MatchResult>& results) {
  if (results.empty()) throw std::invalid_argument("no results");
  PairFrequency freq;
  int n_c = -1, n = -1;
  for (const auto& m : results) {
    if (m.failed) continue;
    if (n_c == -1) {
      n_c = m.injection.domain();
      n = m.injection.n;
      freq.counts = Eigen::MatrixXi::Zero(n_c, n);
    }
    if (m.injection.domain() != n_c || m.injection.n != n)
      throw std::invalid_argument("mixed result sizes");
    for (int i = 0; i < n_c; ++i) ++freq.counts(i, m.injection(i));
    ++freq.total;
  }
  if (n_c == -1) throw std::invalid_argument("all restarts failed");
  return freq;
}

std::vector<GapRow> objective_gap_profile(const std::vector<MatchResult>& results,
                                          const Injection& truth) {
  std::map<int, std::pair<double, int>> acc;
  for (const auto& m : results) {
    if (m.failed) continue;
    auto& [sum, count] = acc[correct_matches(m.injection, truth)];
    sum += m.objective1;
    ++count;
  }
  std::vector<GapRow> rows;
  for (const auto& [correct, sc] : acc)
    rows.push_back({correct, sc.first / sc.second, sc.second});
  return rows;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_results_csv(std::ostream& out, const std::vector<MatchResult>& results,
                       const Graph& a, const Graph& b, const Injection* truth) {
  out << "restart,objective1,objective2,iters,alpha0,correct_matches,"
         "edge_errors,sigma\n";
  for (const auto& m : results) {
    out << m.restart << ',' << format_double(m.objective1) << ',';
    if (m.objective2) out << format_double(*m.objective2);
    out << ',' << m.iterations << ',' << format_double(m.alpha0) << ',';
    if (truth && !m.failed) out << correct_matches(m.injection, *truth);
    out << ',';
    if (!m.failed) out << edge_errors(a, b, m.injection);
    out << ',';
    if (!m.failed)
      for (int i = 0; i < m.injection.domain(); ++i)
        out << (i ? " " : "") << m.injection(i);
    out << '\n';
  }
}

void write_pair_frequency_csv(std::ostream& out, const PairFrequency& freq) {
  for (int i = 0; i < freq.counts.rows(); ++i) {
    for (int j = 0; j < freq.counts.cols(); ++j)
      out << (j ? "," : "") << freq.counts(i, j);
    out << '\n';
  }
}

}  // namespace mfgm
