#pragma once

#include "mfgm/filter.hpp"
#include "mfgm/models.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mfgm {

struct ModelSpec {
  enum class Kind { Homogeneous, Planted, Rdpg, Adversarial };
  Kind kind = Kind::Homogeneous;
  int n = 200;
  int n_c = 25;
  double lambda = 0.5;  // background density (adversarial: template density)
  double rho = 0.9;
  double q = 0.5;    // planted core density
  double eps = 0.05;  // adversarial decoy margin
  CoreSelection core = CoreSelection::Random;  // rdpg only

  static Kind parse_kind(const std::string& text);
  std::string kind_name() const;
};

struct SampledInstance {
  Graph a;
  Graph b;
  Injection truth;  // identity: samplers relabel the core to the front
  Eigen::MatrixXd lambda;  // true edge probabilities, for oracle padding
};

SampledInstance sample_model(const ModelSpec& model, std::mt19937_64& rng);

struct ExperimentCell {
  std::string label;
  ModelSpec model;
  FilterConfig filter;
};

struct ExperimentSpec {
  ModelSpec model;
  FilterConfig filter;
  int replicates = 20;
  std::uint64_t rng_seed = 0;
  double scale = 1.0;  // shrinks n, n_c, restarts, replicates together
  std::vector<double> rho_grid;  // each empty grid means "use the base value"
  std::vector<int> seeds_grid;
  std::vector<double> q_grid;
  std::optional<double> smoothing_bandwidth;  // on ranks normalized to [0,1]

  ExperimentSpec scaled() const;
  std::vector<ExperimentCell> cells() const;
};

struct ReplicateOutcome {
  std::vector<int> correct_at_rank;  // by objective1 rank, failures count 0
  std::vector<MatchResult> results;
  double seconds_per_restart = 0.0;
};

struct CellOutcome {
  ExperimentCell cell;
  std::vector<ReplicateOutcome> replicates;

  std::vector<double> mean_correct_at_rank() const;
  std::vector<GapRow> pooled_gap(int n_c, int n) const;
  double mean_seconds() const;
  double sd_seconds() const;
};

std::vector<CellOutcome> run_experiment(const ExperimentSpec& spec);

/// Nadaraya-Watson smoothing of y against ranks mapped to [0, 1].
std::vector<double> smooth_over_ranks(const std::vector<double>& y,
                                      double bandwidth);

void write_accuracy_vs_rank_csv(std::ostream& out,
                                const std::vector<CellOutcome>& cells,
                                std::optional<double> bandwidth);
void write_objective_vs_accuracy_csv(std::ostream& out,
                                     const std::vector<CellOutcome>& cells);
/// Timings vary run to run; this table is exempt from byte reproducibility.
void write_runtime_csv(std::ostream& out, const std::vector<CellOutcome>& cells);

}  // namespace mfgm
