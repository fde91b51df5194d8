#include "mfgm/experiment.hpp"

#include "mfgm/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace mfgm {

ModelSpec::Kind ModelSpec::parse_kind(const std::string& text) {
  if (text == "homogeneous") return Kind::Homogeneous;
  if (text == "planted") return Kind::Planted;
  if (text == "rdpg") return Kind::Rdpg;
  if (text == "adversarial") return Kind::Adversarial;
  throw std::invalid_argument("unknown model kind: " + text);
}

std::string ModelSpec::kind_name() const {
  switch (kind) {
    case Kind::Homogeneous: return "homogeneous";
    case Kind::Planted: return "planted";
    case Kind::Rdpg: return "rdpg";
    case Kind::Adversarial: return "adversarial";
  }
  throw std::logic_error("unreachable model kind");
}

SampledInstance sample_model(const ModelSpec& model, std::mt19937_64& rng) {
  SampledInstance inst;
  inst.truth = identity_injection(model.n_c, model.n);
  if (model.kind == ModelSpec::Kind::Rdpg) {
    RdpgSample s = sample_rdpg_pair({model.n, model.n_c, model.rho, model.core}, rng);
    inst.a = std::move(s.a);
    inst.b = std::move(s.b);
    inst.lambda = s.latent * s.latent.transpose();
    inst.lambda.diagonal().setZero();
    return inst;
  }
  CorrErParams params;
  switch (model.kind) {
    case ModelSpec::Kind::Homogeneous:
      params = homogeneous_params(model.n, model.n_c, model.lambda, model.rho);
      break;
    case ModelSpec::Kind::Planted:
      params = planted_partition_params(model.n, model.n_c, model.lambda,
                                        model.q, model.rho);
      break;
    case ModelSpec::Kind::Adversarial:
      params = adversarial_naive_lambda(model.n, model.n_c, model.lambda,
                                        model.rho, model.eps);
      break;
    default:
      throw std::logic_error("unreachable model kind");
  }
  auto [a, b] = sample_corr_er(params, rng);
  inst.a = std::move(a);
  inst.b = std::move(b);
  inst.lambda = std::move(params.lambda);
  return inst;
}

ExperimentSpec ExperimentSpec::scaled() const {
  ExperimentSpec s = *this;
  if (scale <= 0.0) throw std::invalid_argument("scale must be positive");
  if (scale == 1.0) return s;
  auto shrink = [&](int v) { return std::max(1, static_cast<int>(std::lround(v * scale))); };
  s.model.n = shrink(model.n);
  s.model.n_c = std::min(shrink(model.n_c), s.model.n);
  s.filter.restarts = shrink(filter.restarts);
  s.filter.seeds = std::min(static_cast<int>(std::lround(filter.seeds * scale)),
                            s.model.n_c);
  s.replicates = shrink(replicates);
  for (int& v : s.seeds_grid) v = std::min(static_cast<int>(std::lround(v * scale)),
                                           s.model.n_c);
  s.scale = 1.0;
  return s;
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

}  // namespace

std::vector<ExperimentCell> ExperimentSpec::cells() const {
  const std::vector<double> rhos = rho_grid.empty()
                                       ? std::vector<double>{model.rho}
                                       : rho_grid;
  const std::vector<double> qs =
      q_grid.empty() ? std::vector<double>{model.q} : q_grid;
  const std::vector<int> seed_counts =
      seeds_grid.empty() ? std::vector<int>{filter.seeds} : seeds_grid;
  std::vector<ExperimentCell> out;
  for (double rho : rhos)
    for (double q : qs)
      for (int s : seed_counts) {
        ExperimentCell cell{.label = {}, .model = model, .filter = filter};
        cell.model.rho = rho;
        cell.model.q = q;
        cell.filter.seeds = s;
        cell.label = "rho=" + fmt("%g", rho);
        if (model.kind == ModelSpec::Kind::Planted)
          cell.label += ",q=" + fmt("%g", q);
        cell.label += ",s=" + std::to_string(s);
        out.push_back(std::move(cell));
      }
  return out;
}

std::vector<double> CellOutcome::mean_correct_at_rank() const {
  if (replicates.empty()) return {};
  std::vector<double> mean(replicates[0].correct_at_rank.size(), 0.0);
  for (const auto& rep : replicates)
    for (std::size_t k = 0; k < mean.size(); ++k)
      mean[k] += rep.correct_at_rank[k];
  for (double& v : mean) v /= static_cast<double>(replicates.size());
  return mean;
}

std::vector<GapRow> CellOutcome::pooled_gap(int n_c, int n) const {
  std::vector<MatchResult> all;
  for (const auto& rep : replicates)
    all.insert(all.end(), rep.results.begin(), rep.results.end());
  return objective_gap_profile(all, identity_injection(n_c, n));
}

double CellOutcome::mean_seconds() const {
  double s = 0.0;
  for (const auto& rep : replicates) s += rep.seconds_per_restart;
  return replicates.empty() ? 0.0 : s / static_cast<double>(replicates.size());
}

double CellOutcome::sd_seconds() const {
  if (replicates.size() < 2) return 0.0;
  const double m = mean_seconds();
  double acc = 0.0;
  for (const auto& rep : replicates) {
    const double d = rep.seconds_per_restart - m;
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(replicates.size() - 1));
}

std::vector<CellOutcome> run_experiment(const ExperimentSpec& raw) {
  const ExperimentSpec spec = raw.scaled();
  if (spec.replicates < 1) throw std::invalid_argument("need replicates >= 1");
  std::vector<CellOutcome> out;
  const auto cells = spec.cells();
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    CellOutcome cell{cells[ci], {}};
    for (int r = 0; r < spec.replicates; ++r) {
      const std::uint64_t tag = (static_cast<std::uint64_t>(ci) << 32) |
                                static_cast<std::uint64_t>(2 * r);
      std::mt19937_64 rng = make_stream(spec.rng_seed, tag);
      SampledInstance inst = sample_model(cell.cell.model, rng);
      FilterConfig fc = cell.cell.filter;
      fc.rng_seed = spec.rng_seed ^ splitmix64(tag + 1);
      if (fc.scheme1.kind == Scheme::Kind::Oracle && !fc.scheme1.lambda)
        fc.scheme1.lambda = inst.lambda;
      if (fc.scheme2 && fc.scheme2->kind == Scheme::Kind::Oracle &&
          !fc.scheme2->lambda)
        fc.scheme2->lambda = inst.lambda;
      const auto t0 = std::chrono::steady_clock::now();
      auto results = run_filter(inst.a, inst.b, fc);
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - t0;
      ReplicateOutcome rep;
      rep.seconds_per_restart = elapsed.count() / fc.restarts;
      rep.correct_at_rank.reserve(results.size());
      for (const auto& m : results)
        rep.correct_at_rank.push_back(
            m.failed ? 0 : correct_matches(m.injection, inst.truth));
      rep.results = std::move(results);
      cell.replicates.push_back(std::move(rep));
    }
    out.push_back(std::move(cell));
  }
  return out;
}

std::vector<double> smooth_over_ranks(const std::vector<double>& y,
                                      double bandwidth) {
  if (bandwidth <= 0.0) throw std::invalid_argument("bandwidth must be positive");
  const int m = static_cast<int>(y.size());
  std::vector<double> out(y.size());
  auto x = [&](int k) { return m > 1 ? static_cast<double>(k) / (m - 1) : 0.0; };
  for (int k = 0; k < m; ++k) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < m; ++j) {
      const double d = (x(k) - x(j)) / bandwidth;
      const double w = std::exp(-0.5 * d * d);
      num += w * y[j];
      den += w;
    }
    out[k] = num / den;
  }
  return out;
}

void write_accuracy_vs_rank_csv(std::ostream& out,
                                const std::vector<CellOutcome>& cells,
                                std::optional<double> bandwidth) {
  out << "cell,rank,mean_correct";
  if (bandwidth) out << ",smoothed";
  out << '\n';
  for (const auto& cell : cells) {
    const auto mean = cell.mean_correct_at_rank();
    const auto smoothed =
        bandwidth ? smooth_over_ranks(mean, *bandwidth) : std::vector<double>{};
    for (std::size_t k = 0; k < mean.size(); ++k) {
      out << cell.cell.label << ',' << (k + 1) << ',' << format_double(mean[k]);
      if (bandwidth) out << ',' << format_double(smoothed[k]);
      out << '\n';
    }
  }
}

void write_objective_vs_accuracy_csv(std::ostream& out,
                                     const std::vector<CellOutcome>& cells) {
  out << "cell,correct_matches,mean_objective,count\n";
  for (const auto& cell : cells)
    for (const auto& row : cell.pooled_gap(cell.cell.model.n_c, cell.cell.model.n))
      out << cell.cell.label << ',' << row.correct << ','
          << format_double(row.mean_objective) << ',' << row.count << '\n';
}

void write_runtime_csv(std::ostream& out, const std::vector<CellOutcome>& cells) {
  out << "cell,mean_sec_per_restart,sd_sec_per_restart,replicates\n";
  for (const auto& cell : cells)
    out << cell.cell.label << ',' << format_double(cell.mean_seconds()) << ','
        << format_double(cell.sd_seconds()) << ',' << cell.replicates.size()
        << '\n';
}

}  // namespace mfgm
