#pragma once

#include "mfgm/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mfgm {

struct RankOne {
  double coeff;
  Eigen::VectorXd left;
  Eigen::VectorXd right;
};

/// n x n matrix stored as sparse + sum of rank-one terms + optional dense
/// term, so value(i,j) = sparse(i,j) + sum_k c_k u_k(i) v_k(j) + dense(i,j).
/// The dense term is only populated by schemes that subtract an arbitrary
/// probability matrix.
class PaddedMatrix {
 public:
  PaddedMatrix() = default;
  PaddedMatrix(Eigen::SparseMatrix<double> sparse, std::vector<RankOne> lowrank,
               std::optional<Eigen::MatrixXd> dense_term = std::nullopt);

  int size() const { return static_cast<int>(sparse_.rows()); }
  const std::vector<RankOne>& lowrank() const { return lowrank_; }

  double entry(int i, int j) const;
  Eigen::MatrixXd dense() const;
  Eigen::MatrixXd top_left(int k) const;

  /// X * M (or X * M^T), X is k x n. Never forms a dense n x n product.
  Eigen::MatrixXd mul_right(const Eigen::MatrixXd& x, bool transpose = false) const;

 private:
  Eigen::SparseMatrix<double> sparse_;
  std::vector<RankOne> lowrank_;
  std::optional<Eigen::MatrixXd> dense_;
};

struct Scheme {
  enum class Kind { Naive, Centered, Oracle, LowRank };
  Kind kind = Kind::Centered;
  int rank = 1;                          // LowRank only
  std::optional<Eigen::MatrixXd> lambda; // Oracle only
  std::string lambda_file;               // Oracle, when parsed from text

  static Scheme naive() { return {Kind::Naive}; }
  static Scheme centered() { return {Kind::Centered}; }
  static Scheme oracle(Eigen::MatrixXd l);
  static Scheme low_rank(int r);

  /// `naive | centered | oracle:<file> | rank:<r>`; oracle's matrix is
  /// loaded separately by the caller.
  static Scheme parse(const std::string& text);
  std::string to_string() const;
};

struct PaddedPair {
  PaddedMatrix a;  // n x n, only the top-left n_c block can be nonzero
  PaddedMatrix b;  // n x n
  Eigen::MatrixXd a_core;  // dense n_c x n_c copy of a's top-left block
  int n_c = 0;
  int n = 0;
  bool directed = false;
};

PaddedPair pad_naive(const Graph& a, const Graph& b);
PaddedPair pad_centered(const Graph& a, const Graph& b);
PaddedPair pad_oracle(const Graph& a, const Graph& b, const Eigen::MatrixXd& lambda);
PaddedPair pad_lowrank(const Graph& a, const Graph& b, int r);
PaddedPair pad(const Graph& a, const Graph& b, const Scheme& scheme);

struct LowRankFactor {
  Eigen::VectorXd values;  // signed weights, |values| descending
  Eigen::MatrixXd left;    // columns orthonormal
  Eigen::MatrixXd right;

  Eigen::MatrixXd dense() const {
    return left * values.asDiagonal() * right.transpose();
  }
};

/// Best Frobenius rank-<=r approximation (truncated eigen decomposition when
/// symmetric, truncated SVD otherwise). Signed eigenvalues are kept.
LowRankFactor best_rank_r(const Eigen::MatrixXd& m, int r);

Eigen::MatrixXd load_dense_matrix(const std::string& path);
void save_dense_matrix(const Eigen::MatrixXd& m, const std::string& path);

}  // namespace mfgm
