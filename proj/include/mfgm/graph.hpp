#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mfgm {

/// Simple 0/1 graph with hollow adjacency. Undirected graphs store each
/// edge once with u < v; directed graphs keep ordered pairs.
class Graph {
 public:
  Graph() = default;
  Graph(int n, bool directed = false);

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                          bool directed = false);

  int order() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  Eigen::MatrixXd dense() const;
  Eigen::SparseMatrix<double> sparse() const;

  /// Induced subgraph on the given vertices, relabeled 0..k-1 in list order.
  Graph induced_subgraph(const std::vector<int>& vertices) const;

  /// New graph with vertex i renamed perm[i].
  Graph relabeled(const std::vector<int>& perm) const;

 private:
  int n_ = 0;
  bool directed_ = false;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint8_t> adj_;  // n*n lookup table
};

/// Edge-list text format: header "n directed|undirected [0-indexed|1-indexed]",
/// then one "u v" pair per line.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::string& path);

/// Injective map [n_c] -> [n]; the first n_c rows of a permutation matrix.
struct Injection {
  int n = 0;             // codomain size
  std::vector<int> map;  // size n_c, distinct values in [0, n)

  int domain() const { return static_cast<int>(map.size()); }
  int operator()(int i) const { return map[i]; }
  bool operator==(const Injection&) const = default;
  bool valid() const;
  void check() const;  // throws std::invalid_argument when invalid
};

Injection identity_injection(int n_c, int n);

/// result(i) = tau(sigma(i)); tau is a permutation of [n].
Injection compose_injection(const Injection& sigma, const std::vector<int>& tau);

/// |{i : sigma(i) = truth(i)}|
int correct_matches(const Injection& sigma, const Injection& truth);

enum class EdgeErrorMode { PerDirection, PerPair };

/// Number of template pairs whose edge state disagrees with the induced
/// image under sigma. Undirected pairs count once; directed pairs count
/// per direction unless PerPair is requested.
long edge_errors(const Graph& a, const Graph& b, const Injection& sigma,
                 EdgeErrorMode mode = EdgeErrorMode::PerDirection);

/// Row slice (n_c x n) of a doubly stochastic matrix, tracked as a convex
/// combination of an initial plan and the injections picked by the solver.
struct TransportPlan {
  Eigen::MatrixXd rows;  // n_c x n, row sums 1, column sums <= 1

  // rows == initial_weight * initial_rows + sum_i steps[i].first * indicator
  double initial_weight = 0.0;
  Eigen::MatrixXd initial_rows;
  std::vector<std::pair<double, Injection>> steps;

  int n_c() const { return static_cast<int>(rows.rows()); }
  int n() const { return static_cast<int>(rows.cols()); }

  static TransportPlan from_injection(const Injection& sigma);

  Eigen::MatrixXd reconstruct() const;
  bool is_injection_indicator(Injection* out = nullptr) const;
  void check_valid(double tol = 1e-9) const;
};

struct SeedSet {
  int count = 0;
};

/// Permutation (perm[old] = new) moving the listed vertices to the front,
/// in list order; remaining vertices keep their relative order.
std::vector<int> front_relabeling(const std::vector<int>& front, int n);
std::vector<int> inverse_permutation(const std::vector<int>& perm);

}  // namespace mfgm
