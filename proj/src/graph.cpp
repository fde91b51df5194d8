#include "mfgm/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mfgm {

Graph::Graph(int n, bool directed) : n_(n), directed_(directed) {
  if (n < 0) throw std::invalid_argument("graph order must be nonnegative");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                        bool directed) {
  Graph g(n, directed);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (!directed_ && u > v) std::swap(u, v);
  std::size_t k = static_cast<std::size_t>(u) * n_ + v;
  if (adj_[k]) return;
  adj_[k] = 1;
  if (!directed_) adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  edges_.emplace_back(u, v);
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
}

Eigen::MatrixXd Graph::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& [u, v] : edges_) {
    m(u, v) = 1.0;
    if (!directed_) m(v, u) = 1.0;
  }
  return m;
}

Eigen::SparseMatrix<double> Graph::sparse() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(edges_.size() * (directed_ ? 1 : 2));
  for (const auto& [u, v] : edges_) {
    trips.emplace_back(u, v, 1.0);
    if (!directed_) trips.emplace_back(v, u, 1.0);
  }
  Eigen::SparseMatrix<double> s(n_, n_);
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

Graph Graph::induced_subgraph(const std::vector<int>& vertices) const {
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    int v = vertices[i];
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    if (pos[v] != -1) throw std::invalid_argument("duplicate vertex in selection");
    pos[v] = static_cast<int>(i);
  }
  Graph g(static_cast<int>(vertices.size()), directed_);
  for (const auto& [u, v] : edges_)
    if (pos[u] != -1 && pos[v] != -1) g.add_edge(pos[u], pos[v]);
  return g;
}

Graph Graph::relabeled(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_)
    throw std::invalid_argument("permutation size mismatch");
  Graph g(n_, directed_);
  for (const auto& [u, v] : edges_) g.add_edge(perm[u], perm[v]);
  return g;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty edge-list input");
  std::istringstream header(line);
  int n = 0;
  std::string kind, base;
  if (!(header >> n >> kind))
    throw std::runtime_error("bad edge-list header: " + line);
  bool directed;
  if (kind == "directed")
    directed = true;
  else if (kind == "undirected")
    directed = false;
  else
    throw std::runtime_error("bad edge-list header kind: " + kind);
  int offset = 0;
  if (header >> base) {
    if (base == "1-indexed")
      offset = 1;
    else if (base != "0-indexed")
      throw std::runtime_error("bad edge-list index base: " + base);
  }
  Graph g(n, directed);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) throw std::runtime_error("bad edge line: " + line);
    g.add_edge(u - offset, v - offset);
  }
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.order() << (g.directed() ? " directed" : " undirected")
      << " 0-indexed\n";
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_edge_list(g, out);
}

bool Injection::valid() const {
  if (static_cast<int>(map.size()) > n) return false;
  std::vector<char> seen(n, 0);
  for (int v : map) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

void Injection::check() const {
  if (!valid()) throw std::invalid_argument("invalid injection");
}

Injection identity_injection(int n_c, int n) {
  if (n_c > n) throw std::invalid_argument("n_c > n");
  Injection s{n, std::vector<int>(n_c)};
  std::iota(s.map.begin(), s.map.end(), 0);
  return s;
}

Injection compose_injection(const Injection& sigma, const std::vector<int>& tau) {
  if (static_cast<int>(tau.size()) != sigma.n)
    throw std::invalid_argument("permutation size does not match codomain");
  Injection out{sigma.n, std::vector<int>(sigma.map.size())};
  for (std::size_t i = 0; i < sigma.map.size(); ++i) out.map[i] = tau[sigma.map[i]];
  out.check();
  return out;
}

int correct_matches(const Injection& sigma, const Injection& truth) {
  if (sigma.n != truth.n || sigma.domain() != truth.domain())
    throw std::invalid_argument("injection size mismatch");
  int c = 0;
  for (int i = 0; i < sigma.domain(); ++i)
    if (sigma.map[i] == truth.map[i]) ++c;
  return c;
}

long edge_errors(const Graph& a, const Graph& b, const Injection& sigma,
                 EdgeErrorMode mode) {
  if (sigma.domain() != a.order() || sigma.n != b.order())
    throw std::invalid_argument("injection does not match graph orders");
  const int n_c = a.order();
  long errs = 0;
  if (!a.directed() && !b.directed()) {
    for (int u = 0; u < n_c; ++u)
      for (int v = u + 1; v < n_c; ++v)
        if (a.has_edge(u, v) != b.has_edge(sigma(u), sigma(v))) ++errs;
    return errs;
  }
  if (mode == EdgeErrorMode::PerDirection) {
    for (int u = 0; u < n_c; ++u)
      for (int v = 0; v < n_c; ++v)
        if (u != v && a.has_edge(u, v) != b.has_edge(sigma(u), sigma(v))) ++errs;
    return errs;
  }
  for (int u = 0; u < n_c; ++u)
    for (int v = u + 1; v < n_c; ++v) {
      bool bad = a.has_edge(u, v) != b.has_edge(sigma(u), sigma(v)) ||
                 a.has_edge(v, u) != b.has_edge(sigma(v), sigma(u));
      if (bad) ++errs;
    }
  return errs;
}

TransportPlan TransportPlan::from_injection(const Injection& sigma) {
  sigma.check();
  TransportPlan p;
  p.rows = Eigen::MatrixXd::Zero(sigma.domain(), sigma.n);
  for (int i = 0; i < sigma.domain(); ++i) p.rows(i, sigma(i)) = 1.0;
  p.steps.emplace_back(1.0, sigma);
  return p;
}

Eigen::MatrixXd TransportPlan::reconstruct() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows.rows(), rows.cols());
  if (initial_weight != 0.0) m = initial_weight * initial_rows;
  for (const auto& [w, sigma] : steps)
    for (int i = 0; i < sigma.domain(); ++i) m(i, sigma(i)) += w;
  return m;
}

bool TransportPlan::is_injection_indicator(Injection* out) const {
  Injection sigma{n(), std::vector<int>(n_c(), -1)};
  std::vector<char> used(n(), 0);
  for (int i = 0; i < n_c(); ++i) {
    for (int j = 0; j < n(); ++j) {
      double x = rows(i, j);
      if (x > 0.5) {
        if (x < 1.0 - 1e-12 || sigma.map[i] != -1 || used[j]) return false;
        sigma.map[i] = j;
        used[j] = 1;
      } else if (x > 1e-12) {
        return false;
      }
    }
    if (sigma.map[i] == -1) return false;
  }
  if (out) *out = std::move(sigma);
  return true;
}

void TransportPlan::check_valid(double tol) const {
  if (rows.rows() == 0 || rows.cols() < rows.rows())
    throw std::invalid_argument("transport plan must be n_c x n with n_c <= n");
  if ((rows.array() < -tol).any())
    throw std::invalid_argument("transport plan has negative entries");
  for (int i = 0; i < rows.rows(); ++i)
    if (std::abs(rows.row(i).sum() - 1.0) > tol)
      throw std::invalid_argument("transport plan row sum != 1");
  for (int j = 0; j < rows.cols(); ++j)
    if (rows.col(j).sum() > 1.0 + tol)
      throw std::invalid_argument("transport plan column sum > 1");
}

std::vector<int> front_relabeling(const std::vector<int>& front, int n) {
  std::vector<int> perm(n, -1);
  int next = 0;
  for (int v : front) {
    if (v < 0 || v >= n) throw std::invalid_argument("vertex out of range");
    if (perm[v] != -1) throw std::invalid_argument("duplicate vertex");
    perm[v] = next++;
  }
  for (int v = 0; v < n; ++v)
    if (perm[v] == -1) perm[v] = next++;
  return perm;
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace mfgm
