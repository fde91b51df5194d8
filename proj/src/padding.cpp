#include "mfgm/padding.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mfgm {

PaddedMatrix::PaddedMatrix(Eigen::SparseMatrix<double> sparse,
                           std::vector<RankOne> lowrank,
                           std::optional<Eigen::MatrixXd> dense_term)
    : sparse_(std::move(sparse)),
      lowrank_(std::move(lowrank)),
      dense_(std::move(dense_term)) {
  if (sparse_.rows() != sparse_.cols())
    throw std::invalid_argument("padded matrix must be square");
  for (const auto& t : lowrank_)
    if (t.left.size() != sparse_.rows() || t.right.size() != sparse_.rows())
      throw std::invalid_argument("rank-one term size mismatch");
  if (dense_ && (dense_->rows() != sparse_.rows() || dense_->cols() != sparse_.cols()))
    throw std::invalid_argument("dense term size mismatch");
  sparse_.makeCompressed();
}

double PaddedMatrix::entry(int i, int j) const {
  double v = sparse_.coeff(i, j);
  for (const auto& t : lowrank_) v += t.coeff * t.left(i) * t.right(j);
  if (dense_) v += (*dense_)(i, j);
  return v;
}

Eigen::MatrixXd PaddedMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd(sparse_);
  for (const auto& t : lowrank_) m += t.coeff * t.left * t.right.transpose();
  if (dense_) m += *dense_;
  return m;
}

Eigen::MatrixXd PaddedMatrix::top_left(int k) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sparse_, j); it; ++it)
      if (it.row() < k) m(it.row(), j) += it.value();
  for (const auto& t : lowrank_)
    m += t.coeff * t.left.head(k) * t.right.head(k).transpose();
  if (dense_) m += dense_->topLeftCorner(k, k);
  return m;
}

Eigen::MatrixXd PaddedMatrix::mul_right(const Eigen::MatrixXd& x,
                                        bool transpose) const {
  if (x.cols() != sparse_.rows())
    throw std::invalid_argument("mul_right size mismatch");
  Eigen::MatrixXd y;
  if (transpose)
    y = (sparse_ * x.transpose()).transpose();
  else
    y = x * sparse_;
  for (const auto& t : lowrank_) {
    if (transpose)
      y.noalias() += t.coeff * (x * t.right) * t.left.transpose();
    else
      y.noalias() += t.coeff * (x * t.left) * t.right.transpose();
  }
  if (dense_) {
    if (transpose)
      y.noalias() += x * dense_->transpose();
    else
      y.noalias() += x * *dense_;
  }
  return y;
}

Scheme Scheme::oracle(Eigen::MatrixXd l) {
  Scheme s;
  s.kind = Kind::Oracle;
  s.lambda = std::move(l);
  return s;
}

Scheme Scheme::low_rank(int r) {
  Scheme s;
  s.kind = Kind::LowRank;
  s.rank = r;
  return s;
}

Scheme Scheme::parse(const std::string& text) {
  if (text == "naive") return naive();
  if (text == "centered") return centered();
  if (text.rfind("oracle:", 0) == 0) {
    Scheme s;
    s.kind = Kind::Oracle;
    s.lambda_file = text.substr(7);
    if (s.lambda_file.empty())
      throw std::invalid_argument("oracle scheme needs a matrix file");
    return s;
  }
  if (text.rfind("rank:", 0) == 0) {
    int r = 0;
    try {
      r = std::stoi(text.substr(5));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rank in scheme: " + text);
    }
    if (r < 1) throw std::invalid_argument("rank must be >= 1");
    return low_rank(r);
  }
  throw std::invalid_argument("unknown scheme: " + text);
}

std::string Scheme::to_string() const {
  switch (kind) {
    case Kind::Naive: return "naive";
    case Kind::Centered: return "centered";
    case Kind::Oracle: return "oracle:" + (lambda_file.empty() ? "<matrix>" : lambda_file);
    case Kind::LowRank: return "rank:" + std::to_string(rank);
  }
  return "?";
}

namespace {

void check_orders(const Graph& a, const Graph& b) {
  if (a.order() > b.order())
    throw std::invalid_argument("template larger than network");
}

Eigen::SparseMatrix<double> embed_sparse(const Graph& g, int n, double scale,
                                         double diag, int diag_count) {
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& [u, v] : g.edges()) {
    trips.emplace_back(u, v, scale);
    if (!g.directed()) trips.emplace_back(v, u, scale);
  }
  for (int i = 0; i < diag_count; ++i) trips.emplace_back(i, i, diag);
  Eigen::SparseMatrix<double> s(n, n);
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

Eigen::VectorXd head_indicator(int k, int n) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v.head(k).setOnes();
  return v;
}

PaddedPair finish(PaddedMatrix a, PaddedMatrix b, const Graph& ga, const Graph& gb) {
  PaddedPair p;
  p.n_c = ga.order();
  p.n = gb.order();
  p.directed = ga.directed() || gb.directed();
  p.a_core = a.top_left(p.n_c);
  p.a = std::move(a);
  p.b = std::move(b);
  return p;
}

}  // namespace

PaddedPair pad_naive(const Graph& a, const Graph& b) {
  check_orders(a, b);
  const int n = b.order();
  PaddedMatrix at(embed_sparse(a, n, 1.0, 0.0, 0), {});
  PaddedMatrix bt(embed_sparse(b, n, 1.0, 0.0, 0), {});
  return finish(std::move(at), std::move(bt), a, b);
}

PaddedPair pad_centered(const Graph& a, const Graph& b) {
  check_orders(a, b);
  const int n = b.order();
  const int n_c = a.order();
  // 2A - J on the core, hollow J: the rank-one -ones block plus a +1
  // diagonal correction keeps diagonals at zero.
  PaddedMatrix at(embed_sparse(a, n, 2.0, 1.0, n_c),
                  {{-1.0, head_indicator(n_c, n), head_indicator(n_c, n)}});
  PaddedMatrix bt(embed_sparse(b, n, 2.0, 1.0, n),
                  {{-1.0, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Ones(n)}});
  return finish(std::move(at), std::move(bt), a, b);
}

PaddedPair pad_oracle(const Graph& a, const Graph& b, const Eigen::MatrixXd& lambda) {
  check_orders(a, b);
  const int n = b.order();
  const int n_c = a.order();
  if (lambda.rows() != n || lambda.cols() != n)
    throw std::invalid_argument("probability matrix must be n x n");
  if ((lambda.array() < 0.0).any() || (lambda.array() > 1.0).any())
    throw std::invalid_argument("probability matrix entries must lie in [0,1]");
  Eigen::MatrixXd neg_core = Eigen::MatrixXd::Zero(n, n);
  neg_core.topLeftCorner(n_c, n_c) = -lambda.topLeftCorner(n_c, n_c);
  PaddedMatrix at(embed_sparse(a, n, 1.0, 0.0, 0), {}, std::move(neg_core));
  PaddedMatrix bt(embed_sparse(b, n, 1.0, 0.0, 0), {}, -lambda);
  return finish(std::move(at), std::move(bt), a, b);
}

PaddedPair pad_lowrank(const Graph& a, const Graph& b, int r) {
  check_orders(a, b);
  if (r < 1 || r > a.order())
    throw std::invalid_argument("rank out of range");
  const int n = b.order();
  const int n_c = a.order();
  LowRankFactor fa = best_rank_r(a.dense(), r);
  LowRankFactor fb = best_rank_r(b.dense(), r);
  std::vector<RankOne> ta, tb;
  for (int k = 0; k < fa.values.size(); ++k) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n), v = Eigen::VectorXd::Zero(n);
    u.head(n_c) = fa.left.col(k);
    v.head(n_c) = fa.right.col(k);
    ta.push_back({-fa.values(k), std::move(u), std::move(v)});
  }
  for (int k = 0; k < fb.values.size(); ++k)
    tb.push_back({-fb.values(k), fb.left.col(k), fb.right.col(k)});
  PaddedMatrix at(embed_sparse(a, n, 1.0, 0.0, 0), std::move(ta));
  PaddedMatrix bt(embed_sparse(b, n, 1.0, 0.0, 0), std::move(tb));
  return finish(std::move(at), std::move(bt), a, b);
}

PaddedPair pad(const Graph& a, const Graph& b, const Scheme& scheme) {
  switch (scheme.kind) {
    case Scheme::Kind::Naive: return pad_naive(a, b);
    case Scheme::Kind::Centered: return pad_centered(a, b);
    case Scheme::Kind::Oracle: {
      if (scheme.lambda) return pad_oracle(a, b, *scheme.lambda);
      if (!scheme.lambda_file.empty())
        return pad_oracle(a, b, load_dense_matrix(scheme.lambda_file));
      throw std::invalid_argument("oracle scheme has no probability matrix");
    }
    case Scheme::Kind::LowRank: return pad_lowrank(a, b, scheme.rank);
  }
  throw std::logic_error("unreachable scheme kind");
}

namespace {

LowRankFactor take_symmetric(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es,
                             int r) {
  const auto& vals = es.eigenvalues();
  std::vector<int> idx(vals.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    return std::abs(vals(i)) > std::abs(vals(j));
  });
  LowRankFactor f;
  f.values.resize(r);
  f.left.resize(es.eigenvectors().rows(), r);
  for (int k = 0; k < r; ++k) {
    f.values(k) = vals(idx[k]);
    f.left.col(k) = es.eigenvectors().col(idx[k]);
  }
  f.right = f.left;
  return f;
}

Eigen::MatrixXd orth(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

// Subspace iteration for matrices too large for a dense factorization.
LowRankFactor iterative_rank_r(const Eigen::MatrixXd& m, int r, bool symmetric) {
  const int p = std::min<int>(std::min(m.rows(), m.cols()), r + 8);
  std::mt19937_64 rng(0x6d6667726c72ULL);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd q(m.cols(), p);
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < p; ++j) q(i, j) = gauss(rng);
  q = orth(m * q);
  for (int it = 0; it < 30; ++it) {
    q = orth(m.transpose() * q);
    q = orth(m * q);
  }
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.transpose() * m * q);
    LowRankFactor small = take_symmetric(es, r);
    LowRankFactor f;
    f.values = small.values;
    f.left = q * small.left;
    f.right = f.left;
    return f;
  }
  Eigen::MatrixXd b = q.transpose() * m;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  LowRankFactor f;
  f.values = svd.singularValues().head(r);
  f.left = q * svd.matrixU().leftCols(r);
  f.right = svd.matrixV().leftCols(r);
  return f;
}

}  // namespace

LowRankFactor best_rank_r(const Eigen::MatrixXd& m, int r) {
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  if (r < 1 || r > std::min(m.rows(), m.cols()))
    throw std::invalid_argument("rank out of range");
  const bool symmetric = m.rows() == m.cols() && m.isApprox(m.transpose(), 1e-12);
  if (std::max(m.rows(), m.cols()) > 4096) return iterative_rank_r(m, r, symmetric);
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return take_symmetric(es, r);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  LowRankFactor f;
  f.values = svd.singularValues().head(r);
  f.left = svd.matrixU().leftCols(r);
  f.right = svd.matrixV().leftCols(r);
  return f;
}

Eigen::MatrixXd load_dense_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw std::runtime_error("bad matrix header in " + path);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) throw std::runtime_error("truncated matrix in " + path);
  return m;
}

void save_dense_matrix(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << m.rows() << ' ' << m.cols() << '\n';
  out.precision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

}  // namespace mfgm
