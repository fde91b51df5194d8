#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfgm/graph.hpp"
#include "mfgm/rng.hpp"

#include <sstream>

using namespace mfgm;

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng, bool directed = false) {
  Graph g(n, directed);
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u + 1; v < n; ++v)
      if (u != v && canonical_uniform(rng) < p) g.add_edge(u, v);
  return g;
}

Injection random_injection(int n_c, int n, std::mt19937_64& rng) {
  auto perm = random_permutation(n, rng);
  Injection s{n, std::vector<int>(perm.begin(), perm.begin() + n_c)};
  return s;
}

}  // namespace

TEST_CASE("graph construction and lookup") {
  Graph g = Graph::from_edges(4, {{0, 1}, {2, 1}});
  CHECK(g.order() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(1, 1));
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);

  Graph d(3, /*directed=*/true);
  d.add_edge(0, 1);
  CHECK(d.has_edge(0, 1));
  CHECK_FALSE(d.has_edge(1, 0));
}

TEST_CASE("dense and sparse agree") {
  auto rng = make_stream(11, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Graph g = random_graph(7, 0.4, rng, rep % 2 == 1);
    Eigen::MatrixXd d = g.dense();
    CHECK(d.isApprox(Eigen::MatrixXd(g.sparse())));
    CHECK(d.diagonal().isZero());
    if (!g.directed()) CHECK(d.isApprox(d.transpose()));
    for (int u = 0; u < 7; ++u)
      for (int v = 0; v < 7; ++v)
        CHECK(d(u, v) == (g.has_edge(u, v) ? 1.0 : 0.0));
  }
}

TEST_CASE("induced subgraph relabels in list order") {
  Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}, {0, 4}});
  Graph sub = g.induced_subgraph({4, 0, 1});
  CHECK(sub.order() == 3);
  CHECK(sub.has_edge(0, 1));  // old (4,0)
  CHECK(sub.has_edge(1, 2));  // old (0,1)
  CHECK_FALSE(sub.has_edge(0, 2));
}

TEST_CASE("relabeled moves every edge") {
  Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
  Graph h = g.relabeled({3, 2, 1, 0});
  CHECK(h.has_edge(3, 2));
  CHECK(h.has_edge(1, 0));
  CHECK(h.edge_count() == 2);
}

TEST_CASE("edge list round trip") {
  auto rng = make_stream(12, 0);
  Graph g = random_graph(9, 0.3, rng);
  std::stringstream ss;
  write_edge_list(g, ss);
  Graph h = read_edge_list(ss);
  CHECK(h.order() == g.order());
  CHECK(h.directed() == g.directed());
  CHECK(h.dense().isApprox(g.dense()));
}

TEST_CASE("edge list accepts 1-indexed input") {
  std::stringstream ss("3 undirected 1-indexed\n1 2\n2 3\n");
  Graph g = read_edge_list(ss);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));

  std::stringstream bad("3 sideways\n");
  CHECK_THROWS_AS(read_edge_list(bad), std::runtime_error);
  std::stringstream empty("");
  CHECK_THROWS_AS(read_edge_list(empty), std::runtime_error);
}

TEST_CASE("compose_injection basics") {
  Injection s{3, {1, 2}};
  CHECK(compose_injection(s, {0, 1, 2}) == s);
  CHECK(compose_injection(s, {2, 0, 1}) == Injection{3, {0, 1}});
  CHECK_THROWS_AS(compose_injection(s, {0, 1}), std::invalid_argument);
}

TEST_CASE("compose_injection matches the dense matrix product") {
  auto rng = make_stream(13, 0);
  const int n = 6, n_c = 3;
  for (int rep = 0; rep < 20; ++rep) {
    Injection s = random_injection(n_c, n, rng);
    auto tau = random_permutation(n, rng);
    Injection c = compose_injection(s, tau);

    // P_sigma (n_c x n) times T (n x n) with T(i, tau(i)) = 1.
    Eigen::MatrixXd ps = Eigen::MatrixXd::Zero(n_c, n);
    for (int i = 0; i < n_c; ++i) ps(i, s(i)) = 1.0;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) t(i, tau[i]) = 1.0;
    Eigen::MatrixXd prod = ps * t;
    for (int i = 0; i < n_c; ++i) CHECK(prod(i, c(i)) == 1.0);
    CHECK(prod.sum() == doctest::Approx(n_c));
  }
}

TEST_CASE("compose with identity is the identity map") {
  auto rng = make_stream(14, 0);
  std::vector<int> id(10);
  for (int i = 0; i < 10; ++i) id[i] = i;
  for (int rep = 0; rep < 100; ++rep) {
    Injection s = random_injection(4, 10, rng);
    CHECK(compose_injection(s, id) == s);
  }
}

TEST_CASE("correct_matches") {
  Injection id = identity_injection(40, 100);
  CHECK(correct_matches(id, id) == 40);

  Injection shifted{100, std::vector<int>(40)};
  for (int i = 0; i < 40; ++i) shifted.map[i] = (i + 1) % 100;
  CHECK(correct_matches(shifted, id) == 0);

  Injection partial = id;
  for (int i = 7; i < 40; ++i) partial.map[i] = 99 - (i - 7);
  partial.check();
  CHECK(correct_matches(partial, id) == 7);
}

TEST_CASE("edge_errors basics") {
  auto rng = make_stream(15, 0);
  Graph b = random_graph(8, 0.5, rng);
  Injection s = random_injection(4, 8, rng);
  Graph a = b.induced_subgraph(s.map);
  CHECK(edge_errors(a, b, s) == 0);

  Graph one_edge = Graph::from_edges(2, {{0, 1}});
  Graph empty(5);
  CHECK(edge_errors(one_edge, empty, Injection{5, {1, 2}}) == 1);
}

TEST_CASE("edge_errors equals the symmetric difference count") {
  auto rng = make_stream(16, 0);
  for (int rep = 0; rep < 30; ++rep) {
    Graph a = random_graph(5, 0.5, rng);
    Graph b = random_graph(9, 0.4, rng);
    Injection s = random_injection(5, 9, rng);
    long expected = 0;
    for (int u = 0; u < 5; ++u)
      for (int v = u + 1; v < 5; ++v)
        if (a.has_edge(u, v) != b.has_edge(s(u), s(v))) ++expected;
    CHECK(edge_errors(a, b, s) == expected);
  }
}

TEST_CASE("edge_errors zero iff induced isomorphic (enumeration, n=8)") {
  auto rng = make_stream(17, 0);
  Graph b = random_graph(8, 0.5, rng);
  Graph a = b.induced_subgraph({2, 5, 0, 7});
  int zero_count = 0;
  std::vector<int> pick(4);
  for (pick[0] = 0; pick[0] < 8; ++pick[0])
    for (pick[1] = 0; pick[1] < 8; ++pick[1])
      for (pick[2] = 0; pick[2] < 8; ++pick[2])
        for (pick[3] = 0; pick[3] < 8; ++pick[3]) {
          Injection s{8, pick};
          if (!s.valid()) continue;
          bool iso = true;
          for (int u = 0; u < 4 && iso; ++u)
            for (int v = u + 1; v < 4 && iso; ++v)
              if (a.has_edge(u, v) != b.has_edge(s(u), s(v))) iso = false;
          CHECK((edge_errors(a, b, s) == 0) == iso);
          if (iso) ++zero_count;
        }
  CHECK(zero_count >= 1);  // the planted alignment is among them
}

TEST_CASE("directed edge errors, per direction vs per pair") {
  Graph a(2, true);
  a.add_edge(0, 1);
  Graph b(3, true);
  b.add_edge(1, 0);  // reversed relative to a under (0,1)
  Injection s{3, {0, 1}};
  CHECK(edge_errors(a, b, s, EdgeErrorMode::PerDirection) == 2);
  CHECK(edge_errors(a, b, s, EdgeErrorMode::PerPair) == 1);
}

TEST_CASE("transport plan from injection") {
  Injection s{5, {3, 0, 4}};
  TransportPlan p = TransportPlan::from_injection(s);
  p.check_valid();
  Injection back;
  CHECK(p.is_injection_indicator(&back));
  CHECK(back == s);
  CHECK(p.reconstruct().isApprox(p.rows));

  TransportPlan uniform;
  uniform.rows = Eigen::MatrixXd::Constant(2, 4, 0.25);
  uniform.check_valid();
  CHECK_FALSE(uniform.is_injection_indicator());

  TransportPlan bad;
  bad.rows = Eigen::MatrixXd::Constant(2, 4, 0.3);
  CHECK_THROWS_AS(bad.check_valid(), std::invalid_argument);
}

TEST_CASE("front relabeling and inverse") {
  auto perm = front_relabeling({4, 1}, 5);
  CHECK(perm == std::vector<int>{2, 1, 3, 4, 0});
  auto inv = inverse_permutation(perm);
  for (int i = 0; i < 5; ++i) CHECK(inv[perm[i]] == i);

  // relabeled graph puts the listed vertices first
  Graph g = Graph::from_edges(5, {{4, 1}, {0, 2}});
  Graph h = g.relabeled(perm);
  CHECK(h.has_edge(0, 1));
  CHECK(h.has_edge(2, 3));
}
