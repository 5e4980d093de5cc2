#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <sstream>

#include "suballoc/errors.hpp"
#include "suballoc/graph.hpp"

using namespace suballoc;

TEST_CASE("directed circle structure") {
  Digraph g = gen_directed_circle(3, 1.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(g.weights(i, (i + 2) % 3) == 1.0);
  }
  Laplacian lap = laplacian(g);
  CHECK((lap.matrix * Eigen::VectorXd::Ones(3)).cwiseAbs().maxCoeff() == 0.0);

  Digraph g2 = gen_directed_circle(2, 1.0);
  Eigen::MatrixXd expected(2, 2);
  expected << 1, -1, -1, 1;
  CHECK((laplacian(g2).matrix - expected).cwiseAbs().maxCoeff() == 0.0);

  DegreeStats st = degree_stats(gen_directed_circle(10, 1.0));
  CHECK(st.mean == 2.0);
  CHECK(st.max == 2.0);

  CHECK_THROWS_AS(gen_directed_circle(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gen_directed_circle(3, 0.0), std::invalid_argument);
}

TEST_CASE("complete graph degrees") {
  DegreeStats st10 = degree_stats(gen_complete(10, 1.0));
  CHECK(st10.mean == 18.0);
  CHECK(st10.max == 18.0);
  CHECK(degree_stats(gen_complete(100, 1.0)).max == 198.0);
  CHECK(degree_stats(gen_complete(50, 1.0)).mean == 98.0);

  Eigen::MatrixXd expected(2, 2);
  expected << 0.5, -0.5, -0.5, 0.5;
  CHECK((laplacian(gen_complete(2, 0.5)).matrix - expected)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK_THROWS_AS(gen_complete(1, 1.0), std::invalid_argument);
}

TEST_CASE("random balanced digraph") {
  Digraph g2 = gen_random_balanced(2, 1.0, 7);
  CHECK(g2.weights(0, 1) > 0.0);
  CHECK(g2.weights(1, 0) > 0.0);
  CHECK(g2.is_weight_balanced());

  Digraph g = gen_random_balanced(10, 0.5, 123);
  CHECK(g.is_weight_balanced());
  CHECK(g.is_strongly_connected());
  CHECK_NOTHROW(g.validate());

  // Same seed, same graph.
  Digraph g_again = gen_random_balanced(10, 0.5, 123);
  CHECK((g.weights - g_again.weights).cwiseAbs().maxCoeff() == 0.0);

  // Dense random digraph: mean degree well above the circle but below
  // the complete graph at n = 50.
  DegreeStats st = degree_stats(gen_random_balanced(50, 0.5, 99));
  CHECK(st.mean > 4.8);
  CHECK(st.mean < 98.0);

  CHECK_THROWS_AS(gen_random_balanced(10, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_balanced(10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("laplacian and spectral norm") {
  Laplacian l2 = laplacian(gen_directed_circle(2, 1.0));
  CHECK(l2.spectral_norm == doctest::Approx(2.0).epsilon(1e-10));

  Laplacian l3 = laplacian(gen_directed_circle(3, 1.0));
  CHECK(l3.matrix.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(l3.matrix.colwise().sum().cwiseAbs().maxCoeff() <= 1e-15);

  Laplacian lr = laplacian(gen_random_balanced(10, 0.6, 5));
  CHECK((Eigen::RowVectorXd::Ones(10) * lr.matrix).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("normalize_laplacian") {
  Digraph g = normalize_laplacian(gen_directed_circle(2, 1.0));
  CHECK(g.weights(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(laplacian(g).spectral_norm == doctest::Approx(1.0).epsilon(1e-9));

  Digraph gc = normalize_laplacian(gen_complete(10, 1.0));
  CHECK(laplacian(gc).spectral_norm == doctest::Approx(1.0).epsilon(1e-9));

  Digraph gcirc = normalize_laplacian(gen_directed_circle(10, 1.0));
  CHECK(gcirc.is_weight_balanced());

  // Idempotent up to 1e-9.
  Digraph twice = normalize_laplacian(gcirc);
  CHECK((twice.weights - gcirc.weights).cwiseAbs().maxCoeff() <= 1e-9);

  Digraph empty;
  empty.weights = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(normalize_laplacian(empty), DegenerateGraphError);
}

TEST_CASE("generated graph invariants") {
  std::vector<Digraph> graphs;
  graphs.push_back(gen_directed_circle(7, 0.3));
  graphs.push_back(gen_complete(12, 2.0));
  for (std::uint64_t s = 0; s < 6; ++s)
    graphs.push_back(gen_random_balanced(5 + 7 * static_cast<int>(s),
                                         0.3 + 0.1 * s, s));
  for (const auto& g : graphs) {
    CAPTURE(g.n());
    Eigen::VectorXd row = g.weights.rowwise().sum();
    Eigen::VectorXd col = g.weights.colwise().sum();
    CHECK((row - col).cwiseAbs().maxCoeff() <= 1e-12);
    Laplacian lap = laplacian(g);
    int n = g.n();
    CHECK((lap.matrix * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK((Eigen::RowVectorXd::Ones(n) * lap.matrix).cwiseAbs().maxCoeff() <=
          1e-12);
    Eigen::MatrixXd sym = lap.matrix + lap.matrix.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    CHECK(es.eigenvalues()(0) >= -1e-10);
    CHECK(std::abs(es.eigenvalues()(0)) <= 1e-8);
    CHECK(es.eigenvalues()(1) > 1e-6);  // zero is simple
  }
}

TEST_CASE("in_neighbors and edge list") {
  Digraph g = gen_directed_circle(4, 1.0);
  auto nbrs = g.in_neighbors();
  REQUIRE(nbrs.size() == 4);
  CHECK(nbrs[0] == std::vector<int>{3});
  CHECK(nbrs[2] == std::vector<int>{1});

  std::ostringstream os;
  write_edge_list(g, os);
  CHECK(os.str() == "3 0 1\n0 1 1\n1 2 1\n2 3 1\n");
}
