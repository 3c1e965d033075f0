#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "support.hpp"
#include "tnbsd/errors.hpp"
#include "tnbsd/fingerprint.hpp"
#include "tnbsd/generators.hpp"
#include "tnbsd/nb_matrix.hpp"

namespace tnbsd {
namespace {

using testing::complete;
using testing::cycle;
using testing::path;
using testing::star;
using C = std::complex<double>;

Eigen::MatrixXd dense(const SparseMatrixDesc& d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d.nrows, d.ncols);
  for (const auto& e : d.entries) m(e.row, e.col) += e.value;
  return m;
}

std::vector<C> repeat(std::initializer_list<std::pair<C, int>> items) {
  std::vector<C> v;
  for (const auto& [z, k] : items) v.insert(v.end(), k, z);
  return v;
}

// A mixed bag of small graphs, including disconnected and tree-like ones.
std::vector<Graph> mixed_graphs(int count, int max_n, std::uint64_t base) {
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = base + i;
    const int n = 5 + static_cast<int>(seed * 7 % (max_n - 4));
    switch (i % 4) {
      case 0: out.push_back(testing::random_gnp(n, 3.0 / n, seed)); break;
      case 1: out.push_back(testing::random_connected(n, n / 3, seed)); break;
      case 2: out.push_back(testing::core_with_trees(std::max(3, n / 2), n / 4, n / 2, seed).first); break;
      default: {
        ModelSpec s;
        s.model = static_cast<Model>(seed % 6);
        s.n = n;
        s.mean_degree = 4;
        s.seed = seed;
        out.push_back(generate(s));
      }
    }
  }
  return out;
}

TEST(NbMatrix, TriangleIsTwoDirectedThreeCycles) {
  const auto b = build_nb_matrix(complete(3));
  EXPECT_EQ(b.nrows, 6u);
  EXPECT_EQ(b.nnz(), 6u);
  const Eigen::MatrixXd m = dense(b);
  EXPECT_TRUE((m.rowwise().sum().array() == 1.0).all());
  EXPECT_TRUE((m.colwise().sum().array() == 1.0).all());
  EXPECT_TRUE((m * m * m).isIdentity());
  EXPECT_FALSE(m.isIdentity());
}

TEST(NbMatrix, SingleEdgeIsZero) {
  const auto b = build_nb_matrix(path(2));
  EXPECT_EQ(b.nrows, 2u);
  EXPECT_EQ(b.ncols, 2u);
  EXPECT_EQ(b.nnz(), 0u);
}

TEST(NbMatrix, EmptyGraph) {
  const auto b = build_nb_matrix(Graph{});
  EXPECT_EQ(b.nrows, 0u);
  EXPECT_EQ(b.nnz(), 0u);
}

TEST(NbMatrix, StarHasSixTransitions) {
  const Graph g = star(3);
  EXPECT_EQ(build_nb_matrix(g).nnz(), 6u);
  const auto dm = degree_moments(g);
  EXPECT_DOUBLE_EQ(g.num_nodes() * (dm.mean_k2 - dm.mean_k), 6.0);
}

TEST(NbMatrix, MatchesDefinitionEntrywise) {
  for (const Graph& g : mixed_graphs(40, 30, 100)) {
    const auto b = build_nb_matrix(g);
    EXPECT_EQ(dense(b), testing::brute_force_b(g));
    EXPECT_TRUE((dense(b).array() <= 1.0).all()) << "duplicate entries";
  }
}

TEST(NbMatrix, NnzIdentityExact) {
  for (const Graph& g : mixed_graphs(100, 200, 7)) {
    std::uint64_t sum_k2 = 0;
    std::uint64_t sum_k = 0;
    for (Vertex v = 0; v < g.num_nodes(); ++v) {
      sum_k2 += g.degree(v) * g.degree(v);
      sum_k += g.degree(v);
    }
    EXPECT_EQ(build_nb_matrix(g).nnz(), sum_k2 - sum_k);
  }
}

TEST(NbMatrix, OperationCountIsLinearInEdgesPlusSquaredDegrees) {
  for (const Graph& g : mixed_graphs(40, 300, 11)) {
    NbBuildStats stats;
    const auto b = build_nb_matrix(g, &stats);
    std::uint64_t sq = 0;
    for (Vertex v = 0; v < g.num_nodes(); ++v) sq += g.degree(v) * g.degree(v);
    EXPECT_GE(stats.operations, b.nnz());
    EXPECT_LE(stats.operations, 2 * g.num_edges() + sq);
  }
}

TEST(DirectedEdgeIndex, Bijection) {
  const Graph g = testing::random_connected(20, 10, 4);
  DirectedEdgeIndex idx(g);
  std::vector<char> seen(idx.size(), 0);
  for (Vertex u = 0; u < g.num_nodes(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      const auto i = idx.index(u, v);
      ASSERT_LT(i, idx.size());
      EXPECT_FALSE(seen[i]);
      seen[i] = 1;
      EXPECT_NE(i, idx.index(v, u));
      EXPECT_EQ(idx.arc(i), (Edge{u, v}));
    }
  }
}

TEST(IharaMatrix, Triangle) {
  const Eigen::MatrixXd m = dense(build_ihara_matrix(complete(3)));
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 6);
  expected.topLeftCorner(3, 3) = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  expected.topRightCorner(3, 3) = -Eigen::MatrixXd::Identity(3, 3);
  expected.bottomLeftCorner(3, 3) = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_EQ(m, expected);
}

TEST(IharaMatrix, SingleIsolatedNode) {
  const auto d = build_ihara_matrix(parse_edge_list("# n=1\n"));
  ASSERT_EQ(d.nrows, 2u);
  ASSERT_EQ(d.nnz(), 2u);
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 1, 1, 0;
  EXPECT_EQ(dense(d), expected);
}

TEST(IharaMatrix, MatchesDefinition) {
  for (const Graph& g : mixed_graphs(20, 30, 300)) {
    EXPECT_EQ(dense(build_ihara_matrix(g)), testing::brute_force_ihara(g));
  }
}

TEST(IharaMatrix, CycleSpectrum) {
  const auto eigs = full_spectrum_dense(build_ihara_matrix(cycle(4)));
  const auto expected = repeat({{C(1, 0), 2}, {C(-1, 0), 2}, {C(0, 1), 2}, {C(0, -1), 2}});
  EXPECT_LT(testing::multiset_distance(eigs, expected), 1e-6);
}

TEST(FullSpectrumDense, TriangleB) {
  const C w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const auto expected = repeat({{C(1, 0), 2}, {w, 2}, {std::conj(w), 2}});
  EXPECT_LT(testing::multiset_distance(full_spectrum_dense(build_nb_matrix(complete(3))), expected), 1e-9);
}

TEST(FullSpectrumDense, TreeBIsNilpotent) {
  const auto eigs = full_spectrum_dense(build_nb_matrix(path(3)));
  ASSERT_EQ(eigs.size(), 4u);
  for (const auto& z : eigs) EXPECT_LT(std::abs(z), 1e-8);
}

TEST(FullSpectrumDense, K4B) {
  // Regular graph: λ² - μλ + (k-1) = 0 over adjacency eigenvalues {3,-1,-1,-1},
  // plus ±1 with multiplicity m - n = 2.
  const C z(-0.5, std::sqrt(7.0) / 2.0);
  const auto expected =
      repeat({{C(2, 0), 1}, {C(1, 0), 1}, {z, 3}, {std::conj(z), 3}, {C(1, 0), 2}, {C(-1, 0), 2}});
  const auto eigs = full_spectrum_dense(build_nb_matrix(complete(4)));
  EXPECT_LT(testing::multiset_distance(eigs, expected), 1e-6);
  EXPECT_LT(testing::multiset_distance(eigs, testing::eigen_oracle(testing::brute_force_b(complete(4)))), 1e-6);
}

TEST(FullSpectrumDense, RefusesAboveThreshold) {
  const auto d = build_nb_matrix(complete(8));  // 56×56
  EXPECT_THROW(full_spectrum_dense(d, 50), DimensionError);
  EXPECT_NO_THROW(full_spectrum_dense(d, 56));
}

TEST(FullSpectrumDense, ResidualBound) {
  // Each returned λ must make M - λI numerically singular.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = testing::random_connected(15, 8, seed);
    const auto d = build_nb_matrix(g);
    const Eigen::MatrixXd m = dense(d);
    const double norm = m.operatorNorm();
    const Eigen::MatrixXcd mc = m.cast<C>();
    for (const auto& z : full_spectrum_dense(d)) {
      const Eigen::MatrixXcd shifted = mc - z * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
      EXPECT_LE(svd.singularValues().minCoeff(), 1e-8 * norm) << "seed " << seed << " λ=" << z;
    }
  }
}

TEST(FullSpectrumDense, AgreesWithIndependentSolver) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = testing::random_connected(20, 12, seed);
    const auto ours = full_spectrum_dense(build_ihara_matrix(g));
    const auto oracle = testing::eigen_oracle(testing::brute_force_ihara(g));
    EXPECT_LT(testing::multiset_distance(testing::cluster_means(ours), testing::cluster_means(oracle)), 1e-6);
  }
}

TEST(Spectrum, ConjugationClosure) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_connected(18, 10, seed);
    const auto eigs = full_spectrum_dense(build_nb_matrix(g));
    std::vector<C> conj;
    for (const auto& z : eigs) conj.push_back(std::conj(z));
    EXPECT_LT(testing::multiset_distance(eigs, conj), 1e-8);
  }
}

TEST(Spectrum, IharaBass) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_connected(12 + seed % 10, 6 + seed % 8, seed);
    ASSERT_GE(g.num_edges(), g.num_nodes());
    const std::size_t extra = g.num_edges() - g.num_nodes();
    auto rhs = full_spectrum_dense(build_ihara_matrix(g));
    rhs.insert(rhs.end(), extra, C(1, 0));
    rhs.insert(rhs.end(), extra, C(-1, 0));
    EXPECT_LT(testing::multiset_distance(testing::cluster_means(full_spectrum_dense(build_nb_matrix(g))),
                                        testing::cluster_means(rhs)),
              1e-6);
  }
}

TEST(NbCycleCount, Examples) {
  EXPECT_EQ(nb_cycle_count(complete(3), 3), 6u);
  EXPECT_EQ(nb_cycle_count(cycle(4), 3), 0u);
  EXPECT_EQ(nb_cycle_count(cycle(4), 4), 8u);
  EXPECT_EQ(nb_cycle_count(path(4), 5), 0u);
}

TEST(NbCycleCount, RejectsNonPositiveLength) {
  EXPECT_THROW(nb_cycle_count(complete(3), 0), ArgumentError);
  EXPECT_THROW(nb_cycle_count(complete(3), -2), ArgumentError);
}

TEST(NbCycleCount, MatchesDenseMatrixPower) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = testing::random_connected(10, 6, seed);
    const Eigen::MatrixXd b = testing::brute_force_b(g);
    Eigen::MatrixXd p = b;
    for (int k = 1; k <= 6; ++k) {
      EXPECT_EQ(static_cast<double>(nb_cycle_count(g, k)), p.trace()) << "k=" << k;
      p = p * b;
    }
  }
}

TEST(NbCycleCount, TraceIdentity) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = testing::random_connected(20, 15, seed);
    ASSERT_LE(2 * g.num_edges(), 200u);
    const auto eigs = full_spectrum_dense(build_nb_matrix(g));
    for (int k = 1; k <= 6; ++k) {
      C s(0, 0);
      for (const auto& z : eigs) s += std::pow(z, k);
      const double count = static_cast<double>(nb_cycle_count(g, k));
      EXPECT_LE(std::abs(s - count), 1e-6 * std::max(1.0, count)) << "seed " << seed << " k=" << k;
    }
  }
}

TEST(TriangleCountSpectral, Examples) {
  EXPECT_NEAR(triangle_count_spectral(full_spectrum_dense(build_nb_matrix(complete(3)))), 1.0, 1e-9);
  EXPECT_NEAR(triangle_count_spectral(full_spectrum_dense(build_nb_matrix(cycle(4)))), 0.0, 1e-9);
  EXPECT_NEAR(triangle_count_spectral(full_spectrum_dense(build_nb_matrix(complete(4)))), 4.0, 1e-9);
}

TEST(TriangleCountSpectral, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = testing::random_gnp(20, 0.25, seed);
    const double t = triangle_count_spectral(full_spectrum_dense(build_nb_matrix(g)));
    EXPECT_NEAR(t, static_cast<double>(testing::brute_force_triangles(g)), 1e-6);
  }
}

TEST(Spectrum, ZeroMultiplicityCountsTreeEdges) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto [g, tree_edges] = testing::core_with_trees(6, 3, 8, seed);
    std::size_t zeros = 0;
    for (const auto& z : full_spectrum_dense(build_nb_matrix(g))) zeros += std::abs(z) < 1e-8 ? 1 : 0;
    // B is indexed by directed edges: each undirected tree edge contributes
    // two arcs, both in the nilpotent part.
    EXPECT_EQ(zeros, 2 * tree_edges) << "seed " << seed;
    EXPECT_EQ(zeros, 2 * (g.num_edges() - shave(g).num_edges())) << "seed " << seed;
  }
}

}  // namespace
}  // namespace tnbsd
