#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tnbsd/eigensolver.hpp"
#include "tnbsd/errors.hpp"
#include "tnbsd/fingerprint.hpp"
#include "tnbsd/nb_matrix.hpp"

namespace tnbsd {
namespace {

using C = std::complex<double>;

std::vector<C> top_by_magnitude(std::vector<C> v, std::size_t k) {
  std::sort(v.begin(), v.end(), [](C a, C b) { return std::abs(a) > std::abs(b); });
  v.resize(k);
  return v;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> random_sparse(int n, double density, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(density);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (keep(eng)) t.emplace_back(i, j, u(eng));
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

TEST(DenseEigenvalues, AgreesWithEigen) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::MatrixXd m = Eigen::MatrixXd(random_sparse(60, 0.2, seed));
    EXPECT_LT(testing::multiset_distance(dense_eigenvalues(m), testing::eigen_oracle(m)), 1e-8);
  }
}

TEST(DenseEigenvalues, RejectsNonSquare) {
  EXPECT_THROW(dense_eigenvalues(Eigen::MatrixXd::Zero(2, 3)), DimensionError);
  EXPECT_TRUE(dense_eigenvalues(Eigen::MatrixXd(0, 0)).empty());
}

TEST(KrylovSchur, MatchesDenseOnRandomMatrices) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = random_sparse(400, 0.02, seed);
    KrylovOptions opt;
    opt.nev = 10;
    const auto res = krylov_schur_largest(m, opt);
    const auto expected = top_by_magnitude(dense_eigenvalues(Eigen::MatrixXd(m)), 10);
    ASSERT_EQ(res.eigenvalues.size(), 10u);
    EXPECT_LT(testing::multiset_distance(res.eigenvalues, expected), 1e-8) << "seed " << seed;
    EXPECT_LE(res.max_residual, opt.tol);
  }
}

TEST(KrylovSchur, MatchesDenseOnIharaMatrix) {
  const Graph g = testing::random_gnp(600, 10.0 / 600, 5);
  const auto m = build_ihara_matrix(g).to_eigen();
  KrylovOptions opt;
  opt.nev = 20;
  const auto res = krylov_schur_largest(m, opt);
  auto dense = dense_eigenvalues(Eigen::MatrixXd(m));
  sort_spectrum(dense);
  dense.resize(20);
  auto ours = res.eigenvalues;
  sort_spectrum(ours);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_LT(std::abs(ours[i] - dense[i]), 1e-6) << i;
}

TEST(KrylovSchur, OperatorOverloadIsDeterministic) {
  const auto m = random_sparse(300, 0.03, 9);
  const LinearOperator op = [&m](const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) {
    y.noalias() = m * x;
  };
  KrylovOptions opt;
  opt.nev = 6;
  const auto a = krylov_schur_largest(op, 300, opt);
  const auto b = krylov_schur_largest(op, 300, opt);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.matvecs, b.matvecs);
}

TEST(KrylovSchur, InvariantSubspaceBreakdown) {
  // Diagonal matrix: the Krylov space of a start vector can be exhausted.
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(100, 100);
  for (int i = 0; i < 100; ++i) m.insert(i, i) = (i % 5) + 1.0;
  KrylovOptions opt;
  opt.nev = 3;
  const auto res = krylov_schur_largest(m, opt);
  for (const auto& z : res.eigenvalues) EXPECT_NEAR(std::abs(z), 5.0, 1e-8);
}

TEST(KrylovSchur, RestartCapRaisesSolverErrorWithResidual) {
  const auto m = random_sparse(500, 0.02, 3);
  KrylovOptions opt;
  opt.nev = 40;
  opt.subspace = 45;
  opt.max_restarts = 1;
  opt.tol = 1e-14;
  try {
    krylov_schur_largest(m, opt);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ExitCode::kSolver);
    EXPECT_GT(e.residual(), opt.tol);
    EXPECT_EQ(e.restarts(), 1);
  }
}

TEST(KrylovSchur, RejectsTooSmallSubspace) {
  const auto m = random_sparse(50, 0.1, 1);
  KrylovOptions opt;
  opt.nev = 10;
  opt.subspace = 11;
  EXPECT_THROW(krylov_schur_largest(m, opt), ArgumentError);
}

TEST(DefaultSubspace, AtLeastFortyAndGrowsWithNev) {
  EXPECT_EQ(default_subspace(1), 40u);
  EXPECT_GE(default_subspace(54), 2 * 54u + 1);
}

}  // namespace
}  // namespace tnbsd
