#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace tnbsd {

using Complex = std::complex<double>;

/// All eigenvalues of a dense real matrix (LAPACK dgeev with balancing).
std::vector<Complex> dense_eigenvalues(const Eigen::MatrixXd& m);

/// y = A x for a square real operator.
using LinearOperator =
    std::function<void(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y)>;

struct KrylovOptions {
  /// Number of wanted eigenvalues.
  std::size_t nev = 1;
  /// Maximum Krylov subspace dimension; 0 picks the default for nev.
  std::size_t subspace = 0;
  /// Relative Ritz residual bound: |r| <= tol * max(|theta|, eps^(2/3)).
  double tol = 1e-8;
  int max_restarts = 1000;
  /// Seed of the (deterministic) starting vector.
  std::uint64_t seed = 0x6e627364;
};

struct KrylovResult {
  /// The nev largest-magnitude Ritz values, in descending magnitude.
  std::vector<Complex> eigenvalues;
  int restarts = 0;
  std::size_t matvecs = 0;
  /// Largest relative residual among the returned values.
  double max_residual = 0.0;
};

/// Default subspace dimension for nev wanted eigenvalues.
std::size_t default_subspace(std::size_t nev);

/// Largest-magnitude eigenvalues of a real nonsymmetric operator by the
/// Krylov–Schur restarted Arnoldi method. Throws SolverError (carrying the
/// achieved residual) if the restart cap is reached first.
KrylovResult krylov_schur_largest(const LinearOperator& op, std::size_t dim,
                                  const KrylovOptions& options);

KrylovResult krylov_schur_largest(const Eigen::SparseMatrix<double, Eigen::RowMajor>& m,
                                  const KrylovOptions& options);

}  // namespace tnbsd
