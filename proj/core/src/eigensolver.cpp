#include "tnbsd/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "tnbsd/errors.hpp"
#include "tnbsd/rng.hpp"

namespace tnbsd {

std::vector<Complex> dense_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionError("dense_eigenvalues: matrix is not square");
  const auto n = static_cast<lapack_int>(m.rows());
  if (n == 0) return {};
  Eigen::MatrixXd a = m;
  std::vector<double> wr(n), wi(n);
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(),
                                        wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw NumericError("dgeev failed to converge (info=" + std::to_string(info) + ")");
  }
  std::vector<Complex> out(n);
  for (lapack_int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
  return out;
}

std::size_t default_subspace(std::size_t nev) { return std::max<std::size_t>(4 * nev, 40); }

namespace {

const double kEps = std::numeric_limits<double>::epsilon();
const double kEps23 = std::pow(kEps, 2.0 / 3.0);
const double kDgks = 1.0 / std::sqrt(2.0);

// Schur decomposition S = Q T Qᵀ of the projected matrix plus the Ritz
// values on T's (quasi-)diagonal.
struct Schur {
  Eigen::MatrixXd t;
  Eigen::MatrixXd q;
  std::vector<double> wr;
  std::vector<double> wi;
};

Schur real_schur(const Eigen::MatrixXd& s) {
  const auto n = static_cast<lapack_int>(s.rows());
  Schur out{s, Eigen::MatrixXd(n, n), std::vector<double>(n), std::vector<double>(n)};
  lapack_int sdim = 0;
  const lapack_int info =
      LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, out.t.data(), n, &sdim,
                    out.wr.data(), out.wi.data(), out.q.data(), n);
  if (info != 0) throw NumericError("dgees failed (info=" + std::to_string(info) + ")");
  return out;
}

// Relative residual |bᵀy| / (|y| max(|θ|, eps^(2/3))) for every Ritz pair.
std::vector<double> ritz_residuals(const Schur& schur, const Eigen::RowVectorXd& b) {
  const auto n = static_cast<lapack_int>(schur.t.rows());
  Eigen::MatrixXd t = schur.t;
  Eigen::MatrixXd vr = schur.q;
  lapack_int used = 0;
  const lapack_int info = LAPACKE_dtrevc(LAPACK_COL_MAJOR, 'R', 'B', nullptr, n, t.data(), n,
                                         nullptr, 1, vr.data(), n, n, &used);
  if (info != 0) throw NumericError("dtrevc failed (info=" + std::to_string(info) + ")");

  std::vector<double> res(n);
  for (lapack_int j = 0; j < n; ++j) {
    const double theta = std::hypot(schur.wr[j], schur.wi[j]);
    const double scale = std::max(theta, kEps23);
    if (schur.wi[j] == 0.0) {
      const double norm = vr.col(j).norm();
      res[j] = std::abs(b.dot(vr.col(j))) / (norm * scale);
    } else {
      // Columns j, j+1 hold the real and imaginary parts of the eigenvector
      // for wr[j] + i wi[j]; its conjugate shares the residual.
      const double re = b.dot(vr.col(j));
      const double im = b.dot(vr.col(j + 1));
      const double norm = std::sqrt(vr.col(j).squaredNorm() + vr.col(j + 1).squaredNorm());
      res[j] = res[j + 1] = std::hypot(re, im) / (norm * scale);
      ++j;
    }
  }
  // The Krylov estimate keeps shrinking past what rounding in the basis
  // allows; below eps it no longer measures anything.
  for (auto& r : res) r = std::max(r, std::numeric_limits<double>::epsilon());
  return res;
}

class KrylovSchur {
 public:
  KrylovSchur(const LinearOperator& op, std::size_t dim, const KrylovOptions& opt)
      : op_(op),
        n_(static_cast<Eigen::Index>(dim)),
        nev_(static_cast<Eigen::Index>(opt.nev)),
        m_(static_cast<Eigen::Index>(opt.subspace == 0 ? default_subspace(opt.nev) : opt.subspace)),
        opt_(opt),
        rng_(opt.seed, dim) {
    m_ = std::min(m_, n_);
    if (nev_ < 1) throw ArgumentError("krylov: nev must be >= 1");
    if (nev_ + 2 > m_) {
      throw ArgumentError("krylov: subspace dimension " + std::to_string(m_) +
                          " too small for " + std::to_string(nev_) +
                          " eigenvalues of a dimension-" + std::to_string(n_) + " operator");
    }
    v_.setZero(n_, m_ + 1);
    h_.setZero(m_ + 1, m_);
    w_.resize(n_);
  }

  KrylovResult run() {
    KrylovResult result;
    Eigen::VectorXd start(n_);
    for (Eigen::Index i = 0; i < n_; ++i) start[i] = rng_.uniform() - 0.5;
    v_.col(0) = start / start.norm();
    Eigen::Index kept = 0;
    double worst = std::numeric_limits<double>::infinity();

    for (int restart = 0;; ++restart) {
      expand(kept);
      const Eigen::MatrixXd s = h_.topRows(m_);
      const Eigen::RowVectorXd b = h_.row(m_);
      Schur schur = real_schur(s);
      const std::vector<double> res = ritz_residuals(schur, b);

      std::vector<Eigen::Index> order(m_);
      std::iota(order.begin(), order.end(), Eigen::Index{0});
      std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return std::hypot(schur.wr[x], schur.wi[x]) > std::hypot(schur.wr[y], schur.wi[y]);
      });

      Eigen::Index nconv = 0;
      worst = 0.0;
      for (Eigen::Index i = 0; i < nev_; ++i) {
        const auto j = order[i];
        worst = std::max(worst, res[j]);
        if (res[j] <= opt_.tol) ++nconv;
      }
      if (nconv == nev_) {
        result.restarts = restart;
        result.matvecs = matvecs_;
        result.max_residual = worst;
        for (Eigen::Index i = 0; i < nev_; ++i) {
          result.eigenvalues.emplace_back(schur.wr[order[i]], schur.wi[order[i]]);
        }
        return result;
      }
      if (restart >= opt_.max_restarts) {
        throw SolverError("Krylov-Schur did not converge after " + std::to_string(restart) +
                              " restarts: " + std::to_string(nconv) + " of " +
                              std::to_string(nev_) + " eigenvalues converged, worst relative "
                              "residual " + std::to_string(worst),
                          worst, restart);
      }

      // Keep the wanted Ritz values plus some converged extras, leaving room
      // for a conjugate pair straddling the boundary.
      Eigen::Index keep = nev_ + std::min(nconv, (m_ - nev_) / 2);
      keep = std::min(keep, m_ - 2);
      std::vector<lapack_logical> select(m_, 0);
      for (Eigen::Index i = 0; i < keep; ++i) select[order[i]] = 1;
      kept = truncate(schur, select, b);
    }
  }

 private:
  // Reorders the Schur form so selected Ritz values lead, then contracts the
  // Krylov–Schur relation A V = V S + v bᵀ to the selected part.
  Eigen::Index truncate(Schur& schur, std::vector<lapack_logical>& select,
                        const Eigen::RowVectorXd& b) {
    const auto n = static_cast<lapack_int>(m_);
    lapack_int keep = 0;
    double s = 0.0;
    double sep = 0.0;
    // The high-level LAPACKE wrapper passes a null iwork for job 'N', which
    // dtrsen still writes to; supply workspace explicitly.
    std::vector<double> work(std::max<lapack_int>(1, n));
    lapack_int iwork = 0;
    const lapack_int info = LAPACKE_dtrsen_work(
        LAPACK_COL_MAJOR, 'N', 'V', select.data(), n, schur.t.data(), n, schur.q.data(), n,
        schur.wr.data(), schur.wi.data(), &keep, &s, &sep, work.data(),
        static_cast<lapack_int>(work.size()), &iwork, 1);
    if (info != 0) throw NumericError("dtrsen failed (info=" + std::to_string(info) + ")");

    const Eigen::Index k = keep;
    const Eigen::MatrixXd qk = schur.q.leftCols(k);
    const Eigen::MatrixXd vk = v_.leftCols(m_) * qk;
    v_.col(k) = v_.col(m_);
    v_.leftCols(k) = vk;
    h_.setZero();
    h_.topLeftCorner(k, k) = schur.t.topLeftCorner(k, k);
    h_.row(k).head(k) = b * qk;
    return k;
  }

  // Arnoldi steps from column `from` until the basis has m_ + 1 vectors.
  void expand(Eigen::Index from) {
    for (Eigen::Index j = from; j < m_; ++j) {
      op_(v_.col(j), w_);
      ++matvecs_;
      const auto basis = v_.leftCols(j + 1);
      const double before = w_.norm();
      Eigen::VectorXd h = basis.transpose() * w_;
      w_.noalias() -= basis * h;
      double beta = w_.norm();
      // DGKS: a second pass only when the first cancelled most of w.
      if (beta < kDgks * before) {
        const Eigen::VectorXd h2 = basis.transpose() * w_;
        w_.noalias() -= basis * h2;
        h += h2;
        beta = w_.norm();
      }
      h_.col(j).head(j + 1) = h;
      if (beta <= kEps * std::max(1.0, h.norm()) * std::sqrt(static_cast<double>(n_))) {
        // Invariant subspace found; continue with a fresh orthogonal direction.
        h_(j + 1, j) = 0.0;
        random_orthogonal(j + 1);
      } else {
        h_(j + 1, j) = beta;
        v_.col(j + 1) = w_ / beta;
      }
    }
  }

  void random_orthogonal(Eigen::Index col) {
    Eigen::VectorXd r(n_);
    for (int attempt = 0; attempt < 8; ++attempt) {
      for (Eigen::Index i = 0; i < n_; ++i) r[i] = rng_.uniform() - 0.5;
      const auto basis = v_.leftCols(col);
      for (int pass = 0; pass < 2; ++pass) r -= basis * (basis.transpose() * r);
      const double norm = r.norm();
      if (norm > 1e-8) {
        v_.col(col) = r / norm;
        return;
      }
    }
    throw NumericError("krylov: unable to extend basis (operator dimension exhausted)");
  }

  const LinearOperator& op_;
  Eigen::Index n_;
  Eigen::Index nev_;
  Eigen::Index m_;
  KrylovOptions opt_;
  Rng rng_;
  Eigen::MatrixXd v_;
  Eigen::MatrixXd h_;
  Eigen::VectorXd w_;
  std::size_t matvecs_ = 0;
};

}  // namespace

KrylovResult krylov_schur_largest(const LinearOperator& op, std::size_t dim,
                                  const KrylovOptions& options) {
  KrylovSchur solver(op, dim, options);
  return solver.run();
}

KrylovResult krylov_schur_largest(const Eigen::SparseMatrix<double, Eigen::RowMajor>& m,
                                  const KrylovOptions& options) {
  if (m.rows() != m.cols()) throw DimensionError("krylov: matrix is not square");
  const LinearOperator op = [&m](const Eigen::Ref<const Eigen::VectorXd>& x,
                                 Eigen::Ref<Eigen::VectorXd> y) { y.noalias() = m * x; };
  return krylov_schur_largest(op, static_cast<std::size_t>(m.rows()), options);
}

}  // namespace tnbsd
