#include "tnbsd/kpca.hpp"

#include <Eigen/Eigenvalues>

#include "tnbsd/errors.hpp"

namespace tnbsd {

void LabeledPointSet::validate() const {
  if (!labels.empty() && labels.size() != size()) {
    throw DimensionError("point set has " + std::to_string(size()) + " points but " +
                         std::to_string(labels.size()) + " labels");
  }
}

LabeledPointSet kpca_cosine(std::span<const Eigen::VectorXd> vectors, std::size_t dims) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (dims < 1) throw ArgumentError("kpca: dims must be >= 1");
  if (vectors.size() < dims + 1) {
    throw ArgumentError("kpca: need at least " + std::to_string(dims + 1) + " vectors for " +
                        std::to_string(dims) + " components, got " + std::to_string(vectors.size()));
  }
  const auto len = vectors[0].size();
  Eigen::MatrixXd unit(len, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (vectors[i].size() != len) {
      throw DimensionError("kpca: vector " + std::to_string(i) + " has length " +
                           std::to_string(vectors[i].size()) + ", expected " + std::to_string(len));
    }
    const double norm = vectors[i].norm();
    if (norm == 0.0) throw NumericError("kpca: vector " + std::to_string(i) + " is zero; cosine undefined");
    unit.col(i) = vectors[i] / norm;
  }
  Eigen::MatrixXd k = unit.transpose() * unit;
  // Double centering: K <- H K H with H = I - 11ᵀ/n.
  const Eigen::VectorXd row_mean = k.rowwise().mean();
  const double all_mean = row_mean.mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) += all_mean - row_mean[i] - row_mean[j];
  }
  k = 0.5 * (k + k.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
  if (eig.info() != Eigen::Success) throw NumericError("kpca: eigendecomposition failed");
  LabeledPointSet out;
  const auto d = static_cast<Eigen::Index>(dims);
  out.points.setZero(n, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    // Eigenvalues come in ascending order.
    const Eigen::Index src = n - 1 - c;
    const double lambda = eig.eigenvalues()[src];
    if (!(lambda > 0.0)) continue;
    Eigen::VectorXd u = eig.eigenvectors().col(src);
    Eigen::Index arg = 0;
    u.cwiseAbs().maxCoeff(&arg);
    if (u[arg] < 0.0) u = -u;
    out.points.col(c) = std::sqrt(lambda) * u;
  }
  // Identical inputs have identical kernel rows, so their exact embeddings
  // coincide; copy rather than let eigensolver rounding separate them.
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (unit.col(i) == unit.col(j)) {
        out.points.row(j) = out.points.row(i);
        break;
      }
    }
  }
  return out;
}

}  // namespace tnbsd
