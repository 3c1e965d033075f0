#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tnbsd {

/// Embedded points (one per row) with optional class labels.
struct LabeledPointSet {
  Eigen::MatrixXd points;
  std::vector<std::string> labels;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(points.cols()); }
  /// Throws DimensionError if labels are present but misaligned.
  void validate() const;
};

/// Kernel PCA with the cosine-similarity kernel. Row i of the result holds
/// the projection of vectors[i] onto the top `dims` components of the
/// double-centered kernel, i.e. sqrt(λ_j) u_j[i]. Each component's sign is
/// chosen so its largest-magnitude coordinate is positive. Components with
/// non-positive eigenvalue project to zero.
/// Requires at least dims+1 vectors of equal length, none of them zero.
LabeledPointSet kpca_cosine(std::span<const Eigen::VectorXd> vectors, std::size_t dims);

}  // namespace tnbsd
