#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tnbsd/fingerprint.hpp"

namespace tnbsd {

/// Fine-tuning of the feature vector. sigma >= 1 scales real parts up and
/// imaginary parts down (triangle emphasis); eta >= 0 weights each
/// eigenvalue by |λ|^eta (degree-heterogeneity emphasis). The defaults are
/// the identity transform.
struct TuningParams {
  double sigma = 1.0;
  double eta = 0.0;

  /// Throws ArgumentError unless sigma >= 1 and eta >= 0.
  void validate() const;

  /// sigma = 11, eta = 0.6: the combined preset that separates the six
  /// random-graph families.
  static TuningParams cs1_tuned() { return {11.0, 0.6}; }
  /// Looks up a named preset ("none", "cs1-tuned").
  static TuningParams preset(const std::string& name);
};

/// (a_1..a_r, b_1..b_r) after tuning.
using FeatureVector = Eigen::VectorXd;

FeatureVector feature_vector(const Fingerprint& fp, const TuningParams& t = {});

/// Truncated non-backtracking spectral distance: Euclidean distance of the
/// tuned feature vectors. A pseudometric. Throws DimensionError if r differs.
double tnbsd(const Fingerprint& x, const Fingerprint& y, const TuningParams& t = {});

/// Symmetric matrix of pairwise distances with zero diagonal.
Eigen::MatrixXd distance_matrix(std::span<const Fingerprint> fps, const TuningParams& t = {});

/// CSV with a header row and a leading label column; 17 significant digits.
void write_distance_matrix_csv(std::ostream& out, const Eigen::MatrixXd& d,
                               std::span<const std::string> labels);

}  // namespace tnbsd
