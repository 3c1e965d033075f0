#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace tnbsd {

struct GmmOptions {
  std::size_t k = 6;
  std::size_t restarts = 10;
  std::size_t max_iterations = 500;
  /// Stop when the total log-likelihood improves by less than this.
  double tolerance = 1e-8;
  /// Added to a covariance diagonal that is singular.
  double regularization = 1e-6;
  std::uint64_t seed = 0;
};

struct GmmResult {
  std::vector<int> assignments;
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;
  double log_likelihood = 0.0;
  std::size_t iterations = 0;
  /// Total log-likelihood after each E-step of the winning restart.
  std::vector<double> trace;
  /// Index of the winning restart.
  std::size_t restart = 0;
  /// Whether any covariance of the winning run needed regularization.
  bool regularized = false;
};

/// Full-covariance Gaussian mixture fitted by EM on the rows of `points`.
/// Means are seeded by k-means++; the best restart by log-likelihood wins.
/// Assignments are the argmax responsibility. Throws ArgumentError if there
/// are fewer points than components, NumericError on a degenerate fit.
GmmResult gmm_em(const Eigen::MatrixXd& points, const GmmOptions& opt);

/// Fraction of points whose label is the majority label of their cluster.
double purity(std::span<const int> assignments, std::span<const std::string> labels);

}  // namespace tnbsd
