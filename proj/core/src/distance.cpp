#include "tnbsd/distance.hpp"

#include <cmath>
#include <ostream>

#include "tnbsd/errors.hpp"

namespace tnbsd {

void TuningParams::validate() const {
  if (!(sigma >= 1.0)) throw ArgumentError("sigma must be >= 1");
  if (!(eta >= 0.0)) throw ArgumentError("eta must be >= 0");
}

TuningParams TuningParams::preset(const std::string& name) {
  if (name == "none" || name == "raw") return {};
  if (name == "cs1-tuned") return cs1_tuned();
  throw ArgumentError("unknown tuning preset '" + name + "'");
}

FeatureVector feature_vector(const Fingerprint& fp, const TuningParams& t) {
  t.validate();
  const auto r = static_cast<Eigen::Index>(fp.r());
  FeatureVector v(2 * r);
  for (Eigen::Index k = 0; k < r; ++k) {
    const Complex z = fp.eigs[static_cast<std::size_t>(k)];
    // std::pow(0, 0) == 1, so padded zeros keep weight 1 when eta == 0.
    const double w = t.eta == 0.0 ? 1.0 : std::pow(std::abs(z), t.eta);
    v[k] = z.real() * t.sigma * w;
    v[r + k] = z.imag() * w / t.sigma;
  }
  return v;
}

double tnbsd(const Fingerprint& x, const Fingerprint& y, const TuningParams& t) {
  if (x.r() != y.r()) {
    throw DimensionError("fingerprint lengths differ: r=" + std::to_string(x.r()) + " vs r=" +
                         std::to_string(y.r()));
  }
  return (feature_vector(x, t) - feature_vector(y, t)).norm();
}

Eigen::MatrixXd distance_matrix(std::span<const Fingerprint> fps, const TuningParams& t) {
  const auto n = static_cast<Eigen::Index>(fps.size());
  for (const auto& fp : fps) {
    if (fp.r() != fps.front().r()) throw DimensionError("distance_matrix: fingerprints have mixed r");
  }
  std::vector<FeatureVector> features;
  features.reserve(fps.size());
  for (const auto& fp : fps) features.push_back(feature_vector(fp, t));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (features[i] - features[j]).norm();
    }
  }
  return d;
}

void write_distance_matrix_csv(std::ostream& out, const Eigen::MatrixXd& d,
                               std::span<const std::string> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != d.rows()) {
    throw DimensionError("distance matrix label count mismatch");
  }
  out << "label";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    out << labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < d.cols(); ++j) out << ',' << format_double(d(i, j));
    out << '\n';
  }
}

}  // namespace tnbsd
