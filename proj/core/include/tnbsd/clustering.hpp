#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnbsd/distance.hpp"
#include "tnbsd/fingerprint.hpp"
#include "tnbsd/gmm.hpp"
#include "tnbsd/kpca.hpp"

namespace tnbsd {

struct ClusterOptions {
  std::size_t k = 6;
  std::size_t dims = 2;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  TuningParams tuning;
};

struct ClusterResult {
  LabeledPointSet embedding;
  GmmResult mixture;
  std::optional<double> purity;
};

/// Feature vectors -> cosine kernel PCA -> Gaussian mixture EM in the
/// embedded space. Purity is computed when labels are supplied.
/// Throws DimensionError if the fingerprints differ in r.
ClusterResult cluster_fingerprints(std::span<const Fingerprint> fps, const ClusterOptions& opt,
                                   std::span<const std::string> labels = {});

}  // namespace tnbsd
