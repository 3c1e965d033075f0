#include "tnbsd/clustering.hpp"

#include "tnbsd/errors.hpp"

namespace tnbsd {

ClusterResult cluster_fingerprints(std::span<const Fingerprint> fps, const ClusterOptions& opt,
                                   std::span<const std::string> labels) {
  opt.tuning.validate();
  if (fps.empty()) throw ArgumentError("cluster: no fingerprints");
  if (!labels.empty() && labels.size() != fps.size()) {
    throw DimensionError("cluster: " + std::to_string(fps.size()) + " fingerprints but " +
                         std::to_string(labels.size()) + " labels");
  }
  if (fps.size() < opt.k) {
    throw ArgumentError("cluster: fewer points than components (" + std::to_string(fps.size()) +
                        " fingerprints, k=" + std::to_string(opt.k) + ")");
  }
  std::vector<FeatureVector> features;
  features.reserve(fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (fps[i].r() != fps[0].r()) {
      throw DimensionError("cluster: fingerprint " + std::to_string(i) + " has r=" +
                           std::to_string(fps[i].r()) + ", expected r=" + std::to_string(fps[0].r()));
    }
    features.push_back(feature_vector(fps[i], opt.tuning));
  }
  ClusterResult out;
  out.embedding = kpca_cosine(features, opt.dims);
  out.embedding.labels.assign(labels.begin(), labels.end());
  GmmOptions g;
  g.k = opt.k;
  g.restarts = opt.restarts;
  g.seed = opt.seed;
  out.mixture = gmm_em(out.embedding.points, g);
  if (!labels.empty()) out.purity = purity(out.mixture.assignments, labels);
  return out;
}

}  // namespace tnbsd
