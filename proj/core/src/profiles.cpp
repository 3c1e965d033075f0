#include "tnbsd/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tnbsd/errors.hpp"
#include "tnbsd/rewiring.hpp"
#include "tnbsd/rng.hpp"

namespace tnbsd {

MeanStd mean_std(std::span<const double> x) {
  MeanStd out;
  if (x.empty()) return out;
  const double n = static_cast<double>(x.size());
  out.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(ss / n);
  return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && x[idx[j]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j - 1);
    for (std::size_t k = i; k < j; ++k) rank[idx[k]] = avg;
    i = j;
  }
  return rank;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("spearman: length mismatch");
  if (x.size() < 2) throw ArgumentError("spearman: need at least 2 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const MeanStd mx = mean_std(rx);
  const MeanStd my = mean_std(ry);
  if (mx.std == 0.0 || my.std == 0.0) return 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) cov += (rx[i] - mx.mean) * (ry[i] - my.mean);
  cov /= static_cast<double>(rx.size());
  return cov / (mx.std * my.std);
}

RewiringProfile rewiring_profile(const Graph& g, std::span<const double> fractions,
                                 std::size_t ensemble_count, std::size_t r, const TuningParams& t,
                                 std::uint64_t seed, const SpectrumOptions& spectrum) {
  t.validate();
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] <= 1.0)) {
      throw ArgumentError("rewiring profile: fractions must lie in (0, 1]");
    }
    if (i > 0 && fractions[i] < fractions[i - 1]) {
      throw ArgumentError("rewiring profile: fractions must be sorted ascending");
    }
  }
  RewiringProfile out;
  const Fingerprint base = top_eigenvalues(g, r, spectrum);
  out.fractions.assign(fractions.begin(), fractions.end());
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const Graph h = rewire(g, fractions[i], mix_seed(seed, i));
    out.distances.push_back(tnbsd(base, top_eigenvalues(h, r, spectrum), t));
  }
  if (ensemble_count > 0) {
    for (const auto& member : cm_null_ensemble(g, ensemble_count, mix_seed(seed, 0x656e73))) {
      out.baseline_distances.push_back(tnbsd(base, top_eigenvalues(member.graph, r, spectrum), t));
      out.dropped_edges.push_back(member.dropped_edges);
    }
    out.baseline = mean_std(out.baseline_distances);
  }
  return out;
}

TimelineReport timeline(std::span<const Fingerprint> fps, TimelineMode mode, std::size_t base,
                        const TuningParams& t) {
  if (fps.size() < 2) throw ArgumentError("timeline: need at least 2 fingerprints");
  t.validate();
  TimelineReport out;
  if (mode == TimelineMode::kConsecutive) {
    for (std::size_t i = 1; i < fps.size(); ++i) {
      out.steps.push_back(i);
      out.distances.push_back(tnbsd(fps[i], fps[i - 1], t));
    }
  } else {
    if (base >= fps.size()) {
      throw ArgumentError("timeline: baseline index " + std::to_string(base) + " out of range (" +
                          std::to_string(fps.size()) + " fingerprints)");
    }
    for (std::size_t i = 0; i < fps.size(); ++i) {
      if (i == base) continue;
      out.steps.push_back(i);
      out.distances.push_back(tnbsd(fps[i], fps[base], t));
    }
  }
  const MeanStd ms = mean_std(out.distances);
  out.mean = ms.mean;
  out.std = ms.std;
  // The slack only absorbs rounding in mean/std of equal distances.
  const double band = ms.mean + ms.std + 1e-12 * std::max(1.0, ms.mean);
  for (std::size_t i = 0; i < out.distances.size(); ++i) {
    const bool flag = out.distances[i] > band;
    out.flags.push_back(flag);
    if (flag) out.anomalies.push_back(i);
  }
  return out;
}

}  // namespace tnbsd
