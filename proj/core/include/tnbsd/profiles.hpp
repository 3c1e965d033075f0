#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tnbsd/distance.hpp"
#include "tnbsd/fingerprint.hpp"
#include "tnbsd/graph.hpp"

namespace tnbsd {

/// Mean and population standard deviation.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd mean_std(std::span<const double> x);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

struct RewiringProfile {
  std::vector<double> fractions;
  std::vector<double> distances;
  /// Distance from g to every ensemble member.
  std::vector<double> baseline_distances;
  MeanStd baseline;
  /// Edges each ensemble member lost to unrepaired collisions.
  std::vector<std::size_t> dropped_edges;
};

/// Distance from g to rewire(g, f) for each fraction, plus the distance
/// distribution to a configuration-model ensemble with g's degrees.
RewiringProfile rewiring_profile(const Graph& g, std::span<const double> fractions,
                                 std::size_t ensemble_count, std::size_t r, const TuningParams& t,
                                 std::uint64_t seed, const SpectrumOptions& spectrum = {});

enum class TimelineMode { kConsecutive, kFixedBaseline };

struct TimelineReport {
  /// Index of the later (consecutive) or compared (fixed) fingerprint.
  std::vector<std::size_t> steps;
  std::vector<double> distances;
  std::vector<bool> flags;
  double mean = 0.0;
  double std = 0.0;
  /// Positions into `distances` with distance > mean + std.
  std::vector<std::size_t> anomalies;
};

/// Consecutive mode: d(fp_t, fp_{t-1}) for t >= 1. Fixed mode: d(fp_t,
/// fp_base) for every t != base.
TimelineReport timeline(std::span<const Fingerprint> fps, TimelineMode mode, std::size_t base,
                        const TuningParams& t = {});

}  // namespace tnbsd
