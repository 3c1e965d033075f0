#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tnbsd/graph.hpp"

namespace tnbsd {

class Rng;

struct ConfigurationResult {
  Graph graph;
  /// Edges lost to self-loops and multi-edges that could not be repaired.
  std::size_t dropped_edges = 0;
};

/// Stub matching on dense vertices 0..n-1 with degree[v] stubs each. With
/// `repair`, colliding stub pairs are fixed by swaps against random valid
/// edges before any are dropped. The degree sum must be even.
ConfigurationResult configuration_graph(std::span<const std::size_t> degree, Rng& rng, bool repair);

struct RewireStats {
  std::size_t attempts = 0;
  std::size_t swaps = 0;
  /// Original edges no longer present.
  std::size_t changed = 0;
};

/// Degree-preserving double-edge swaps until at least ceil(fraction * m)
/// original edges are gone. Throws NumericError when 100*m attempts are
/// spent first. Node ids are those of g.
Graph rewire(const Graph& g, double fraction, std::uint64_t seed, RewireStats* stats = nullptr);

struct EnsembleMember {
  Graph graph;
  std::size_t dropped_edges = 0;
};

/// `count` repaired configuration-model graphs with g's degree sequence and
/// node ids.
std::vector<EnsembleMember> cm_null_ensemble(const Graph& g, std::size_t count, std::uint64_t seed);

}  // namespace tnbsd
