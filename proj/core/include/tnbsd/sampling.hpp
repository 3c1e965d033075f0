#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "tnbsd/graph.hpp"

namespace tnbsd {

enum class SampleMethod { kNode, kEdge, kRandomWalk, kRandomJump };

/// "ns", "es", "rw", "rj".
SampleMethod parse_sample_method(std::string_view name);
std::string sample_method_name(SampleMethod m);

struct SampleSpec {
  SampleMethod method = SampleMethod::kEdge;
  /// Stop once ceil(edge_fraction * m) edges are collected. In (0, 1].
  double edge_fraction = 0.05;
  /// Teleport probability per step (random jump only). In [0, 1).
  double jump_prob = 0.3;
  std::uint64_t seed = 0;

  void validate() const;
  std::string describe() const;
};

/// Subgraph of g with at least ceil(edge_fraction * m) edges, keeping g's ids.
///  ns: vertices in random order; returns the induced subgraph.
///  es: edges uniformly without replacement.
///  rw: traversed edges of a walk from a uniform start; the walker restarts
///      from a fresh uniform vertex at a dead end or after 1000 steps
///      without a new edge.
///  rj: as rw, but jumps to a uniform vertex with probability jump_prob.
/// Walk-based methods throw NumericError after 100 * m / edge_fraction steps.
Graph sample(const Graph& g, const SampleSpec& spec);

}  // namespace tnbsd
