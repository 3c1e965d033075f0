#include "tnbsd/sampling.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "tnbsd/errors.hpp"
#include "tnbsd/rng.hpp"

namespace tnbsd {

namespace {

constexpr std::string_view kMethodNames[] = {"ns", "es", "rw", "rj"};
constexpr std::size_t kStuckSteps = 1000;

std::uint64_t key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

Graph from_dense_subset(const Graph& g, const std::vector<Edge>& edges) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) pairs.emplace_back(g.id(e.u), g.id(e.v));
  return Graph::from_edges(pairs);
}

Graph node_sample(const Graph& g, std::size_t target, Rng& rng) {
  std::vector<Vertex> order(g.num_nodes());
  std::iota(order.begin(), order.end(), Vertex{0});
  rng.shuffle(std::span<Vertex>(order));
  std::vector<char> chosen(g.num_nodes(), 0);
  std::size_t induced = 0;
  std::size_t taken = 0;
  while (induced < target) {
    const Vertex v = order[taken++];
    for (Vertex w : g.neighbors(v)) induced += chosen[w];
    chosen[v] = 1;
  }
  order.resize(taken);
  return g.induced(order);
}

Graph edge_sample(const Graph& g, std::size_t target, Rng& rng) {
  std::vector<Edge> edges = g.edges();
  rng.shuffle(std::span<Edge>(edges));
  edges.resize(target);
  return from_dense_subset(g, edges);
}

Graph walk_sample(const Graph& g, const SampleSpec& spec, std::size_t target, Rng& rng) {
  const std::size_t n = g.num_nodes();
  const double m = static_cast<double>(g.num_edges());
  const auto budget = static_cast<std::uint64_t>(std::ceil(100.0 * m / spec.edge_fraction));
  const double jump = spec.method == SampleMethod::kRandomJump ? spec.jump_prob : 0.0;
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> collected;
  auto cur = static_cast<Vertex>(rng.below(n));
  std::size_t since_new = 0;
  for (std::uint64_t step = 0; collected.size() < target; ++step) {
    if (step >= budget) {
      throw NumericError("sample: step budget of " + std::to_string(budget) +
                         " exhausted after collecting a fraction " +
                         std::to_string(static_cast<double>(collected.size()) / m) +
                         " of edges (target " + std::to_string(spec.edge_fraction) + ")");
    }
    if (g.degree(cur) == 0 || since_new >= kStuckSteps || (jump > 0.0 && rng.bernoulli(jump))) {
      cur = static_cast<Vertex>(rng.below(n));
      since_new = 0;
      continue;
    }
    const auto nb = g.neighbors(cur);
    const Vertex next = nb[rng.below(nb.size())];
    if (seen.insert(key(cur, next)).second) {
      collected.push_back({cur, next});
      since_new = 0;
    } else {
      ++since_new;
    }
    cur = next;
  }
  return from_dense_subset(g, collected);
}

}  // namespace

SampleMethod parse_sample_method(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kMethodNames); ++i) {
    if (kMethodNames[i] == name) return static_cast<SampleMethod>(i);
  }
  throw ArgumentError("unknown sampling method '" + std::string(name) + "' (expected ns, es, rw, rj)");
}

std::string sample_method_name(SampleMethod m) { return std::string(kMethodNames[static_cast<int>(m)]); }

void SampleSpec::validate() const {
  if (!(edge_fraction > 0.0 && edge_fraction <= 1.0)) {
    throw ArgumentError("sample: edge fraction must lie in (0, 1]");
  }
  if (!(jump_prob >= 0.0 && jump_prob < 1.0)) throw ArgumentError("sample: jump probability must lie in [0, 1)");
}

std::string SampleSpec::describe() const {
  std::ostringstream out;
  out << "method=" << sample_method_name(method) << " fraction=" << edge_fraction;
  if (method == SampleMethod::kRandomJump) out << " jump=" << jump_prob;
  out << " seed=" << seed;
  return out.str();
}

Graph sample(const Graph& g, const SampleSpec& spec) {
  spec.validate();
  if (g.num_edges() == 0) throw ArgumentError("sample: graph has no edges");
  const auto target = static_cast<std::size_t>(
      std::ceil(spec.edge_fraction * static_cast<double>(g.num_edges()) - 1e-9));
  Rng rng(spec.seed, 0x73616d00 + static_cast<std::uint64_t>(spec.method));
  switch (spec.method) {
    case SampleMethod::kNode: return node_sample(g, target, rng);
    case SampleMethod::kEdge: return edge_sample(g, target, rng);
    case SampleMethod::kRandomWalk:
    case SampleMethod::kRandomJump: return walk_sample(g, spec, target, rng);
  }
  throw ArgumentError("unknown sampling method");
}

}  // namespace tnbsd
