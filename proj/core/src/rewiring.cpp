#include "tnbsd/rewiring.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "tnbsd/errors.hpp"
#include "tnbsd/rng.hpp"

namespace tnbsd {

namespace {

std::uint64_t key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Mutable simple edge set with O(1) random access, insert and replace.
class EdgeSet {
 public:
  bool contains(Vertex u, Vertex v) const { return keys_.contains(key(u, v)); }
  std::size_t size() const { return edges_.size(); }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }

  void add(Vertex u, Vertex v) {
    edges_.push_back({u, v});
    keys_.insert(key(u, v));
  }
  void replace(std::size_t i, Vertex u, Vertex v) {
    keys_.erase(key(edges_[i].u, edges_[i].v));
    edges_[i] = {u, v};
    keys_.insert(key(u, v));
  }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> keys_;
};

// Tries to place the stub pair (a, b) by trading it against an existing
// edge (c, d) for (a, c) + (b, d).
bool repair_pair(EdgeSet& set, Vertex a, Vertex b, Rng& rng) {
  if (a != b && !set.contains(a, b)) {
    set.add(a, b);
    return true;
  }
  if (set.size() == 0) return false;
  const std::size_t tries = std::max<std::size_t>(100, 4 * set.size());
  for (std::size_t t = 0; t < tries; ++t) {
    const std::size_t i = rng.below(set.size());
    Vertex c = set[i].u;
    Vertex d = set[i].v;
    if (rng.bernoulli(0.5)) std::swap(c, d);
    if (a == c || b == d) continue;
    if (set.contains(a, c) || set.contains(b, d)) continue;
    if (key(a, c) == key(b, d)) continue;
    set.replace(i, a, c);
    set.add(b, d);
    return true;
  }
  return false;
}

}  // namespace

ConfigurationResult configuration_graph(std::span<const std::size_t> degree, Rng& rng, bool repair) {
  std::vector<Vertex> stubs;
  for (std::size_t v = 0; v < degree.size(); ++v) {
    stubs.insert(stubs.end(), degree[v], static_cast<Vertex>(v));
  }
  if (stubs.size() % 2 != 0) throw ArgumentError("configuration model: degree sum must be even");
  rng.shuffle(std::span<Vertex>(stubs));

  EdgeSet set;
  std::vector<Edge> bad;
  for (std::size_t i = 0; i < stubs.size(); i += 2) {
    const Vertex a = stubs[i];
    const Vertex b = stubs[i + 1];
    if (a == b || set.contains(a, b)) {
      bad.push_back({a, b});
    } else {
      set.add(a, b);
    }
  }
  if (repair) {
    // A pair that fails now may fit once another repair has moved edges
    // (e.g. a doubled edge beside a self-loop). When a sweep makes no
    // progress, the leftover stubs are re-paired at random.
    std::vector<Edge> left;
    for (int round = 0; round < 32 && !bad.empty(); ++round) {
      left.clear();
      for (const auto& e : bad) {
        if (!repair_pair(set, e.u, e.v, rng)) left.push_back(e);
      }
      if (left.size() == bad.size()) {
        std::vector<Vertex> loose;
        for (const auto& e : left) {
          loose.push_back(e.u);
          loose.push_back(e.v);
        }
        rng.shuffle(std::span<Vertex>(loose));
        for (std::size_t i = 0; i < left.size(); ++i) left[i] = {loose[2 * i], loose[2 * i + 1]};
      }
      bad.swap(left);
    }
  }
  return {Graph::from_dense_edges(degree.size(), set.edges()), bad.size()};
}

Graph rewire(const Graph& g, double fraction, std::uint64_t seed, RewireStats* stats) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw ArgumentError("rewire: fraction must lie in [0, 1]");
  const std::size_t m = g.num_edges();
  const auto target = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(m) - 1e-9));
  RewireStats local;
  if (target == 0) {
    if (stats) *stats = local;
    return g;
  }
  if (m < 2) throw ArgumentError("rewire: graph needs at least 2 edges");

  const std::vector<Edge> original = g.edges();
  std::unordered_set<std::uint64_t> orig_keys;
  for (const auto& e : original) orig_keys.insert(key(e.u, e.v));
  EdgeSet set;
  for (const auto& e : original) set.add(e.u, e.v);

  Rng rng(seed, 0x72657769);
  const std::size_t budget = 100 * m;
  auto is_orig = [&](Vertex u, Vertex v) -> std::size_t { return orig_keys.contains(key(u, v)); };
  while (local.changed < target) {
    if (local.attempts >= budget) {
      throw NumericError("rewire: attempt budget of " + std::to_string(budget) +
                         " exhausted with fraction " +
                         std::to_string(static_cast<double>(local.changed) / static_cast<double>(m)) +
                         " of edges rewired (target " + std::to_string(fraction) + ")");
    }
    ++local.attempts;
    const std::size_t i = rng.below(m);
    const std::size_t j = rng.below(m);
    if (i == j) continue;
    const Vertex a = set[i].u;
    const Vertex b = set[i].v;
    Vertex c = set[j].u;
    Vertex d = set[j].v;
    if (rng.bernoulli(0.5)) std::swap(c, d);
    // (a,b),(c,d) -> (a,d),(c,b)
    if (a == d || c == b) continue;
    if (set.contains(a, d) || set.contains(c, b)) continue;
    local.changed += is_orig(a, b) + is_orig(c, d);
    local.changed -= is_orig(a, d) + is_orig(c, b);
    set.replace(i, a, d);
    set.replace(j, c, b);
    ++local.swaps;
  }
  if (stats) *stats = local;
  return relabeled(Graph::from_dense_edges(g.num_nodes(), set.edges()), g.node_ids());
}

std::vector<EnsembleMember> cm_null_ensemble(const Graph& g, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw ArgumentError("cm_null_ensemble: count must be >= 1");
  std::vector<std::size_t> degree(g.num_nodes());
  for (Vertex v = 0; v < g.num_nodes(); ++v) degree[v] = g.degree(v);
  std::vector<EnsembleMember> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(seed, 0x636d0000 + i);
    auto res = configuration_graph(degree, rng, true);
    out.push_back({relabeled(res.graph, g.node_ids()), res.dropped_edges});
  }
  return out;
}

}  // namespace tnbsd
