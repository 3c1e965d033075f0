#pragma once

// Small graph builders and brute-force oracles shared by the test suites.
// Everything here is written from definitions, independently of the
// library's own algorithms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tnbsd/graph.hpp"

namespace tnbsd::testing {

using Pairs = std::vector<std::pair<NodeId, NodeId>>;

inline Graph from_pairs(const Pairs& p, std::vector<NodeId> extra = {}) {
  return Graph::from_edges(p, extra);
}

inline Graph complete(int n) {
  Pairs p;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.emplace_back(i, j);
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  return from_pairs(p, nodes);
}

inline Graph cycle(int n) {
  Pairs p;
  for (int i = 0; i < n; ++i) p.emplace_back(i, (i + 1) % n);
  return from_pairs(p);
}

inline Graph path(int n) {
  Pairs p;
  for (int i = 0; i + 1 < n; ++i) p.emplace_back(i, i + 1);
  return from_pairs(p);
}

inline Graph star(int leaves) {
  Pairs p;
  for (int i = 1; i <= leaves; ++i) p.emplace_back(0, i);
  return from_pairs(p);
}

/// G(n, p) drawn with std::mt19937_64, independent of the library's RNG.
inline Graph random_gnp(int n, double prob, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::bernoulli_distribution coin(prob);
  Pairs p;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(eng)) p.emplace_back(i, j);
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  return from_pairs(p, nodes);
}

/// Connected graph: a random spanning tree plus `extra` random chords.
inline Graph random_connected(int n, int extra, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::set<std::pair<NodeId, NodeId>> e;
  for (int v = 1; v < n; ++v) {
    const NodeId u = std::uniform_int_distribution<int>(0, v - 1)(eng);
    e.emplace(u, v);
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  const long max_edges = static_cast<long>(n) * (n - 1) / 2;
  for (int tries = 0; static_cast<int>(e.size()) < std::min<long>(n - 1 + extra, max_edges) && tries < 100000; ++tries) {
    NodeId a = pick(eng);
    NodeId b = pick(eng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    e.emplace(a, b);
  }
  return from_pairs(Pairs(e.begin(), e.end()));
}

/// A random 2-core (cycle plus chords) with random pendant trees attached.
/// Returns the graph and the number of tree edges.
inline std::pair<Graph, std::size_t> core_with_trees(int core_n, int chords, int tree_nodes,
                                                      std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  Pairs p;
  for (int i = 0; i < core_n; ++i) p.emplace_back(i, (i + 1) % core_n);
  std::uniform_int_distribution<int> pick(0, core_n - 1);
  std::set<std::pair<NodeId, NodeId>> seen(p.begin(), p.end());
  for (int c = 0; c < chords; ++c) {
    NodeId a = pick(eng), b = pick(eng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (seen.emplace(a, b).second) p.emplace_back(a, b);
  }
  for (int v = core_n; v < core_n + tree_nodes; ++v) {
    const NodeId parent = std::uniform_int_distribution<int>(0, v - 1)(eng);
    p.emplace_back(parent, v);
  }
  Graph g = from_pairs(p);
  return {g, static_cast<std::size_t>(tree_nodes)};
}

inline Graph relabel_random(const Graph& g, std::uint64_t seed) {
  std::vector<NodeId> ids(g.num_nodes());
  std::iota(ids.begin(), ids.end(), 1000);
  std::mt19937_64 eng(seed);
  std::shuffle(ids.begin(), ids.end(), eng);
  return relabeled(g, ids);
}

/// Dense B straight from the definition: (k->l, u->v) = 1 iff v == k and
/// u != l, with arcs enumerated by brute force in the library's documented
/// order (source vertex ascending, then target ascending).
inline Eigen::MatrixXd brute_force_b(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (Vertex u = 0; u < g.num_nodes(); ++u)
    for (Vertex v = 0; v < g.num_nodes(); ++v)
      if (g.has_edge(u, v)) arcs.emplace_back(u, v);
  const auto n = static_cast<Eigen::Index>(arcs.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index row = 0; row < n; ++row)
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto [k, l] = arcs[row];
      const auto [u, v] = arcs[col];
      if (v == k && u != l) b(row, col) = 1.0;
    }
  return b;
}

/// Dense [[A, I-D], [I, 0]].
inline Eigen::MatrixXd brute_force_ihara(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      if (g.has_edge(static_cast<Vertex>(i), static_cast<Vertex>(j))) m(i, j) = 1.0;
    m(i, n + i) = 1.0 - static_cast<double>(g.degree(static_cast<Vertex>(i)));
    m(n + i, i) = 1.0;
  }
  return m;
}

/// Eigenvalues through Eigen's own Hessenberg-QR, a route independent of
/// the LAPACK solver used by the library.
inline std::vector<std::complex<double>> eigen_oracle(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

namespace detail {

// Kuhn's augmenting-path matching on the bipartite graph of pairs closer
// than `limit`; true if every element of a finds a partner.
inline bool perfect_within(const std::vector<std::complex<double>>& a,
                           const std::vector<std::complex<double>>& b, double limit) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(a[i] - b[j]) <= limit) adj[i].push_back(j);
  std::vector<std::size_t> owner(n, n);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] == n || self(self, owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    seen.assign(n, 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

}  // namespace detail

/// Bottleneck distance between two multisets: the smallest t such that a
/// perfect matching exists using only pairs within t. Infinity on a size
/// mismatch.
inline double multiset_distance(const std::vector<std::complex<double>>& a,
                                const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.empty()) return 0.0;
  std::vector<double> cand;
  cand.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) cand.push_back(std::abs(x - y));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (detail::perfect_within(a, b, cand[mid])) hi = mid;
    else lo = mid + 1;
  }
  return cand[lo];
}

/// Replaces every single-linkage cluster (pairs closer than `radius`) by
/// its mean, keeping multiplicity. A Jordan block of size k comes back from
/// any backward-stable solver as k values spread by ~eps^(1/k) around the
/// true eigenvalue, but their mean is accurate to ~eps; comparing cluster
/// means keeps the comparison meaningful for defective eigenvalues (tree
/// parts of B and B' are nilpotent).
inline std::vector<std::complex<double>> cluster_means(std::vector<std::complex<double>> v,
                                                       double radius = 1e-3) {
  const std::size_t n = v.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(v[i] - v[j]) < radius) parent[find(i)] = find(j);
  std::vector<std::complex<double>> sum(n);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += v[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = sum[find(i)] / static_cast<double>(count[find(i)]);
  return v;
}

/// Spectrum comparison that treats the disk |z| < disk as one cluster: its
/// counts must agree and its sums must agree to `tol` (times the count).
/// Outside the disk, cluster means are matched by bottleneck distance.
/// Tree parts of B' are nilpotent with long Jordan chains whose computed
/// eigenvalues scatter well beyond any fixed tolerance, yet their sum stays
/// accurate. Returns the larger of the two errors, or infinity on a count
/// mismatch.
inline double zero_disk_distance(const std::vector<std::complex<double>>& a,
                                 const std::vector<std::complex<double>>& b, double disk = 0.1) {
  struct Split {
    std::vector<std::complex<double>> outer;
    std::complex<double> sum;
    std::size_t inside = 0;
  };
  auto split = [disk](const std::vector<std::complex<double>>& v) {
    Split s;
    for (const auto& z : v) {
      if (std::abs(z) < disk) {
        s.sum += z;
        ++s.inside;
      } else {
        s.outer.push_back(z);
      }
    }
    return s;
  };
  const Split sa = split(a);
  const Split sb = split(b);
  if (sa.inside != sb.inside) return INFINITY;
  return std::max(multiset_distance(cluster_means(sa.outer), cluster_means(sb.outer)),
                  std::abs(sa.sum - sb.sum) / std::max<double>(1.0, static_cast<double>(sa.inside)));
}

inline std::uint64_t brute_force_triangles(const Graph& g) {
  std::uint64_t t = 0;
  const auto n = static_cast<Vertex>(g.num_nodes());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++t;
  return t;
}

}  // namespace tnbsd::testing
