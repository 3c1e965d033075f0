#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tnbsd {

/// Node id as it appears in an edge list. Non-negative.
using NodeId = std::int64_t;
/// Dense vertex index, 0..n-1.
using Vertex = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Counters filled while building a graph from raw pairs.
struct BuildStats {
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

/// Simple undirected unweighted graph in compressed adjacency form.
///
/// Original node ids are kept sorted ascending; dense vertex v corresponds to
/// the v-th smallest id. Neighbor lists are sorted. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a simple graph from (id, id) pairs. Self-loops and repeated
  /// pairs (in either orientation) are dropped and counted in `stats`.
  /// `extra_nodes` are added as vertices even if they have no edges.
  static Graph from_edges(std::span<const std::pair<NodeId, NodeId>> edges,
                          std::span<const NodeId> extra_nodes = {},
                          BuildStats* stats = nullptr);

  /// Same as from_edges but for pairs already in dense form over n vertices
  /// whose ids are 0..n-1.
  static Graph from_dense_edges(std::size_t n, std::span<const Edge> edges,
                                BuildStats* stats = nullptr);

  std::size_t num_nodes() const noexcept { return ids_.size(); }
  std::size_t num_edges() const noexcept { return adj_.size() / 2; }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Position of u→v in the flat adjacency array; this is the canonical
  /// index of the directed edge u→v. Requires the edge to exist.
  std::size_t arc_index(Vertex u, Vertex v) const;
  std::size_t arc_begin(Vertex v) const noexcept { return offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const;

  NodeId id(Vertex v) const noexcept { return ids_[v]; }
  std::span<const NodeId> node_ids() const noexcept { return ids_; }
  std::optional<Vertex> index_of(NodeId id) const;

  /// Undirected edges as dense pairs with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Subgraph induced by `keep` (dense indices, any order, no repeats).
  Graph induced(std::span<const Vertex> keep) const;

  /// Degree of every vertex, sorted descending.
  std::vector<std::size_t> degree_sequence() const;

  /// Structural equality: same ids and same edge set.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<NodeId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
};

struct DegreeMoments {
  double mean_k = 0.0;
  double mean_k2 = 0.0;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  std::optional<std::size_t> declared_nodes;
};

/// Reads a whitespace-separated edge list. Lines starting with '#' are
/// comments; a comment whose first token is `n=<count>` declares the node
/// count, in which case unmentioned ids are filled in from 0 upwards.
/// Throws ParseError with the offending line number.
Graph parse_edge_list(std::istream& in, ParseStats* stats = nullptr);
Graph parse_edge_list(std::string_view text, ParseStats* stats = nullptr);

/// Reads an edge list from disk. Throws IoError if the file cannot be opened.
Graph read_edge_list(const std::string& path, ParseStats* stats = nullptr);

/// Writes "# n=<n> m=<m>" then one "u v" line per edge, u < v, sorted by id.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

/// 2-core of g: repeatedly removes vertices of degree <= 1.
Graph shave(const Graph& g);

DegreeMoments degree_moments(const Graph& g);

/// Largest connected component (ties broken by smallest contained id).
Graph largest_component(const Graph& g);

/// Copy of g in which dense vertex v gets id new_ids[v]. Ids must be distinct.
Graph relabeled(const Graph& g, std::span<const NodeId> new_ids);

/// Number of triangles by direct enumeration.
std::uint64_t count_triangles(const Graph& g);

}  // namespace tnbsd
