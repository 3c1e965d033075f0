#include "tnbsd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tnbsd/errors.hpp"

namespace tnbsd {

namespace {

// Sorts and deduplicates dense pairs (normalized u < v), dropping loops.
std::vector<Edge> normalize(std::vector<Edge> edges, BuildStats* stats) {
  std::size_t loops = 0;
  std::erase_if(edges, [&loops](const Edge& e) {
    if (e.u == e.v) {
      ++loops;
      return true;
    }
    return false;
  });
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  const auto before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (stats) {
    stats->self_loops += loops;
    stats->duplicates += before - edges.size();
  }
  return edges;
}

}  // namespace

Graph Graph::from_dense_edges(std::size_t n, std::span<const Edge> raw, BuildStats* stats) {
  std::vector<Edge> edges = normalize({raw.begin(), raw.end()}, stats);
  Graph g;
  g.ids_.resize(n);
  std::iota(g.ids_.begin(), g.ids_.end(), NodeId{0});
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    if (e.v >= n) throw ArgumentError("edge endpoint out of range");
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adj_.resize(2 * edges.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so emitting in this order leaves every
  // neighbor list sorted: lower neighbors arrive via e.v, higher via e.u,
  // and all lower neighbors of w precede all higher ones.
  for (const auto& e : edges) g.adj_[fill[e.v]++] = e.u;
  for (const auto& e : edges) g.adj_[fill[e.u]++] = e.v;
  return g;
}

Graph Graph::from_edges(std::span<const std::pair<NodeId, NodeId>> pairs,
                        std::span<const NodeId> extra_nodes, BuildStats* stats) {
  std::vector<NodeId> ids;
  ids.reserve(2 * pairs.size() + extra_nodes.size());
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0) throw ArgumentError("node ids must be non-negative");
    ids.push_back(a);
    ids.push_back(b);
  }
  for (NodeId x : extra_nodes) {
    if (x < 0) throw ArgumentError("node ids must be non-negative");
    ids.push_back(x);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto dense = [&ids](NodeId x) {
    return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) edges.push_back({dense(a), dense(b)});

  Graph g = from_dense_edges(ids.size(), edges, stats);
  g.ids_ = std::move(ids);
  return g;
}

std::size_t Graph::arc_index(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) throw ArgumentError("arc_index: edge does not exist");
  return offsets_[u] + static_cast<std::size_t>(it - nb.begin());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  const auto nb = degree(u) <= degree(v) ? neighbors(u) : neighbors(v);
  const Vertex target = degree(u) <= degree(v) ? v : u;
  return std::binary_search(nb.begin(), nb.end(), target);
}

std::optional<Vertex> Graph::index_of(NodeId x) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), x);
  if (it == ids_.end() || *it != x) return std::nullopt;
  return static_cast<Vertex>(it - ids_.begin());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_nodes(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::int64_t> remap(num_nodes(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) remap[sorted[i]] = static_cast<std::int64_t>(i);

  std::vector<Edge> edges;
  for (Vertex u : sorted) {
    for (Vertex v : neighbors(u)) {
      if (u < v && remap[v] >= 0) {
        edges.push_back({static_cast<Vertex>(remap[u]), static_cast<Vertex>(remap[v])});
      }
    }
  }
  Graph g = from_dense_edges(sorted.size(), edges);
  for (std::size_t i = 0; i < sorted.size(); ++i) g.ids_[i] = ids_[sorted[i]];
  return g;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> deg(num_nodes());
  for (Vertex v = 0; v < num_nodes(); ++v) deg[v] = degree(v);
  std::sort(deg.begin(), deg.end(), std::greater<>());
  return deg;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<std::size_t> node_count_header(std::string_view comment) {
  comment = trim(comment.substr(1));
  if (!comment.starts_with("n=")) return std::nullopt;
  const auto end = comment.find_first_of(" \t");
  const auto digits = comment.substr(2, end == std::string_view::npos ? end : end - 2);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return n;
}

}  // namespace

Graph parse_edge_list(std::istream& in, ParseStats* stats) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::optional<std::size_t> declared;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      if (auto n = node_count_header(s)) declared = n;
      continue;
    }
    NodeId ab[2];
    const char* p = s.data();
    const char* end = s.data() + s.size();
    for (int k = 0; k < 2; ++k) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      const auto [next, ec] = std::from_chars(p, end, ab[k]);
      if (ec != std::errc() || next == p || (next < end && *next != ' ' && *next != '\t')) {
        throw ParseError(lineno, "expected two integer node ids, got '" + std::string(s) + "'");
      }
      if (ab[k] < 0) throw ParseError(lineno, "negative node id");
      p = next;
    }
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p != end) throw ParseError(lineno, "trailing tokens after edge: '" + std::string(s) + "'");
    pairs.emplace_back(ab[0], ab[1]);
  }
  if (in.bad()) throw IoError("read failure while parsing edge list");

  std::vector<NodeId> extra;
  if (declared) {
    std::vector<NodeId> seen;
    seen.reserve(2 * pairs.size());
    for (const auto& [a, b] : pairs) {
      seen.push_back(a);
      seen.push_back(b);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    std::size_t have = seen.size();
    for (NodeId x = 0; have < *declared; ++x) {
      if (!std::binary_search(seen.begin(), seen.end(), x)) {
        extra.push_back(x);
        ++have;
      }
    }
  }

  BuildStats build;
  Graph g = Graph::from_edges(pairs, extra, &build);
  if (stats) {
    stats->lines = lineno;
    stats->self_loops = build.self_loops;
    stats->duplicates = build.duplicates;
    stats->declared_nodes = declared;
  }
  return g;
}

Graph parse_edge_list(std::string_view text, ParseStats* stats) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, stats);
}

Graph read_edge_list(const std::string& path, ParseStats* stats) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  return parse_edge_list(in, stats);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n=" << g.num_nodes() << " m=" << g.num_edges() << '\n';
  // Ids ascend with dense index, so dense order is id order.
  for (const auto& e : g.edges()) out << g.id(e.u) << ' ' << g.id(e.v) << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

Graph shave(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> deg(n);
  std::vector<char> removed(n, 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) {
      removed[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      if (--deg[w] <= 1) {
        removed[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v) {
    if (!removed[v]) keep.push_back(v);
  }
  if (keep.size() == n) return g;
  return g.induced(keep);
}

DegreeMoments degree_moments(const Graph& g) {
  if (g.empty()) throw ArgumentError("moments undefined on zero nodes");
  double s1 = 0.0;
  double s2 = 0.0;
  for (Vertex v = 0; v < g.num_nodes(); ++v) {
    const auto d = static_cast<double>(g.degree(v));
    s1 += d;
    s2 += d * d;
  }
  const auto n = static_cast<double>(g.num_nodes());
  return {s1 / n, s2 / n};
}

Graph largest_component(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::int64_t> comp(n, -1);
  std::vector<Vertex> best;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> members;
    comp[s] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = s;
          stack.push_back(w);
        }
      }
    }
    // Components are discovered in order of their smallest vertex, so a
    // strict comparison keeps the one with the smallest id on ties.
    if (members.size() > best.size()) best = std::move(members);
  }
  if (best.size() == n) return g;
  return g.induced(best);
}

Graph relabeled(const Graph& g, std::span<const NodeId> new_ids) {
  if (new_ids.size() != g.num_nodes()) throw ArgumentError("relabeled: id count mismatch");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(g.num_edges());
  for (const auto& e : g.edges()) pairs.emplace_back(new_ids[e.u], new_ids[e.v]);
  Graph out = Graph::from_edges(pairs, new_ids);
  if (out.num_nodes() != g.num_nodes()) throw ArgumentError("relabeled: ids must be distinct");
  return out;
}

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t count = 0;
  for (Vertex u = 0; u < g.num_nodes(); ++u) {
    const auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      // Common neighbors w > v.
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++count;
          ++a;
          ++b;
        }
      }
    }
  }
  return count;
}

}  // namespace tnbsd
