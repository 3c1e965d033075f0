#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "tnbsd/graph.hpp"

namespace tnbsd {

struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Coordinate-form sparse matrix. Entries have distinct (row, col) pairs.
struct SparseMatrixDesc {
  std::size_t nrows = 0;
  std::size_t ncols = 0;
  std::vector<MatrixEntry> entries;

  std::size_t nnz() const noexcept { return entries.size(); }
  Eigen::SparseMatrix<double, Eigen::RowMajor> to_eigen() const;
};

/// Bijection between the 2m directed edges of a graph and 0..2m-1.
///
/// The index of u→v is the position of v in the flattened, sorted adjacency
/// arrays, i.e. all arcs leaving vertex 0 first, then those leaving 1, etc.
class DirectedEdgeIndex {
 public:
  explicit DirectedEdgeIndex(const Graph& g) : g_(&g) {}

  std::size_t size() const noexcept { return 2 * g_->num_edges(); }
  std::size_t index(Vertex u, Vertex v) const { return g_->arc_index(u, v); }
  /// Arc at position i as (tail, head).
  Edge arc(std::size_t i) const;

 private:
  const Graph* g_;
};

/// Instrumentation for build_nb_matrix.
struct NbBuildStats {
  /// Inner-loop iterations: one per (arc, continuation candidate) pair plus
  /// one per arc visited.
  std::uint64_t operations = 0;
};

/// Non-backtracking (Hashimoto) matrix: entry (k→l, u→v) is 1 iff v == k and
/// u != l. Built in one pass over the adjacency structure.
SparseMatrixDesc build_nb_matrix(const Graph& g, NbBuildStats* stats = nullptr);

/// 2n×2n block matrix [[A, I-D], [I, 0]] whose spectrum is that of the
/// non-backtracking matrix with the ±1 eigenvalues of multiplicity m-n
/// removed. Zero-valued blocks entries (degree-1 vertices) are omitted.
SparseMatrixDesc build_ihara_matrix(const Graph& g);

/// tr(B^k) by explicit sparse integer matrix powering. This is the number of
/// closed non-backtracking walks of length k counted with a marked start.
std::uint64_t nb_cycle_count(const Graph& g, int k);

/// (1/6) Σ a(a² − 3b²) over a full non-backtracking spectrum λ = a + ib,
/// i.e. tr(B³)/6, which is the number of triangles.
double triangle_count_spectral(std::span<const std::complex<double>> spectrum);

}  // namespace tnbsd
