#include "tnbsd/nb_matrix.hpp"

#include <algorithm>

#include "tnbsd/errors.hpp"

namespace tnbsd {

Eigen::SparseMatrix<double, Eigen::RowMajor> SparseMatrixDesc::to_eigen() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(static_cast<Eigen::Index>(nrows),
                                                 static_cast<Eigen::Index>(ncols));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Edge DirectedEdgeIndex::arc(std::size_t i) const {
  // The tail is the vertex whose adjacency range contains i.
  Vertex lo = 0;
  Vertex hi = static_cast<Vertex>(g_->num_nodes());
  while (hi - lo > 1) {
    const Vertex mid = lo + (hi - lo) / 2;
    if (g_->arc_begin(mid) <= i) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, g_->neighbors(lo)[i - g_->arc_begin(lo)]};
}

SparseMatrixDesc build_nb_matrix(const Graph& g, NbBuildStats* stats) {
  SparseMatrixDesc b;
  b.nrows = b.ncols = 2 * g.num_edges();
  std::uint64_t ops = 0;
  for (Vertex u = 0; u < g.num_nodes(); ++u) {
    const auto nu = g.neighbors(u);
    for (std::size_t i = 0; i < nu.size(); ++i) {
      const Vertex v = nu[i];
      const std::size_t col = g.arc_begin(u) + i;
      ++ops;
      const auto nv = g.neighbors(v);
      for (std::size_t j = 0; j < nv.size(); ++j) {
        ++ops;
        if (nv[j] == u) continue;
        b.entries.push_back({g.arc_begin(v) + j, col, 1.0});
      }
    }
  }
  if (stats) stats->operations += ops;
  return b;
}

SparseMatrixDesc build_ihara_matrix(const Graph& g) {
  const std::size_t n = g.num_nodes();
  SparseMatrixDesc m;
  m.nrows = m.ncols = 2 * n;
  m.entries.reserve(2 * g.num_edges() + 2 * n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) m.entries.push_back({u, v, 1.0});
    const double diag = 1.0 - static_cast<double>(g.degree(u));
    if (diag != 0.0) m.entries.push_back({u, n + u, diag});
  }
  for (Vertex u = 0; u < n; ++u) m.entries.push_back({n + u, u, 1.0});
  return m;
}

std::uint64_t nb_cycle_count(const Graph& g, int k) {
  if (k < 1) throw ArgumentError("nb_cycle_count: k must be >= 1");
  const SparseMatrixDesc desc = build_nb_matrix(g);
  using IntMatrix = Eigen::SparseMatrix<std::int64_t>;
  std::vector<Eigen::Triplet<std::int64_t>> triplets;
  triplets.reserve(desc.nnz());
  for (const auto& e : desc.entries) {
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), 1);
  }
  const auto dim = static_cast<Eigen::Index>(desc.nrows);
  IntMatrix b(dim, dim);
  b.setFromTriplets(triplets.begin(), triplets.end());
  IntMatrix power = b;
  for (int i = 1; i < k; ++i) {
    IntMatrix next = power * b;
    power = std::move(next);
  }
  std::int64_t trace = 0;
  for (Eigen::Index i = 0; i < dim; ++i) trace += power.coeff(i, i);
  return static_cast<std::uint64_t>(trace);
}

double triangle_count_spectral(std::span<const std::complex<double>> spectrum) {
  double sum = 0.0;
  for (const auto& z : spectrum) {
    const double a = z.real();
    const double b = z.imag();
    sum += a * (a * a - 3.0 * b * b);
  }
  return sum / 6.0;
}

}  // namespace tnbsd
