#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "acceptance.hpp"
#include "support.hpp"
#include "tnbsd/distance.hpp"
#include "tnbsd/nb_matrix.hpp"

namespace tnbsd::acceptance {
namespace {

using C = std::complex<double>;

double entrywise(const Fingerprint& a, const Fingerprint& b) {
  if (a.r() != b.r()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.r(); ++i) worst = std::max(worst, std::abs(a.eigs[i] - b.eigs[i]));
  return worst;
}

}  // namespace

Outcome exact_nnz() {
  Rng rng(1, 1);
  std::size_t failures = 0;
  std::size_t largest = 0;
  for (int i = 0; i < 200; ++i) {
    const auto model = static_cast<Model>(i % 6);
    const std::size_t n = 20 + rng.below(481);
    const double k = 2.0 + 10.0 * rng.uniform();
    const Graph g = model_graph(model, n, k, mix_seed(1, i));
    std::uint64_t wedges = 0;
    for (Vertex v = 0; v < g.num_nodes(); ++v) wedges += g.degree(v) * (g.degree(v) - 1);
    const auto moments = degree_moments(g);
    const double formula = static_cast<double>(g.num_nodes()) * (moments.mean_k2 - moments.mean_k);
    const std::size_t nnz = build_nb_matrix(g).nnz();
    largest = std::max(largest, nnz);
    if (nnz != wedges || std::llround(formula) != static_cast<long long>(nnz)) ++failures;
  }
  return {failures == 0, Detail().add("graphs", 200).add("mismatches", failures).add("max_nnz", largest).str()};
}

// The disk |z| < 0.1 is compared by count and sum only; see
// zero_disk_distance.
Outcome ihara_bass() {
  std::mt19937_64 eng(2);
  double worst = 0.0;
  double scatter = 0.0;
  std::size_t largest = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = std::uniform_int_distribution<int>(6, 90)(eng);
    const int extra = std::uniform_int_distribution<int>(1, std::max(1, 200 - n))(eng);
    const Graph g = testing::random_connected(n, std::min(extra, 200 - n + 1), eng());
    largest = std::max(largest, 2 * g.num_edges());
    auto rhs = full_spectrum_dense(build_ihara_matrix(g));
    for (const C& z : rhs) scatter = std::abs(z) < 0.1 ? std::max(scatter, std::abs(z)) : scatter;
    const auto excess = static_cast<long>(g.num_edges()) - static_cast<long>(g.num_nodes());
    for (long j = 0; j < excess; ++j) {
      rhs.emplace_back(1.0, 0.0);
      rhs.emplace_back(-1.0, 0.0);
    }
    const auto lhs = full_spectrum_dense(build_nb_matrix(g));
    worst = std::max(worst, testing::zero_disk_distance(lhs, rhs));
  }
  return {worst <= 1e-6 && largest <= 400,
          Detail().add("graphs", 50).add("max_2m", largest).add("max_match_error", worst)
              .add("ihara_zero_scatter", scatter).str()};
}

Outcome triangle_identity() {
  std::mt19937_64 eng(3);
  double worst = 0.0;
  std::uint64_t total = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = std::uniform_int_distribution<int>(5, 60)(eng);
    const double k = std::uniform_real_distribution<double>(2.0, 12.0)(eng);
    const Graph g = testing::random_gnp(n, std::min(1.0, k / (n - 1)), eng());
    const std::uint64_t truth = testing::brute_force_triangles(g);
    total += truth;
    const double spectral = triangle_count_spectral(full_spectrum_dense(build_nb_matrix(g)));
    worst = std::max(worst, std::abs(spectral - static_cast<double>(truth)));
  }
  return {worst <= 1e-6, Detail().add("graphs", 100).add("triangles", total).add("max_abs_error", worst).str()};
}

Outcome trace_identity() {
  std::mt19937_64 eng(4);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = std::uniform_int_distribution<int>(5, 40)(eng);
    const int extra = std::uniform_int_distribution<int>(0, 30)(eng);
    const Graph g = testing::random_connected(n, extra, eng());
    const auto eigs = full_spectrum_dense(build_nb_matrix(g));
    for (int k = 1; k <= 6; ++k) {
      C s(0.0, 0.0);
      for (const C& z : eigs) s += std::pow(z, k);
      const double count = static_cast<double>(nb_cycle_count(g, k));
      worst = std::max(worst, std::abs(s - count) / std::max(1.0, count));
    }
  }
  return {worst <= 1e-6, Detail().add("graphs", 50).add("k", "1..6").add("max_rel_error", worst).str()};
}

// Counted over directed edges: each undirected edge outside the 2-core
// contributes two nilpotent arcs of B.
Outcome zero_multiplicity() {
  std::mt19937_64 eng(5);
  std::size_t mismatches = 0;
  std::size_t arcs = 0;
  for (int i = 0; i < 50; ++i) {
    const int core_n = std::uniform_int_distribution<int>(3, 30)(eng);
    const int chords = std::uniform_int_distribution<int>(0, 20)(eng);
    const int trees = std::uniform_int_distribution<int>(1, 40)(eng);
    const auto [g, tree_edges] = testing::core_with_trees(core_n, chords, trees, eng());
    const std::size_t outside = g.num_edges() - shave(g).num_edges();
    std::size_t zeros = 0;
    for (const C& z : full_spectrum_dense(build_nb_matrix(g))) zeros += std::abs(z) < 1e-8 ? 1 : 0;
    arcs += 2 * outside;
    if (outside != tree_edges || zeros != 2 * outside) ++mismatches;
  }
  return {mismatches == 0,
          Detail().add("graphs", 50).add("zero_eigs_total", arcs).add("mismatches", mismatches).str()};
}

Outcome pseudometric() {
  std::mt19937_64 eng(6);
  std::vector<Fingerprint> pool;
  for (int i = 0; i < 60; ++i) {
    const int n = std::uniform_int_distribution<int>(8, 80)(eng);
    const double k = std::uniform_real_distribution<double>(1.5, 8.0)(eng);
    pool.push_back(top_eigenvalues(testing::random_gnp(n, std::min(1.0, k / (n - 1)), eng()), 12));
  }
  std::size_t violations = 0;
  double slack = 0.0;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < 1000; ++t) {
    const TuningParams tp{std::uniform_real_distribution<double>(1.0, 20.0)(eng),
                          std::uniform_real_distribution<double>(0.0, 2.0)(eng)};
    const Fingerprint& x = pool[pick(eng)];
    const Fingerprint& y = pool[pick(eng)];
    const Fingerprint& z = pool[pick(eng)];
    const double xy = tnbsd(x, y, tp);
    const double excess = tnbsd(x, z, tp) - xy - tnbsd(y, z, tp);
    slack = std::max(slack, excess);
    if (tnbsd(x, x, tp) != 0.0 || xy != tnbsd(y, x, tp) || xy < 0.0 || excess > 1e-12) ++violations;
  }

  std::vector<double> divergence;
  for (int n : {4, 8, 16, 32}) {
    std::vector<NodeId> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    const Graph edge = testing::from_pairs({{0, 1}}, nodes);
    divergence.push_back(tnbsd(top_eigenvalues(testing::complete(n), 6), top_eigenvalues(edge, 6)));
  }
  const bool increasing =
      std::adjacent_find(divergence.begin(), divergence.end(), std::greater_equal<>()) == divergence.end();
  std::ostringstream div;
  for (std::size_t i = 0; i < divergence.size(); ++i) div << (i ? "," : "") << divergence[i];
  return {violations == 0 && increasing, Detail()
                                             .add("triples", 1000)
                                             .add("violations", violations)
                                             .add("max_triangle_excess", slack)
                                             .add("divergence_n4..32", div.str())
                                             .str()};
}

Outcome shaving_and_isomorphism() {
  std::mt19937_64 eng(7);
  double shave_err = 0.0;
  double iso_err = 0.0;
  SpectrumOptions unshaved;
  unshaved.shave_first = false;
  for (int i = 0; i < 50; ++i) {
    const int core_n = std::uniform_int_distribution<int>(4, 40)(eng);
    const int chords = std::uniform_int_distribution<int>(1, 30)(eng);
    const int trees = std::uniform_int_distribution<int>(1, 30)(eng);
    const Graph g = testing::core_with_trees(core_n, chords, trees, eng()).first;
    const Graph core = shave(g);
    // B' of a 2-core is invertible (I - D has no zero diagonal), so all
    // 2 n_core of its eigenvalues are nonzero.
    const std::size_t r = std::min<std::size_t>(30, 2 * core.num_nodes());
    shave_err = std::max(shave_err, entrywise(top_eigenvalues(g, r, unshaved), top_eigenvalues(core, r)));
    const Graph h = testing::relabel_random(g, eng());
    iso_err = std::max(iso_err, entrywise(top_eigenvalues(g, 30), top_eigenvalues(h, 30)));
  }
  return {shave_err <= 1e-6 && iso_err <= 1e-6,
          Detail().add("graphs", 50).add("max_shave_diff", shave_err).add("max_relabel_diff", iso_err).str()};
}

Outcome krylov_vs_dense() {
  const Model models[] = {Model::kErdosRenyi, Model::kBarabasiAlbert, Model::kWattsStrogatz,
                          Model::kConfiguration};
  SpectrumOptions dense;
  dense.dense_threshold = 4000;
  SpectrumOptions krylov;
  krylov.dense_threshold = 0;
  double worst = 0.0;
  std::size_t krylov_runs = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 500 + 50 * static_cast<std::size_t>(i);
    const Graph g = model_graph(models[i % 4], n, 6.0, mix_seed(12, i));
    const Fingerprint a = top_eigenvalues(g, 50, dense);
    const Fingerprint b = top_eigenvalues(g, 50, krylov);
    krylov_runs += b.meta.solver == "krylov" && a.meta.solver == "dense" ? 1 : 0;
    worst = std::max(worst, entrywise(a, b));
  }
  return {worst <= 1e-6 && krylov_runs == 20,
          Detail().add("graphs", 20).add("n", "500..1450").add("r", 50).add("krylov_runs", krylov_runs)
              .add("max_diff", worst).str()};
}

}  // namespace tnbsd::acceptance
