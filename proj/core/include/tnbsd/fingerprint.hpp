#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tnbsd/eigensolver.hpp"
#include "tnbsd/graph.hpp"
#include "tnbsd/nb_matrix.hpp"

namespace tnbsd {

/// Values closer than this (relative to max(1, |x|)) compare equal when
/// ordering eigenvalues. Defective eigenvalues of B' (e.g. the double
/// eigenvalue 1) come back from LAPACK split by ~sqrt(eps), so exact
/// comparison would make the order depend on rounding noise.
inline constexpr double kSortTieTolerance = 1e-6;

/// Computed eigenvalues closer than this (relative to max(1, |λ|)) are
/// replaced by their mean. A defective eigenvalue of multiplicity k comes
/// back as k values spread by ~eps^(1/k) around it; their mean is accurate
/// to ~eps.
inline constexpr double kClusterTolerance = 1e-6;

/// Replaces each cluster of nearby values (single linkage at
/// kClusterTolerance) by the cluster mean, in place.
void merge_clusters(std::vector<Complex>& values);

/// Sorts by descending magnitude, then descending real part, then
/// descending imaginary part. Each key groups values within
/// kSortTieTolerance before the next key decides.
void sort_spectrum(std::vector<Complex>& values);

struct FingerprintMeta {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n_shaved = 0;
  std::size_t m_shaved = 0;
  /// "dense", "krylov", or "none" when the 2-core is empty.
  std::string solver = "none";
  double tolerance = 0.0;
};

/// The r largest-magnitude eigenvalues of a graph's Ihara matrix B',
/// sorted by sort_spectrum and zero-padded to length r.
struct Fingerprint {
  std::vector<Complex> eigs;
  FingerprintMeta meta;

  std::size_t r() const noexcept { return eigs.size(); }
};

struct SpectrumOptions {
  bool shave_first = true;
  double tol = 1e-8;
  /// Matrices with dimension at most this are solved densely.
  std::size_t dense_threshold = 2000;
  /// Krylov subspace dimension; 0 selects default_subspace(r).
  std::size_t subspace = 0;
  int max_restarts = 1000;
};

/// All eigenvalues of a (small) sparse matrix, unordered. Refuses matrices
/// larger than dense_threshold.
std::vector<Complex> full_spectrum_dense(const SparseMatrixDesc& mat,
                                         std::size_t dense_threshold = 2000);

Fingerprint top_eigenvalues(const Graph& g, std::size_t r, const SpectrumOptions& options = {});

/// CSV: header "# r=.. n=.. m=.. n2core=.. m2core=.. tol=..", a
/// "# solver=.." line, then one "re,im" line per eigenvalue (%.17g).
void write_fingerprint_csv(std::ostream& out, const Fingerprint& fp);
Fingerprint read_fingerprint_csv(std::istream& in);
Fingerprint read_fingerprint(const std::string& path);
std::string fingerprint_to_json(const Fingerprint& fp);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

}  // namespace tnbsd
