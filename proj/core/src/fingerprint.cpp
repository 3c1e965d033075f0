#include "tnbsd/fingerprint.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "tnbsd/errors.hpp"

namespace tnbsd {

namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= kSortTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

// Sorts [first, last) descending by key, then re-sorts each run of
// tolerance-equal keys with `inner`.
template <class It, class Key, class Inner>
void sort_grouped(It first, It last, Key key, Inner inner) {
  std::stable_sort(first, last, [&](const Complex& a, const Complex& b) { return key(a) > key(b); });
  while (first != last) {
    It end = std::next(first);
    while (end != last && close(key(*std::prev(end)), key(*end))) ++end;
    inner(first, end);
    first = end;
  }
}

}  // namespace

void sort_spectrum(std::vector<Complex>& values) {
  auto mag = [](const Complex& z) { return std::abs(z); };
  auto re = [](const Complex& z) { return z.real(); };
  auto im = [](const Complex& z) { return z.imag(); };
  sort_grouped(values.begin(), values.end(), mag, [&](auto a, auto b) {
    sort_grouped(a, b, re, [&](auto c, auto d) {
      std::stable_sort(c, d, [&](const Complex& x, const Complex& y) { return im(x) > im(y); });
    });
  });
}

void merge_clusters(std::vector<Complex>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a].real() < values[b].real(); });
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto near = [](const Complex& a, const Complex& b) {
    return std::abs(a - b) <= kClusterTolerance * std::max({1.0, std::abs(a), std::abs(b)});
  };
  // Sweep in real-part order; only values within the tolerance window on
  // the real axis can be near each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Complex& a = values[order[i]];
    const double window = kClusterTolerance * std::max(1.0, 2.0 * std::abs(a) + 1.0);
    for (std::size_t j = i + 1; j < n && values[order[j]].real() - a.real() <= window; ++j) {
      if (near(a, values[order[j]])) parent[find(order[i])] = find(order[j]);
    }
  }
  std::vector<Complex> sum(n, Complex{0.0, 0.0});
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find(i)] += values[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (count[root] > 1) values[i] = sum[root] / static_cast<double>(count[root]);
  }
}

std::vector<Complex> full_spectrum_dense(const SparseMatrixDesc& mat, std::size_t dense_threshold) {
  if (mat.nrows != mat.ncols) throw DimensionError("full_spectrum_dense: matrix is not square");
  if (mat.nrows > dense_threshold) {
    throw DimensionError("matrix dimension " + std::to_string(mat.nrows) +
                         " exceeds the dense threshold " + std::to_string(dense_threshold) +
                         "; use top_eigenvalues for the leading part of the spectrum");
  }
  const auto n = static_cast<Eigen::Index>(mat.nrows);
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : mat.entries) {
    dense(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
  }
  return dense_eigenvalues(dense);
}

Fingerprint top_eigenvalues(const Graph& g, std::size_t r, const SpectrumOptions& opt) {
  if (r < 1) throw ArgumentError("top_eigenvalues: r must be >= 1");
  Fingerprint fp;
  fp.meta.n = g.num_nodes();
  fp.meta.m = g.num_edges();
  fp.meta.tolerance = opt.tol;
  const Graph core = opt.shave_first ? shave(g) : g;
  fp.meta.n_shaved = core.num_nodes();
  fp.meta.m_shaved = core.num_edges();

  const std::size_t dim = 2 * core.num_nodes();
  std::vector<Complex> values;
  if (dim == 0) {
    fp.meta.solver = "none";
  } else {
    const SparseMatrixDesc ihara = build_ihara_matrix(core);
    // A few extra values so a tie group straddling position r is resolved
    // the same way the dense path resolves it.
    const std::size_t nev = r + 4;
    const std::size_t subspace = opt.subspace == 0 ? default_subspace(nev) : opt.subspace;
    if (dim <= opt.dense_threshold || subspace + 1 >= dim) {
      values = full_spectrum_dense(ihara, std::max(dim, opt.dense_threshold));
      fp.meta.solver = "dense";
    } else {
      KrylovOptions ko;
      ko.nev = nev;
      ko.subspace = subspace;
      ko.tol = opt.tol;
      ko.max_restarts = opt.max_restarts;
      values = krylov_schur_largest(ihara.to_eigen(), ko).eigenvalues;
      fp.meta.solver = "krylov";
    }
  }
  merge_clusters(values);
  sort_spectrum(values);
  values.resize(r, Complex{0.0, 0.0});
  fp.eigs = std::move(values);
  return fp;
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_fingerprint_csv(std::ostream& out, const Fingerprint& fp) {
  out << "# r=" << fp.r() << " n=" << fp.meta.n << " m=" << fp.meta.m
      << " n2core=" << fp.meta.n_shaved << " m2core=" << fp.meta.m_shaved
      << " tol=" << format_double(fp.meta.tolerance) << '\n';
  out << "# solver=" << fp.meta.solver << '\n';
  for (const auto& z : fp.eigs) out << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

namespace {

double parse_double(std::string_view s, std::size_t line) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "invalid number '" + std::string(s) + "'");
  }
  return x;
}

std::size_t parse_size(std::string_view s, std::size_t line) {
  std::size_t x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "invalid count '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace

Fingerprint read_fingerprint_csv(std::istream& in) {
  Fingerprint fp;
  std::optional<std::size_t> declared_r;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("# cmd:")) continue;
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string_view val = std::string_view(tok).substr(eq + 1);
        if (key == "r") declared_r = parse_size(val, lineno);
        else if (key == "n") fp.meta.n = parse_size(val, lineno);
        else if (key == "m") fp.meta.m = parse_size(val, lineno);
        else if (key == "n2core") fp.meta.n_shaved = parse_size(val, lineno);
        else if (key == "m2core") fp.meta.m_shaved = parse_size(val, lineno);
        else if (key == "tol") fp.meta.tolerance = parse_double(val, lineno);
        else if (key == "solver") fp.meta.solver = std::string(val);
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(lineno, "expected 're,im'");
    const std::string_view sv(line);
    fp.eigs.emplace_back(parse_double(sv.substr(0, comma), lineno),
                         parse_double(sv.substr(comma + 1), lineno));
  }
  if (declared_r && *declared_r != fp.eigs.size()) {
    throw ParseError(lineno, "header declares r=" + std::to_string(*declared_r) + " but file has " +
                                 std::to_string(fp.eigs.size()) + " eigenvalues");
  }
  if (fp.eigs.empty()) throw ParseError(lineno, "fingerprint has no eigenvalues");
  return fp;
}

Fingerprint read_fingerprint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fingerprint '" + path + "'");
  return read_fingerprint_csv(in);
}

std::string fingerprint_to_json(const Fingerprint& fp) {
  nlohmann::json j;
  j["r"] = fp.r();
  j["n"] = fp.meta.n;
  j["m"] = fp.meta.m;
  j["n2core"] = fp.meta.n_shaved;
  j["m2core"] = fp.meta.m_shaved;
  j["tol"] = fp.meta.tolerance;
  j["solver"] = fp.meta.solver;
  auto& eigs = j["eigs"] = nlohmann::json::array();
  for (const auto& z : fp.eigs) eigs.push_back({z.real(), z.imag()});
  return j.dump(2);
}

}  // namespace tnbsd
