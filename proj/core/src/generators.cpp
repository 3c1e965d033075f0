#include "tnbsd/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "tnbsd/errors.hpp"
#include "tnbsd/rewiring.hpp"
#include "tnbsd/rng.hpp"

namespace tnbsd {

namespace {

constexpr std::string_view kModelNames[] = {"er", "ba", "ws", "cm", "kr", "hg"};

std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

Graph erdos_renyi(const ModelSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  std::vector<Edge> edges;
  if (n < 2) return Graph::from_dense_edges(n, edges);
  const double p = std::min(1.0, spec.mean_degree / static_cast<double>(n - 1));
  if (p <= 0.0) return Graph::from_dense_edges(n, edges);
  if (p >= 1.0) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
    }
    return Graph::from_dense_edges(n, edges);
  }
  // Geometric skipping over the lower triangle (Batagelj & Brandes).
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double skip = std::floor(std::log(rng.uniform_pos()) / log_q);
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.push_back({static_cast<Vertex>(w), static_cast<Vertex>(v)});
  }
  return Graph::from_dense_edges(n, edges);
}

Graph barabasi_albert(const ModelSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  const auto attach = static_cast<std::size_t>(std::lround(spec.mean_degree / 2.0));
  std::vector<Edge> edges;
  if (attach == 0 || n < 2) return Graph::from_dense_edges(n, edges);
  const std::size_t seed_size = std::min(n, attach + 1);
  // Every edge endpoint appears once in `pool`, so a uniform pick from it is
  // a degree-proportional vertex pick.
  std::vector<Vertex> pool;
  for (Vertex u = 0; u < seed_size; ++u) {
    for (Vertex v = u + 1; v < seed_size; ++v) {
      edges.push_back({u, v});
      pool.push_back(u);
      pool.push_back(v);
    }
  }
  std::vector<Vertex> targets;
  for (auto v = static_cast<Vertex>(seed_size); v < n; ++v) {
    targets.clear();
    while (targets.size() < attach) {
      const Vertex t = pool[rng.below(pool.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (Vertex t : targets) {
      edges.push_back({t, v});
      pool.push_back(t);
      pool.push_back(v);
    }
  }
  return Graph::from_dense_edges(n, edges);
}

Graph watts_strogatz(const ModelSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  const auto half = static_cast<std::size_t>(std::lround(spec.mean_degree / 2.0));
  const std::size_t k = 2 * half;
  if (k >= n) {
    throw ArgumentError("ws: ring degree " + std::to_string(k) + " must be below n=" + std::to_string(n));
  }
  std::vector<std::vector<Vertex>> adj(n);
  std::unordered_set<std::uint64_t> present;
  auto add = [&](Vertex u, Vertex v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
    present.insert(edge_key(u, v));
  };
  auto remove = [&](Vertex u, Vertex v) {
    std::erase(adj[u], v);
    std::erase(adj[v], u);
    present.erase(edge_key(u, v));
  };
  for (Vertex u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= half; ++j) add(u, static_cast<Vertex>((u + j) % n));
  }
  // Rewire lattice edge (u, u+j) to (u, w) with probability beta, avoiding
  // loops and duplicates; ring distance by ring distance as in the original
  // construction.
  for (std::size_t j = 1; j <= half; ++j) {
    for (Vertex u = 0; u < n; ++u) {
      if (!rng.bernoulli(spec.ws_beta)) continue;
      const auto v = static_cast<Vertex>((u + j) % n);
      if (!present.contains(edge_key(u, v))) continue;
      if (adj[u].size() >= n - 1) continue;
      Vertex w;
      do {
        w = static_cast<Vertex>(rng.below(n));
      } while (w == u || present.contains(edge_key(u, w)));
      remove(u, v);
      add(u, w);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(present.size());
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : adj[u]) {
      if (u < v) edges.push_back({u, v});
    }
  }
  return Graph::from_dense_edges(n, edges);
}

double cm_solve_xmin(double target, double gamma, std::size_t n) {
  double lo = 1e-6;
  double hi = std::max(1.0, target);
  while (cm_expected_mean_degree(hi, gamma, n) < target && hi < static_cast<double>(n)) hi *= 2.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cm_expected_mean_degree(mid, gamma, n) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::size_t> power_law_degrees(std::size_t n, double gamma, double x_min, Rng& rng) {
  std::vector<std::size_t> deg(n);
  const double cap = static_cast<double>(n - 1);
  for (auto& d : deg) {
    const double x = x_min * std::pow(rng.uniform_pos(), -1.0 / (gamma - 1.0));
    d = static_cast<std::size_t>(std::floor(std::min(x, cap)));
  }
  std::size_t total = 0;
  for (auto d : deg) total += d;
  if (total % 2 == 1) {
    // Parity fix on a vertex that can still grow.
    for (auto& d : deg) {
      if (d < n - 1) {
        ++d;
        break;
      }
    }
  }
  return deg;
}

Graph configuration(const ModelSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  if (n < 2 || spec.mean_degree <= 0.0) return Graph::from_dense_edges(n, {});
  // Erasing loops and multi-edges loses a fraction of the stubs (most of it
  // at the hubs). A pilot draw measures that loss and the real draw aims
  // correspondingly higher, so the realized mean tracks the target.
  Rng pilot_rng(rng.next());
  const double x0 = cm_solve_xmin(spec.mean_degree, spec.gamma, n);
  const Graph pilot = configuration_graph(power_law_degrees(n, spec.gamma, x0, pilot_rng), pilot_rng, false).graph;
  const double realized = 2.0 * static_cast<double>(pilot.num_edges()) / static_cast<double>(n);
  double target = spec.mean_degree;
  if (realized > 0.0) target = std::min(spec.mean_degree * spec.mean_degree / realized,
                                        static_cast<double>(n - 1));
  const double x_min = cm_solve_xmin(target, spec.gamma, n);
  return configuration_graph(power_law_degrees(n, spec.gamma, x_min, rng), rng, false).graph;
}

// Sum of the top-left a×b block of the L-th Kronecker power of k.
double kron_block_sum(const std::array<double, 4>& k, int level, std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0.0;
  if (level == 0) return 1.0;
  const std::uint64_t half = std::uint64_t{1} << (level - 1);
  double s = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const std::uint64_t ra = x == 0 ? std::min(a, half) : (a > half ? a - half : 0);
      const std::uint64_t rb = y == 0 ? std::min(b, half) : (b > half ? b - half : 0);
      if (ra == 0 || rb == 0) continue;
      double sub;
      if (ra == half && rb == half) {
        sub = std::pow(k[0] + k[1] + k[2] + k[3], level - 1);
      } else {
        sub = kron_block_sum(k, level - 1, ra, rb);
      }
      s += k[2 * x + y] * sub;
    }
  }
  return s;
}

// Sum of the first a diagonal entries of the L-th Kronecker power.
double kron_diag_sum(const std::array<double, 4>& k, int level, std::uint64_t a) {
  if (a == 0) return 0.0;
  if (level == 0) return 1.0;
  const std::uint64_t half = std::uint64_t{1} << (level - 1);
  if (a >= half) {
    return k[0] * std::pow(k[0] + k[3], level - 1) + k[3] * kron_diag_sum(k, level - 1, a - half);
  }
  return k[0] * kron_diag_sum(k, level - 1, a);
}

Graph kronecker(const ModelSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  if (n < 2 || spec.mean_degree <= 0.0) return Graph::from_dense_edges(n, {});
  int levels = 0;
  while ((std::uint64_t{1} << levels) < n) ++levels;
  const auto& k = spec.kr_initiator;
  const double total = k[0] + k[1] + k[2] + k[3];

  // Scale the initiator by c so the expected number of edges inside the
  // trimmed n×n block (off-diagonal, halved for symmetry) gives mean_degree.
  const double block = kron_block_sum(k, levels, n, n) - kron_diag_sum(k, levels, n);
  const double scale_l = spec.mean_degree * static_cast<double>(n) / block;  // c^L
  // Balls dropped over the full 2^L grid; a ball at (i, j) and at (j, i)
  // both hit the undirected pair, hence the factor 1/2.
  const double balls_mean = 0.5 * scale_l * std::pow(total, levels);
  const std::uint64_t balls = rng.poisson(balls_mean);

  std::vector<std::array<double, 4>> per_level(levels, k);
  if (spec.kr_noise > 0.0) {
    const double a = k[0];
    const double d = k[3];
    const double b = 0.5 * (k[1] + k[2]);
    const double limit = std::min({spec.kr_noise, b, 0.5 * (a + d)});
    for (auto& lk : per_level) {
      const double mu = limit * (2.0 * rng.uniform() - 1.0);
      lk = {a - 2.0 * mu * a / (a + d), b + mu, b + mu, d - 2.0 * mu * d / (a + d)};
    }
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(balls));
  for (std::uint64_t ball = 0; ball < balls; ++ball) {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (int l = 0; l < levels; ++l) {
      const auto& lk = per_level[l];
      const double lt = lk[0] + lk[1] + lk[2] + lk[3];
      const double u = rng.uniform() * lt;
      int q = 0;
      double acc = lk[0];
      while (q < 3 && u >= acc) acc += lk[++q];
      row = (row << 1) | static_cast<std::uint64_t>(q >> 1);
      col = (col << 1) | static_cast<std::uint64_t>(q & 1);
    }
    if (row >= n || col >= n || row == col) continue;
    edges.push_back({static_cast<Vertex>(row), static_cast<Vertex>(col)});
  }
  return Graph::from_dense_edges(n, edges);
}

double hg_connect_probability(double r1, double r2, double radius, double temperature,
                              double cosh_radius) {
  const double x = std::cosh(r1) * std::cosh(r2);
  const double y = std::sinh(r1) * std::sinh(r2);
  if (temperature <= 0.0) {
    if (r1 + r2 <= radius) return 1.0;
    const double c = std::clamp((x - cosh_radius) / y, -1.0, 1.0);
    return std::acos(c) / std::numbers::pi;
  }
  constexpr int kAngles = 48;
  double s = 0.0;
  for (int i = 0; i < kAngles; ++i) {
    const double dtheta = (i + 0.5) * std::numbers::pi / kAngles;
    const double d = std::acosh(std::max(1.0, x - y * std::cos(dtheta)));
    s += 1.0 / (1.0 + std::exp((d - radius) / (2.0 * temperature)));
  }
  return s / kAngles;
}

double hg_solve_radius(std::size_t n, double gamma, double temperature, double target) {
  double lo = 0.0;
  double hi = 2.0 * std::log(static_cast<double>(n)) + 2.0;
  while (hg_expected_mean_degree(n, gamma, temperature, hi) > target) hi *= 1.5;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hg_expected_mean_degree(n, gamma, temperature, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Graph hyperbolic(const ModelSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  if (n < 2 || spec.mean_degree <= 0.0) return Graph::from_dense_edges(n, {});
  const double alpha = 0.5 * (spec.gamma - 1.0);
  const double temperature = spec.hg_temperature;
  const double radius = hg_solve_radius(n, spec.gamma, temperature, spec.mean_degree);
  const double cosh_radius = std::cosh(radius);
  const double span = std::cosh(alpha * radius) - 1.0;

  std::vector<double> ch(n), sh(n), c(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::acosh(1.0 + span * rng.uniform()) / alpha;
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    ch[i] = std::cosh(r);
    sh[i] = std::sinh(r);
    c[i] = std::cos(theta);
    s[i] = std::sin(theta);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // cosh of the hyperbolic distance.
      const double x = ch[i] * ch[j] - sh[i] * sh[j] * (c[i] * c[j] + s[i] * s[j]);
      bool connect;
      if (temperature <= 0.0) {
        connect = x <= cosh_radius;
      } else {
        const double d = std::acosh(std::max(1.0, x));
        connect = rng.bernoulli(1.0 / (1.0 + std::exp((d - radius) / (2.0 * temperature))));
      }
      if (connect) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  }
  return Graph::from_dense_edges(n, edges);
}

}  // namespace

Model parse_model(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kModelNames); ++i) {
    if (kModelNames[i] == name) return static_cast<Model>(i);
  }
  throw ArgumentError("unknown model '" + std::string(name) + "' (expected er, ba, ws, cm, kr, hg)");
}

std::string model_name(Model m) { return std::string(kModelNames[static_cast<int>(m)]); }

void ModelSpec::validate() const {
  if (n < 1) throw ArgumentError("model: n must be >= 1");
  if (!(mean_degree >= 0.0)) throw ArgumentError("model: mean degree must be >= 0");
  if ((model == Model::kConfiguration || model == Model::kHyperbolic) && !(gamma > 2.0)) {
    throw ArgumentError("model: gamma must be > 2");
  }
  if (model == Model::kWattsStrogatz && !(ws_beta >= 0.0 && ws_beta <= 1.0)) {
    throw ArgumentError("ws: beta must lie in [0, 1]");
  }
  if (model == Model::kKronecker) {
    for (double x : kr_initiator) {
      if (!(x >= 0.0)) throw ArgumentError("kr: initiator entries must be >= 0");
    }
    if (kr_initiator[1] != kr_initiator[2]) throw ArgumentError("kr: initiator must be symmetric");
    if (!(kr_noise >= 0.0)) throw ArgumentError("kr: noise must be >= 0");
  }
  if (model == Model::kHyperbolic && !(hg_temperature >= 0.0 && hg_temperature < 1.0)) {
    throw ArgumentError("hg: temperature must lie in [0, 1)");
  }
}

std::string ModelSpec::describe() const {
  std::ostringstream out;
  out << "model=" << model_name(model) << " n=" << n << " k=" << mean_degree;
  switch (model) {
    case Model::kConfiguration:
      out << " gamma=" << gamma;
      break;
    case Model::kHyperbolic:
      out << " gamma=" << gamma << " temperature=" << hg_temperature;
      break;
    case Model::kWattsStrogatz:
      out << " beta=" << ws_beta;
      break;
    case Model::kKronecker:
      out << " initiator=" << kr_initiator[0] << ',' << kr_initiator[1] << ',' << kr_initiator[2]
          << ',' << kr_initiator[3] << " noise=" << kr_noise;
      break;
    default:
      break;
  }
  out << " seed=" << seed;
  return out.str();
}

Graph generate(const ModelSpec& spec) {
  spec.validate();
  Rng rng(spec.seed, 0x67656e00 + static_cast<std::uint64_t>(spec.model));
  switch (spec.model) {
    case Model::kErdosRenyi: return erdos_renyi(spec, rng);
    case Model::kBarabasiAlbert: return barabasi_albert(spec, rng);
    case Model::kWattsStrogatz: return watts_strogatz(spec, rng);
    case Model::kConfiguration: return configuration(spec, rng);
    case Model::kKronecker: return kronecker(spec, rng);
    case Model::kHyperbolic: return hyperbolic(spec, rng);
  }
  throw ArgumentError("unknown model");
}

double cm_expected_mean_degree(double x_min, double gamma, std::size_t n) {
  // E[floor(min(X, n-1))] = Σ_{j=1}^{n-1} P(X >= j) for Pareto X.
  double s = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double p = std::min(1.0, std::pow(x_min / static_cast<double>(j), gamma - 1.0));
    s += p;
    if (p < 1e-12) break;
  }
  return s;
}

double hg_expected_mean_degree(std::size_t n, double gamma, double temperature, double radius) {
  if (n < 2) return 0.0;
  if (radius <= 0.0) return static_cast<double>(n - 1);
  const double alpha = 0.5 * (gamma - 1.0);
  const int grid = temperature > 0.0 ? 160 : 480;
  const double h = radius / grid;
  std::vector<double> r(grid), w(grid);
  double wsum = 0.0;
  for (int i = 0; i < grid; ++i) {
    r[i] = (i + 0.5) * h;
    w[i] = std::sinh(alpha * r[i]);
    wsum += w[i];
  }
  for (auto& x : w) x /= wsum;
  const double cosh_radius = std::cosh(radius);
  double p = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = i; j < grid; ++j) {
      const double q = hg_connect_probability(r[i], r[j], radius, temperature, cosh_radius);
      p += (i == j ? 1.0 : 2.0) * w[i] * w[j] * q;
    }
  }
  return static_cast<double>(n - 1) * p;
}

}  // namespace tnbsd
