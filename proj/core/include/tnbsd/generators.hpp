#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "tnbsd/graph.hpp"

namespace tnbsd {

enum class Model { kErdosRenyi, kBarabasiAlbert, kWattsStrogatz, kConfiguration, kKronecker, kHyperbolic };

/// "er", "ba", "ws", "cm", "kr", "hg".
Model parse_model(std::string_view name);
std::string model_name(Model m);

struct ModelSpec {
  Model model = Model::kErdosRenyi;
  std::size_t n = 0;
  double mean_degree = 0.0;
  /// Degree exponent for CM and HG. Must exceed 2.
  double gamma = 2.3;
  /// Watts–Strogatz rewiring probability.
  double ws_beta = 0.1;
  /// Kronecker 2×2 initiator, row-major. Only its shape matters: it is
  /// rescaled so the trimmed graph hits mean_degree.
  std::array<double, 4> kr_initiator{0.99, 0.55, 0.55, 0.37};
  /// Per-level initiator perturbation (noisy Kronecker); 0 disables it.
  double kr_noise = 0.0;
  /// Hyperbolic temperature in [0, 1); 0 is the threshold model.
  double hg_temperature = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  /// Space-separated key=value description, used in output headers.
  std::string describe() const;
};

/// Random graph on dense ids 0..n-1 (isolated vertices included).
///  ER: G(n, p) with p = <k>/(n-1), clamped to 1.
///  BA: preferential attachment, round(<k>/2) edges per new vertex, grown
///      from a clique on round(<k>/2)+1 vertices.
///  WS: ring lattice of even degree 2*round(<k>/2), rewired with ws_beta.
///  CM: erased configuration model on power-law degrees (exponent gamma).
///  KR: stochastic Kronecker, 2^L >= n vertices trimmed to n.
///  HG: hyperbolic random graph, radius tuned numerically to <k>.
Graph generate(const ModelSpec& spec);

/// Expected mean degree of the power-law degree sampler used by CM for a
/// given minimum x_min (continuous Pareto, floored, capped at n-1).
double cm_expected_mean_degree(double x_min, double gamma, std::size_t n);

/// Expected mean degree of the hyperbolic model with disk radius R.
double hg_expected_mean_degree(std::size_t n, double gamma, double temperature, double radius);

}  // namespace tnbsd
