#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tnbsd/clustering.hpp"
#include "tnbsd/distance.hpp"
#include "tnbsd/errors.hpp"
#include "tnbsd/fingerprint.hpp"
#include "tnbsd/generators.hpp"
#include "tnbsd/graph.hpp"
#include "tnbsd/ks_test.hpp"
#include "tnbsd/profiles.hpp"
#include "tnbsd/rewiring.hpp"
#include "tnbsd/sampling.hpp"

namespace tnbsd::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr std::size_t kDefaultR = 200;

struct Globals {
  std::uint64_t seed = 0;
  bool quiet = false;
  std::string output;
  std::string format = "csv";
};

struct SpectrumFlags {
  std::size_t r = kDefaultR;
  bool r_explicit = false;
  bool no_shave = false;
  bool lcc = false;
  double tol = 1e-8;
  std::size_t dense_threshold = 2000;
  std::size_t subspace = 0;

  SpectrumOptions options() const {
    SpectrumOptions o;
    o.shave_first = !no_shave;
    o.tol = tol;
    o.dense_threshold = dense_threshold;
    o.subspace = subspace;
    return o;
  }
};

struct TuningFlags {
  std::optional<double> sigma;
  std::optional<double> eta;
  std::string preset = "none";

  TuningParams params() const {
    TuningParams t = TuningParams::preset(preset);
    if (sigma) t.sigma = *sigma;
    if (eta) t.eta = *eta;
    t.validate();
    return t;
  }
};

struct Input {
  std::string label;
  std::string path;
};

template <class T>
T parse_env_number(const char* name, T fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  std::istringstream in(v);
  T x{};
  if (!(in >> x) || !in.eof()) {
    throw ArgumentError(std::string("environment variable ") + name + "='" + v + "' is not a valid number");
  }
  return x;
}

SpectrumFlags spectrum_defaults() {
  SpectrumFlags f;
  if (std::getenv("TNBSD_R") != nullptr && *std::getenv("TNBSD_R") != '\0') {
    f.r = parse_env_number<std::size_t>("TNBSD_R", kDefaultR);
    f.r_explicit = true;
  }
  f.tol = parse_env_number<double>("TNBSD_TOL", f.tol);
  f.dense_threshold = parse_env_number<std::size_t>("TNBSD_DENSE_THRESHOLD", f.dense_threshold);
  return f;
}

void add_spectrum_flags(CLI::App* cmd, SpectrumFlags& f) {
  cmd->add_option("-r", f.r, "Number of eigenvalues (env TNBSD_R, default 200)")
      ->each([&f](const std::string&) { f.r_explicit = true; });
  cmd->add_flag("--no-shave", f.no_shave, "Skip 2-core shaving before the eigensolve");
  cmd->add_flag("--lcc", f.lcc, "Reduce graph inputs to their largest connected component");
  cmd->add_option("--tol", f.tol, "Relative Ritz residual tolerance (env TNBSD_TOL)");
  cmd->add_option("--dense-threshold", f.dense_threshold,
                  "Largest matrix dimension solved densely (env TNBSD_DENSE_THRESHOLD)");
  cmd->add_option("--subspace", f.subspace, "Krylov subspace dimension (0 = automatic)");
}

void add_tuning_flags(CLI::App* cmd, TuningFlags& t) {
  cmd->add_option("--sigma", t.sigma, "Real-part emphasis, >= 1");
  cmd->add_option("--eta", t.eta, "Magnitude weighting exponent, >= 0");
  cmd->add_option("--preset", t.preset, "Named tuning: none, cs1-tuned")
      ->check(CLI::IsMember({"none", "raw", "cs1-tuned"}));
}

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"'\\$") == std::string::npos) return s;
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

// Canonical command echo. The seed is always spelled out so a stochastic
// output names everything needed to regenerate it.
std::string command_line(const std::vector<std::string>& args, std::uint64_t seed) {
  std::string line = "tnbsd";
  bool has_seed = false;
  for (const auto& a : args) {
    if (a == "--seed" || a.starts_with("--seed=")) has_seed = true;
    line += ' ';
    line += quote(a);
  }
  if (!has_seed) line += " --seed " + std::to_string(seed);
  return line;
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.output.empty() || g.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(g.output, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output '" + g.output + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + g.output + "'");
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::vector<Input> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  const fs::path dir = fs::path(path).parent_path();
  std::vector<Input> inputs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tok(line);
    std::string a;
    std::string b;
    if (!(tok >> a) || a.front() == '#') continue;
    std::string extra;
    if (tok >> b && tok >> extra) throw ParseError(lineno, "manifest: expected '<label> <path>'");
    Input item;
    if (b.empty()) {
      item.path = a;
      item.label = stem_of(a);
    } else {
      item.label = a;
      item.path = b;
    }
    if (fs::path(item.path).is_relative() && !dir.empty()) item.path = (dir / item.path).string();
    inputs.push_back(item);
  }
  return inputs;
}

std::vector<Input> gather_inputs(const std::vector<std::string>& paths, const std::string& manifest) {
  if (!manifest.empty() && !paths.empty()) {
    throw ArgumentError("give either input paths or --manifest, not both");
  }
  if (!manifest.empty()) return read_manifest(manifest);
  std::vector<Input> inputs;
  for (const auto& p : paths) inputs.push_back({stem_of(p), p});
  return inputs;
}

// A fingerprint file's first data line is "re,im"; an edge list's is "u v".
bool is_fingerprint_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return line.find(',') != std::string::npos;
  }
  return false;
}

Graph load_graph(const std::string& path, const SpectrumFlags* spec, const Globals& g, std::ostream& err) {
  ParseStats stats;
  Graph graph = read_edge_list(path, &stats);
  if (!g.quiet && (stats.self_loops > 0 || stats.duplicates > 0)) {
    err << "warning: " << path << ": dropped " << stats.self_loops << " self-loop(s) and "
        << stats.duplicates << " duplicate edge(s)\n";
  }
  if (spec != nullptr && spec->lcc) graph = largest_component(graph);
  return graph;
}

// Loads every input as a fingerprint, solving graph inputs on the fly. When
// -r was not given, a fingerprint input's own r is used for the graphs.
std::vector<Fingerprint> load_fingerprints(const std::vector<Input>& inputs, const SpectrumFlags& f,
                                           const Globals& g, std::ostream& err) {
  std::vector<char> is_fp;
  std::size_t r = f.r;
  bool r_fixed = f.r_explicit;
  for (const auto& in : inputs) {
    is_fp.push_back(is_fingerprint_file(in.path));
    if (is_fp.back() && !r_fixed) {
      r = read_fingerprint(in.path).r();
      r_fixed = true;
    }
  }
  std::vector<Fingerprint> fps;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (is_fp[i]) {
      fps.push_back(read_fingerprint(inputs[i].path));
    } else {
      fps.push_back(top_eigenvalues(load_graph(inputs[i].path, &f, g, err), r, f.options()));
    }
    if (fps.back().r() != fps.front().r()) {
      throw DimensionError("r mismatch: '" + inputs[i].path + "' has r=" + std::to_string(fps.back().r()) +
                           " but '" + inputs[0].path + "' has r=" + std::to_string(fps.front().r()));
    }
  }
  return fps;
}

json fingerprint_json(const Fingerprint& fp) { return json::parse(fingerprint_to_json(fp)); }

json graph_json(const Graph& graph) {
  json j;
  j["n"] = graph.num_nodes();
  j["m"] = graph.num_edges();
  auto& nodes = j["nodes"] = json::array();
  for (auto id : graph.node_ids()) nodes.push_back(id);
  auto& edges = j["edges"] = json::array();
  for (const auto& e : graph.edges()) edges.push_back({graph.id(e.u), graph.id(e.v)});
  return j;
}

std::string graph_output(const Globals& g, const std::string& cmd, const std::string& meta,
                         const Graph& graph) {
  if (g.format == "json") {
    json j = graph_json(graph);
    j["cmd"] = cmd;
    j["meta"] = meta;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# cmd: " << cmd << '\n';
  if (!meta.empty()) out << "# " << meta << '\n';
  write_edge_list(out, graph);
  return out.str();
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream in(item);
    double x = 0.0;
    if (!(in >> x) || !(in >> std::ws).eof()) throw ArgumentError(what + ": invalid number '" + item + "'");
    v.push_back(x);
  }
  return v;
}

std::vector<std::string> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels '" + path + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    labels.push_back(line);
  }
  return labels;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated non-backtracking spectral distance between graphs", "tnbsd"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed for stochastic commands");
  app.add_flag("-q,--quiet", g.quiet, "Suppress warnings");
  app.add_option("-o,--output", g.output, "Write the primary output here instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  SpectrumFlags spec;
  TuningFlags tune;
  std::string manifest;
  std::vector<std::string> paths;

  // eigs
  auto* eigs = app.add_subcommand("eigs", "Fingerprint: the r largest-magnitude eigenvalues of B'");
  std::string graph_path;
  eigs->add_option("graph", graph_path, "Edge-list file")->required();

  // distance
  auto* dist = app.add_subcommand("distance", "Distance between two graphs or fingerprints");
  dist->add_option("inputs", paths, "Two edge-list or fingerprint files")->expected(2)->required();
  add_tuning_flags(dist, tune);

  // matrix
  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix");
  matrix->add_option("inputs", paths, "Edge-list or fingerprint files");
  matrix->add_option("--manifest", manifest, "File of '<label> <path>' lines");
  add_tuning_flags(matrix, tune);

  // generate
  auto* gen = app.add_subcommand("generate", "Random graph from one of the models er ba ws cm kr hg");
  ModelSpec model;
  std::string model_name_arg;
  std::string initiator;
  gen->add_option("model", model_name_arg, "er, ba, ws, cm, kr or hg")->required();
  gen->add_option("-n", model.n, "Number of vertices")->required();
  gen->add_option("-k", model.mean_degree, "Target mean degree")->required();
  gen->add_option("--gamma", model.gamma, "Degree exponent (cm, hg)");
  gen->add_option("--beta", model.ws_beta, "Rewiring probability (ws)");
  gen->add_option("--initiator", initiator, "Initiator a,b,b,d (kr)");
  gen->add_option("--noise", model.kr_noise, "Per-level initiator noise (kr)");
  gen->add_option("--temperature", model.hg_temperature, "Temperature in [0,1) (hg)");

  // sample
  auto* samp = app.add_subcommand("sample", "Sample a subgraph");
  SampleSpec sspec;
  std::string method = "es";
  samp->add_option("graph", graph_path, "Edge-list file")->required();
  samp->add_option("--method", method, "ns, es, rw or rj")->check(CLI::IsMember({"ns", "es", "rw", "rj"}));
  samp->add_option("--fraction", sspec.edge_fraction, "Stop once this fraction of edges is collected");
  samp->add_option("--jump", sspec.jump_prob, "Teleport probability (rj)");

  // rewire
  auto* rew = app.add_subcommand("rewire", "Degree-preserving rewiring");
  double fraction = 0.0;
  rew->add_option("graph", graph_path, "Edge-list file")->required();
  rew->add_option("--fraction", fraction, "Fraction of original edges to replace")->required();

  // profile
  auto* prof = app.add_subcommand("profile", "Distance versus rewired fraction, with a null baseline");
  std::string fractions_arg;
  std::string grid_arg = "0.001,0.2,10";
  std::size_t ensemble = 20;
  prof->add_option("graph", graph_path, "Edge-list file")->required();
  prof->add_option("--fractions", fractions_arg, "Comma-separated ascending fractions");
  prof->add_option("--grid", grid_arg, "Log-spaced fractions lo,hi,count (default 0.001,0.2,10)");
  prof->add_option("--ensemble", ensemble, "Configuration-model ensemble size");
  add_tuning_flags(prof, tune);

  // cluster
  auto* clus = app.add_subcommand("cluster", "Kernel PCA + Gaussian mixture clustering");
  ClusterOptions copt;
  std::string labels_path;
  std::string embedding_path;
  clus->add_option("inputs", paths, "Edge-list or fingerprint files");
  clus->add_option("--manifest", manifest, "File of '<label> <path>' lines; labels are ground truth");
  clus->add_option("--k", copt.k, "Number of mixture components");
  clus->add_option("--dims", copt.dims, "Kernel PCA dimensions");
  clus->add_option("--restarts", copt.restarts, "EM restarts");
  clus->add_option("--labels", labels_path, "Ground-truth labels, one per line");
  clus->add_option("--embedding", embedding_path, "Also write the x,y,label scatter CSV here");
  add_tuning_flags(clus, tune);

  // kstest
  auto* ks = app.add_subcommand("kstest", "KS tests on real and imaginary parts of two fingerprints");
  double alpha = 0.1;
  int bonferroni = 14;
  ks->add_option("inputs", paths, "Two edge-list or fingerprint files")->expected(2)->required();
  ks->add_option("--alpha", alpha, "Family significance level");
  ks->add_option("--bonferroni", bonferroni, "Number of comparisons for the Bonferroni correction");

  // timeline
  auto* tl = app.add_subcommand("timeline", "Distance timeline with anomaly flags");
  std::string mode = "consecutive";
  std::size_t base = 0;
  tl->add_option("inputs", paths, "Ordered edge-list or fingerprint files");
  tl->add_option("--manifest", manifest, "File of '<label> <path>' lines in time order");
  tl->add_option("--mode", mode, "consecutive or fixed")->check(CLI::IsMember({"consecutive", "fixed"}));
  tl->add_option("--base", base, "Baseline index for fixed mode");
  add_tuning_flags(tl, tune);

  try {
    spec = spectrum_defaults();
    for (auto* sub : {eigs, dist, matrix, prof, clus, ks, tl}) add_spectrum_flags(sub, spec);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::kUsage);
  }

  const std::string cmd = command_line(args, g.seed);
  try {
    if (*eigs) {
      const Fingerprint fp = top_eigenvalues(load_graph(graph_path, &spec, g, err), spec.r, spec.options());
      if (g.format == "json") {
        json j = fingerprint_json(fp);
        j["cmd"] = cmd;
        emit(g, out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "# cmd: " << cmd << '\n';
        write_fingerprint_csv(s, fp);
        emit(g, out, s.str());
      }
    } else if (*dist) {
      const auto fps = load_fingerprints(gather_inputs(paths, ""), spec, g, err);
      const double d = tnbsd(fps[0], fps[1], tune.params());
      if (g.format == "json") {
        json j;
        j["distance"] = d;
        j["r"] = fps[0].r();
        j["cmd"] = cmd;
        emit(g, out, j.dump(2) + "\n");
      } else {
        emit(g, out, format_double(d) + "\n");
      }
    } else if (*matrix) {
      const auto inputs = gather_inputs(paths, manifest);
      if (inputs.empty()) throw ArgumentError("matrix: no inputs");
      const auto fps = load_fingerprints(inputs, spec, g, err);
      const Eigen::MatrixXd d = distance_matrix(fps, tune.params());
      std::vector<std::string> labels;
      for (const auto& in : inputs) labels.push_back(in.label);
      if (g.format == "json") {
        json j;
        j["labels"] = labels;
        auto& rows = j["distances"] = json::array();
        for (Eigen::Index i = 0; i < d.rows(); ++i) {
          std::vector<double> row(d.cols());
          for (Eigen::Index k = 0; k < d.cols(); ++k) row[k] = d(i, k);
          rows.push_back(row);
        }
        j["cmd"] = cmd;
        emit(g, out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "# cmd: " << cmd << '\n';
        write_distance_matrix_csv(s, d, labels);
        emit(g, out, s.str());
      }
    } else if (*gen) {
      model.model = parse_model(model_name_arg);
      model.seed = g.seed;
      if (!initiator.empty()) {
        const auto v = parse_list(initiator, "--initiator");
        if (v.size() != 4) throw ArgumentError("--initiator needs four values a,b,b,d");
        model.kr_initiator = {v[0], v[1], v[2], v[3]};
      }
      const Graph graph = generate(model);
      emit(g, out, graph_output(g, cmd, model.describe(), graph));
    } else if (*samp) {
      sspec.method = parse_sample_method(method);
      sspec.seed = g.seed;
      const Graph graph = sample(load_graph(graph_path, nullptr, g, err), sspec);
      emit(g, out, graph_output(g, cmd, sspec.describe(), graph));
    } else if (*rew) {
      RewireStats stats;
      const Graph src = load_graph(graph_path, nullptr, g, err);
      const Graph graph = rewire(src, fraction, g.seed, &stats);
      std::ostringstream meta;
      meta << "fraction=" << fraction << " changed=" << stats.changed << " swaps=" << stats.swaps
           << " attempts=" << stats.attempts << " seed=" << g.seed;
      // fraction 0 leaves the canonical edge list untouched.
      if (fraction == 0.0 && g.format == "csv") {
        emit(g, out, to_edge_list(graph));
      } else {
        emit(g, out, graph_output(g, cmd, meta.str(), graph));
      }
    } else if (*prof) {
      std::vector<double> fr;
      if (!fractions_arg.empty()) {
        fr = parse_list(fractions_arg, "--fractions");
      } else {
        const auto gv = parse_list(grid_arg, "--grid");
        if (gv.size() != 3 || !(gv[0] > 0.0 && gv[1] >= gv[0]) || gv[2] < 1.0) {
          throw ArgumentError("--grid needs lo,hi,count with 0 < lo <= hi and count >= 1");
        }
        const auto count = static_cast<std::size_t>(gv[2]);
        for (std::size_t i = 0; i < count; ++i) {
          const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
          fr.push_back(std::exp(std::log(gv[0]) + t * (std::log(gv[1]) - std::log(gv[0]))));
        }
      }
      const Graph src = load_graph(graph_path, &spec, g, err);
      const RewiringProfile p = rewiring_profile(src, fr, ensemble, spec.r, tune.params(), g.seed, spec.options());
      std::size_t dropped = 0;
      for (auto x : p.dropped_edges) dropped += x;
      if (g.format == "json") {
        json j;
        j["fractions"] = p.fractions;
        j["distances"] = p.distances;
        j["baseline"] = {{"mean", p.baseline.mean}, {"std", p.baseline.std},
                         {"distances", p.baseline_distances}, {"dropped_edges", p.dropped_edges}};
        j["cmd"] = cmd;
        emit(g, out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "# cmd: " << cmd << '\n' << "fraction,distance\n";
        for (std::size_t i = 0; i < p.fractions.size(); ++i) {
          s << format_double(p.fractions[i]) << ',' << format_double(p.distances[i]) << '\n';
        }
        s << "# baseline mean=" << format_double(p.baseline.mean) << " std=" << format_double(p.baseline.std)
          << " ensemble=" << p.baseline_distances.size() << " dropped_edges=" << dropped << '\n';
        emit(g, out, s.str());
      }
    } else if (*clus) {
      const auto inputs = gather_inputs(paths, manifest);
      std::vector<std::string> labels;
      if (!labels_path.empty()) {
        labels = read_labels(labels_path);
      } else if (!manifest.empty()) {
        for (const auto& in : inputs) labels.push_back(in.label);
      }
      if (inputs.size() < copt.k) {
        throw ArgumentError("cluster: fewer points than components (" + std::to_string(inputs.size()) +
                            " inputs, k=" + std::to_string(copt.k) + ")");
      }
      const auto fps = load_fingerprints(inputs, spec, g, err);
      copt.seed = g.seed;
      copt.tuning = tune.params();
      const ClusterResult res = cluster_fingerprints(fps, copt, labels);
      const auto& pts = res.embedding.points;
      if (!embedding_path.empty()) {
        std::ostringstream e;
        e << "# cmd: " << cmd << '\n';
        for (Eigen::Index c = 0; c < pts.cols(); ++c) {
          e << (pts.cols() == 2 ? (c == 0 ? "x" : "y") : "x" + std::to_string(c + 1)) << ',';
        }
        e << "label\n";
        for (Eigen::Index i = 0; i < pts.rows(); ++i) {
          for (Eigen::Index c = 0; c < pts.cols(); ++c) e << format_double(pts(i, c)) << ',';
          e << (labels.empty() ? inputs[i].label : labels[i]) << '\n';
        }
        Globals eg = g;
        eg.output = embedding_path;
        emit(eg, out, e.str());
      }
      if (g.format == "json") {
        json j;
        j["assignments"] = res.mixture.assignments;
        j["inputs"] = json::array();
        for (const auto& in : inputs) j["inputs"].push_back(in.path);
        j["log_likelihood"] = res.mixture.log_likelihood;
        if (res.purity) j["purity"] = *res.purity;
        j["cmd"] = cmd;
        emit(g, out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "# cmd: " << cmd << '\n' << "index,input,label,cluster\n";
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          s << i << ',' << inputs[i].path << ',' << (labels.empty() ? "" : labels[i]) << ','
            << res.mixture.assignments[i] << '\n';
        }
        s << "# log_likelihood=" << format_double(res.mixture.log_likelihood);
        if (res.purity) s << " purity=" << format_double(*res.purity);
        s << '\n';
        emit(g, out, s.str());
      }
      if (res.purity && !g.output.empty() && g.output != "-") {
        out << "purity=" << format_double(*res.purity) << '\n';
      }
    } else if (*ks) {
      const auto fps = load_fingerprints(gather_inputs(paths, ""), spec, g, err);
      const auto [re, im] = fingerprint_ks_test(fps[0], fps[1], alpha, bonferroni);
      if (g.format == "json") {
        json j;
        auto row = [](const KSResult& r) {
          return json{{"statistic", r.statistic}, {"p_value", r.p_value}, {"rejected", r.rejected}};
        };
        j["real"] = row(re);
        j["imag"] = row(im);
        j["alpha"] = alpha;
        j["bonferroni"] = bonferroni;
        j["cmd"] = cmd;
        emit(g, out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "# cmd: " << cmd << '\n'
          << "# alpha=" << format_double(alpha) << " bonferroni=" << bonferroni
          << " level=" << format_double(alpha / bonferroni) << '\n'
          << "axis,statistic,p_value,rejected\n";
        for (const auto& [name, r] : {std::pair{"real", re}, std::pair{"imag", im}}) {
          s << name << ',' << format_double(r.statistic) << ',' << format_double(r.p_value) << ','
            << (r.rejected ? "true" : "false") << '\n';
        }
        emit(g, out, s.str());
      }
    } else if (*tl) {
      const auto inputs = gather_inputs(paths, manifest);
      if (inputs.size() < 2) throw ArgumentError("timeline: need at least 2 inputs");
      const auto fps = load_fingerprints(inputs, spec, g, err);
      const TimelineMode tm = mode == "fixed" ? TimelineMode::kFixedBaseline : TimelineMode::kConsecutive;
      const TimelineReport rep = timeline(fps, tm, base, tune.params());
      if (g.format == "json") {
        json j;
        j["steps"] = rep.steps;
        j["distances"] = rep.distances;
        j["flags"] = rep.flags;
        j["labels"] = json::array();
        for (auto st : rep.steps) j["labels"].push_back(inputs[st].label);
        j["mean"] = rep.mean;
        j["std"] = rep.std;
        j["anomalies"] = rep.anomalies;
        j["cmd"] = cmd;
        emit(g, out, j.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "# cmd: " << cmd << '\n' << "step,distance,flag,label\n";
        for (std::size_t i = 0; i < rep.steps.size(); ++i) {
          s << rep.steps[i] << ',' << format_double(rep.distances[i]) << ',' << (rep.flags[i] ? 1 : 0)
            << ',' << inputs[rep.steps[i]].label << '\n';
        }
        s << "# mean=" << format_double(rep.mean) << " std=" << format_double(rep.std) << '\n';
        emit(g, out, s.str());
      }
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << " after " << e.restarts()
        << " restarts)\n";
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kNumeric);
  }
  return 0;
}

}  // namespace tnbsd::cli
