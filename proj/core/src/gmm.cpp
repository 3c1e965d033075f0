#include "tnbsd/gmm.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "tnbsd/errors.hpp"
#include "tnbsd/rng.hpp"

namespace tnbsd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Component {
  double weight;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Eigen::LLT<Eigen::MatrixXd> chol;
  double log_norm;  // -d/2 log 2π - 1/2 log det Σ
};

// Factorizes the covariance, adding `reg` to the diagonal when it is
// singular. Returns whether regularization was applied.
bool factorize(Component& c, double reg) {
  const auto d = c.cov.rows();
  auto singular = [&](const Eigen::MatrixXd& m) {
    if (!m.allFinite()) return true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()[0];
    const double hi = es.eigenvalues()[d - 1];
    return !(lo > 64.0 * std::numeric_limits<double>::epsilon() * std::max(hi, 0.0)) || hi <= 0.0;
  };
  bool regularized = false;
  if (singular(c.cov)) {
    c.cov.diagonal().array() += reg;
    regularized = true;
    if (singular(c.cov)) throw NumericError("gmm: covariance singular even after regularization");
  }
  c.chol.compute(c.cov);
  if (c.chol.info() != Eigen::Success) throw NumericError("gmm: covariance factorization failed");
  const double log_det = 2.0 * c.chol.matrixL().toDenseMatrix().diagonal().array().log().sum();
  c.log_norm = -0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi) - 0.5 * log_det;
  return regularized;
}

double log_density(const Component& c, const Eigen::VectorXd& x) {
  const Eigen::VectorXd z = c.chol.matrixL().solve(x - c.mean);
  return c.log_norm - 0.5 * z.squaredNorm();
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& x) {
  const Eigen::RowVectorXd mu = x.colwise().mean();
  const Eigen::MatrixXd c = x.rowwise() - mu;
  return c.transpose() * c / static_cast<double>(x.rows());
}

// k-means++: first mean uniform, then each next with probability ∝ squared
// distance to the closest chosen mean.
std::vector<Eigen::VectorXd> seed_means(const Eigen::MatrixXd& x, std::size_t k, Rng& rng) {
  const auto n = x.rows();
  std::vector<Eigen::VectorXd> means;
  means.push_back(x.row(static_cast<Eigen::Index>(rng.below(n))).transpose());
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2[i] = (x.row(i).transpose() - means[0]).squaredNorm();
  while (means.size() < k) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (pick = 0; pick < n - 1; ++pick) {
        u -= d2[pick];
        if (u < 0.0) break;
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.below(n));
    }
    means.push_back(x.row(pick).transpose());
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (x.row(i).transpose() - means.back()).squaredNorm());
    }
  }
  return means;
}

GmmResult run_once(const Eigen::MatrixXd& x, const GmmOptions& opt, Rng& rng) {
  const auto n = x.rows();
  const auto k = static_cast<Eigen::Index>(opt.k);
  GmmResult res;
  std::vector<Component> comps(k);
  const Eigen::MatrixXd global_cov = sample_covariance(x);
  const auto means = seed_means(x, opt.k, rng);
  for (Eigen::Index j = 0; j < k; ++j) {
    comps[j].weight = 1.0 / static_cast<double>(k);
    comps[j].mean = means[j];
    comps[j].cov = global_cov;
    res.regularized |= factorize(comps[j], opt.regularization);
  }

  Eigen::MatrixXd logr(n, k);
  double prev = kNegInf;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    // E-step.
    double ll = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd xi = x.row(i).transpose();
      double top = kNegInf;
      for (Eigen::Index j = 0; j < k; ++j) {
        logr(i, j) = comps[j].weight > 0.0 ? std::log(comps[j].weight) + log_density(comps[j], xi) : kNegInf;
        top = std::max(top, logr(i, j));
      }
      double s = 0.0;
      for (Eigen::Index j = 0; j < k; ++j) s += std::exp(logr(i, j) - top);
      const double lse = top + std::log(s);
      logr.row(i).array() -= lse;
      ll += lse;
    }
    if (!std::isfinite(ll)) throw NumericError("gmm: log-likelihood is not finite");
    res.trace.push_back(ll);
    res.iterations = it + 1;
    const bool done = ll - prev < opt.tolerance;
    prev = ll;
    if (done) break;

    // M-step.
    const Eigen::MatrixXd r = logr.array().exp();
    for (Eigen::Index j = 0; j < k; ++j) {
      const double nk = r.col(j).sum();
      if (nk < 1e-12) {
        comps[j].weight = 0.0;
        continue;
      }
      comps[j].weight = nk / static_cast<double>(n);
      comps[j].mean = (x.transpose() * r.col(j)) / nk;
      const Eigen::MatrixXd c = x.rowwise() - comps[j].mean.transpose();
      comps[j].cov = (c.transpose() * r.col(j).asDiagonal() * c) / nk;
      comps[j].cov = 0.5 * (comps[j].cov + comps[j].cov.transpose());
      res.regularized |= factorize(comps[j], opt.regularization);
    }
  }

  res.log_likelihood = prev;
  res.assignments.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    logr.row(i).maxCoeff(&best);
    res.assignments[i] = static_cast<int>(best);
  }
  for (auto& c : comps) {
    res.weights.push_back(c.weight);
    res.means.push_back(c.mean);
    res.covariances.push_back(c.cov);
  }
  return res;
}

}  // namespace

GmmResult gmm_em(const Eigen::MatrixXd& points, const GmmOptions& opt) {
  if (opt.k < 1) throw ArgumentError("gmm: k must be >= 1");
  if (opt.restarts < 1) throw ArgumentError("gmm: restarts must be >= 1");
  if (static_cast<std::size_t>(points.rows()) < opt.k) {
    throw ArgumentError("gmm: fewer points than components (" + std::to_string(points.rows()) +
                        " points, k=" + std::to_string(opt.k) + ")");
  }
  if (!points.allFinite()) throw NumericError("gmm: points contain non-finite values");
  GmmResult best;
  best.log_likelihood = kNegInf;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    Rng rng(opt.seed, 0x676d6d00 + r);
    GmmResult res = run_once(points, opt, rng);
    res.restart = r;
    if (res.log_likelihood > best.log_likelihood) best = std::move(res);
  }
  return best;
}

double purity(std::span<const int> assignments, std::span<const std::string> labels) {
  if (assignments.size() != labels.size()) {
    throw DimensionError("purity: " + std::to_string(assignments.size()) + " assignments but " +
                         std::to_string(labels.size()) + " labels");
  }
  if (assignments.empty()) throw ArgumentError("purity: no points");
  std::map<int, std::map<std::string, std::size_t>> counts;
  for (std::size_t i = 0; i < labels.size(); ++i) ++counts[assignments[i]][labels[i]];
  std::size_t majority = 0;
  for (const auto& [cluster, by_label] : counts) {
    std::size_t top = 0;
    for (const auto& [label, c] : by_label) top = std::max(top, c);
    majority += top;
  }
  return static_cast<double>(majority) / static_cast<double>(labels.size());
}

}  // namespace tnbsd
