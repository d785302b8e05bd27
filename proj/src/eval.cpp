#include "amp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace amp {

Eigen::MatrixXd classical_mds(const DistanceMatrix& d, std::size_t dims) {
  const Eigen::MatrixXd& dist = d.values;
  const Eigen::Index m = dist.rows();
  if (m == 0 || dist.cols() != m) throw std::invalid_argument("classical_mds: matrix must be square");
  if (dims == 0) throw std::invalid_argument("classical_mds: dims must be >= 1");
  const double scale = std::max(1.0, dist.cwiseAbs().maxCoeff());
  if ((dist - dist.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("classical_mds: distance matrix is not symmetric");
  }
  if (dist.diagonal().cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("classical_mds: distance matrix diagonal must be zero");
  }

  // B = -1/2 J D^2 J with J the centring matrix.
  Eigen::MatrixXd sq = dist.cwiseProduct(dist);
  const Eigen::VectorXd row_mean = sq.rowwise().mean();
  const Eigen::VectorXd col_mean = sq.colwise().mean().transpose();
  const double grand = sq.mean();
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      gram(i, j) = -0.5 * (sq(i, j) - row_mean(i) - col_mean(j) + grand);
    }
  }
  gram = 0.5 * (gram + gram.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw std::runtime_error("classical_mds: eigensolver failed");

  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(dims));
  const Eigen::Index usable = std::min<Eigen::Index>(m, static_cast<Eigen::Index>(dims));
  for (Eigen::Index axis = 0; axis < usable; ++axis) {
    const Eigen::Index src = m - 1 - axis;  // eigenvalues are ascending
    const double lambda = eig.eigenvalues()(src);
    if (!(lambda > 0.0)) continue;
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0.0) v = -v;
    coords.col(axis) = v * std::sqrt(lambda);
  }
  return coords;
}

namespace {

double sq_dist(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centroids,
               Eigen::Index c) {
  return (points.row(i) - centroids.row(c)).squaredNorm();
}

struct Run {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;
  double wcss = 0.0;
  std::vector<double> trace;
};

Eigen::MatrixXd plus_plus_seeds(const Eigen::MatrixXd& points, std::size_t k, std::mt19937_64& rng) {
  const Eigen::Index m = points.rows();
  Eigen::MatrixXd centroids(static_cast<Eigen::Index>(k), points.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, m - 1);
  centroids.row(0) = points.row(first(rng));

  std::vector<double> nearest(static_cast<std::size_t>(m), std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      auto& d = nearest[static_cast<std::size_t>(i)];
      d = std::min(d, sq_dist(points, i, centroids, static_cast<Eigen::Index>(c - 1)));
      total += d;
    }
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      chosen = m - 1;
      for (Eigen::Index i = 0; i < m; ++i) {
        target -= nearest[static_cast<std::size_t>(i)];
        if (target < 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = first(rng);
    }
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(chosen);
  }
  return centroids;
}

Run lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids, std::size_t max_iters) {
  const Eigen::Index m = points.rows();
  const Eigen::Index k = centroids.rows();
  Run run;
  run.labels.assign(static_cast<std::size_t>(m), -1);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < m; ++i) {
      int best = 0;
      double best_d = sq_dist(points, i, centroids, 0);
      for (Eigen::Index c = 1; c < k; ++c) {
        const double d = sq_dist(points, i, centroids, c);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      if (run.labels[static_cast<std::size_t>(i)] != best) {
        run.labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    // Repair empty clusters with the point farthest from its centroid.
    for (Eigen::Index c = 0; c < k; ++c) {
      if (std::find(run.labels.begin(), run.labels.end(), static_cast<int>(c)) != run.labels.end()) {
        continue;
      }
      Eigen::Index far = 0;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double d = sq_dist(points, i, centroids, run.labels[static_cast<std::size_t>(i)]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      run.labels[static_cast<std::size_t>(far)] = static_cast<int>(c);
      centroids.row(c) = points.row(far);
    }

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int c = run.labels[static_cast<std::size_t>(i)];
      sums.row(c) += points.row(i);
      counts[static_cast<std::size_t>(c)] += 1.0;
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0.0) {
        centroids.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      }
    }

    double wcss = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      wcss += sq_dist(points, i, centroids, run.labels[static_cast<std::size_t>(i)]);
    }
    run.trace.push_back(wcss);
  }

  run.centroids = std::move(centroids);
  run.wcss = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    run.wcss += sq_dist(points, i, run.centroids, run.labels[static_cast<std::size_t>(i)]);
  }
  return run;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansOptions& opts) {
  const auto m = static_cast<std::size_t>(points.rows());
  if (opts.k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
  if (m < opts.k) throw std::invalid_argument("kmeans: fewer points than clusters");
  if (!points.allFinite()) throw std::invalid_argument("kmeans: non-finite input");

  std::mt19937_64 rng(opts.seed);
  Run best;
  bool have = false;
  for (std::size_t r = 0; r < std::max<std::size_t>(opts.restarts, 1); ++r) {
    auto run = lloyd(points, plus_plus_seeds(points, opts.k, rng), std::max<std::size_t>(opts.max_iters, 1));
    if (!have || run.wcss < best.wcss) {
      best = std::move(run);
      have = true;
    }
  }

  // Canonical numbering by first appearance.
  std::map<int, int> rename;
  KMeansResult out;
  out.labels.reserve(m);
  for (int l : best.labels) {
    auto it = rename.try_emplace(l, static_cast<int>(rename.size())).first;
    out.labels.push_back(it->second);
  }
  out.centroids = Eigen::MatrixXd(best.centroids.rows(), best.centroids.cols());
  for (const auto& [from, to] : rename) out.centroids.row(to) = best.centroids.row(from);
  Eigen::Index next = static_cast<Eigen::Index>(rename.size());
  for (Eigen::Index c = 0; c < best.centroids.rows(); ++c) {
    if (!rename.count(static_cast<int>(c))) out.centroids.row(next++) = best.centroids.row(c);
  }
  out.wcss = best.wcss;
  out.wcss_trace = std::move(best.trace);
  return out;
}

double silhouette_mean(const Eigen::MatrixXd& points, std::span<const int> labels) {
  const auto m = static_cast<std::size_t>(points.rows());
  if (labels.size() != m) throw std::invalid_argument("silhouette_mean: label count mismatch");

  std::map<int, std::size_t> cluster_index;
  for (int l : labels) cluster_index.try_emplace(l, cluster_index.size());
  const std::size_t k = cluster_index.size();
  if (k < 2) throw std::invalid_argument("silhouette_mean: silhouette undefined for a single cluster");

  std::vector<std::size_t> cluster(m);
  std::vector<double> sizes(k, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cluster[i] = cluster_index[labels[i]];
    sizes[cluster[i]] += 1.0;
  }

  double total = 0.0;
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      sums[cluster[j]] += (points.row(static_cast<Eigen::Index>(i)) -
                           points.row(static_cast<Eigen::Index>(j))).norm();
    }
    const std::size_t own = cluster[i];
    if (sizes[own] <= 1.0) continue;  // singleton scores 0
    const double a = sums[own] / (sizes[own] - 1.0);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c != own) b = std::min(b, sums[c] / sizes[c]);
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(m);
}

double rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("rand_index: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("rand_index: need at least two points");
  const std::size_t m = a.size();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
    }
  }
  const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  return static_cast<double>(agree) / pairs;
}

}  // namespace amp
