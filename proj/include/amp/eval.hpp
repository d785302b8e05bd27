#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "amp/baselines.hpp"

namespace amp {

/// Classical (Torgerson) MDS. Returns an m x dims configuration whose axes
/// follow descending eigenvalue order; negative eigenvalues give zero
/// coordinates and each axis is signed so its largest-magnitude entry is
/// positive.
Eigen::MatrixXd classical_mds(const DistanceMatrix& d, std::size_t dims);

struct KMeansOptions {
  std::size_t k = 2;
  std::size_t restarts = 10;
  std::size_t max_iters = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> labels;         // 0 ... k-1, numbered by first appearance
  Eigen::MatrixXd centroids;       // k x d
  double wcss = 0.0;               // within-cluster sum of squares
  std::vector<double> wcss_trace;  // per Lloyd iteration of the winning restart
};

/// Lloyd's algorithm from k-means++ seeds; best of `restarts` by WCSS.
KMeansResult kmeans(const Eigen::MatrixXd& points, const KMeansOptions& opts);

/// Mean silhouette of `points` under the given labelling (Euclidean
/// distance). Members of singleton clusters score 0.
double silhouette_mean(const Eigen::MatrixXd& points, std::span<const int> labels);

/// Fraction of point pairs on which the two partitions agree.
double rand_index(std::span<const int> a, std::span<const int> b);

}  // namespace amp
