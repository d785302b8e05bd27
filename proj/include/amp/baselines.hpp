#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amp/core.hpp"

namespace amp {

enum class Metric { Euclidean, DTW };

std::string to_string(Metric m);

/// Symmetric m x m matrix with zero diagonal and non-negative entries.
struct DistanceMatrix {
  Eigen::MatrixXd values;
  Metric metric = Metric::Euclidean;

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
};

/// Per-frequency power of the mean-centred series for f = 1 ... n/2 - 1.
/// The Nyquist power is folded into the last entry so the powers sum to the
/// series energy.
std::vector<double> fourier_power_features(const TimeSeries& x);

/// Full-depth Haar detail coefficients of the mean-centred series, coarsest
/// scale first.
std::vector<double> wavelet_coef_features(const TimeSeries& x);

/// Dynamic time warping with squared local cost, no window, steps
/// {(1,0), (0,1), (1,1)}; returns the square root of the optimal cost.
double dtw_distance(std::span<const double> x, std::span<const double> y);
double dtw_distance(const TimeSeries& x, const TimeSeries& y);

/// Pairwise distances of an aligned dataset (upper triangle, mirrored).
DistanceMatrix distance_matrix(const LabeledDataset& d, Metric metric);

/// Euclidean distances between the rows of a feature matrix.
DistanceMatrix feature_distances(const Eigen::MatrixXd& features);

/// Stacks per-series feature vectors into an m x p matrix.
Eigen::MatrixXd feature_rows(const LabeledDataset& d,
                             std::vector<double> (*features)(const TimeSeries&));

}  // namespace amp
