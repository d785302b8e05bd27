#include "amp/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "amp/parallel.hpp"
#include "amp/transforms.hpp"

namespace amp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Number of DTW problems advanced together; each lane runs the scalar
// recurrence with identical operation order, so results match dtw_distance
// bit for bit.
constexpr std::size_t kLanes = 8;

inline double min3(double a, double b, double c) {
  const double ab = a < b ? a : b;
  return ab < c ? ab : c;
}

// DTW of x against up to kLanes series of equal length `len` stored in
// `ys` (interleaved: ys[j * kLanes + lane]).
std::array<double, kLanes> dtw_lanes(std::span<const double> x, const std::vector<double>& ys,
                                     std::size_t len) {
  std::vector<double> prev((len + 1) * kLanes, kInf);
  std::vector<double> cur((len + 1) * kLanes, kInf);
  for (std::size_t l = 0; l < kLanes; ++l) prev[l] = 0.0;

  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    for (std::size_t l = 0; l < kLanes; ++l) cur[l] = kInf;
    for (std::size_t j = 1; j <= len; ++j) {
      const double* y = &ys[(j - 1) * kLanes];
      const double* diag = &prev[(j - 1) * kLanes];
      const double* up = &prev[j * kLanes];
      const double* left = &cur[(j - 1) * kLanes];
      double* out = &cur[j * kLanes];
      for (std::size_t l = 0; l < kLanes; ++l) {
        const double d = xi - y[l];
        out[l] = d * d + min3(diag[l], up[l], left[l]);
      }
    }
    std::swap(prev, cur);
  }

  std::array<double, kLanes> result{};
  for (std::size_t l = 0; l < kLanes; ++l) result[l] = std::sqrt(prev[len * kLanes + l]);
  return result;
}

}  // namespace

std::string to_string(Metric m) { return m == Metric::Euclidean ? "euclidean" : "dtw"; }

std::vector<double> fourier_power_features(const TimeSeries& x) {
  const std::size_t n = x.size();
  if (!is_power_of_two(n) || n < 4) {
    throw std::invalid_argument("fourier_power_features: length must be a power of two >= 4");
  }
  const auto spectrum = transforms::real_dft(mean_center(x.samples()));
  const double nd = static_cast<double>(n);
  std::vector<double> power(n / 2 - 1);
  for (std::size_t f = 1; f < n / 2; ++f) power[f - 1] = 2.0 * std::norm(spectrum[f]) / nd;
  power.back() += std::norm(spectrum[n / 2]) / nd;
  return power;
}

std::vector<double> wavelet_coef_features(const TimeSeries& x) {
  if (!is_power_of_two(x.size()) || x.size() < 2) {
    throw std::invalid_argument("wavelet_coef_features: length must be a power of two >= 2");
  }
  const auto coeffs = transforms::haar_dwt(mean_center(x.samples()));
  return {coeffs.begin() + 1, coeffs.end()};
}

double dtw_distance(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("dtw_distance: empty input");
  std::vector<double> prev(y.size() + 1, kInf), cur(y.size() + 1, kInf);
  prev[0] = 0.0;
  for (double xi : x) {
    cur[0] = kInf;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const double d = xi - y[j - 1];
      cur[j] = d * d + min3(prev[j - 1], prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return std::sqrt(prev[y.size()]);
}

double dtw_distance(const TimeSeries& x, const TimeSeries& y) {
  return dtw_distance(x.samples(), y.samples());
}

DistanceMatrix distance_matrix(const LabeledDataset& d, Metric metric) {
  if (d.empty()) throw std::invalid_argument("distance_matrix: empty dataset");
  const std::size_t m = d.size();
  const std::size_t n = d.length();
  DistanceMatrix out;
  out.metric = metric;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));

  if (metric == Metric::Euclidean) {
    parallel_for(m, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double diff = d[i][k] - d[j][k];
          s += diff * diff;
        }
        out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::sqrt(s);
      }
    });
  } else {
    // Work items are (row, block of kLanes partner columns).
    std::vector<std::pair<std::size_t, std::size_t>> items;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; j += kLanes) items.emplace_back(i, j);
    }
    parallel_for(items.size(), [&](std::size_t w) {
      const auto [i, j0] = items[w];
      const std::size_t count = std::min(kLanes, m - j0);
      std::vector<double> ys(n * kLanes, 0.0);
      for (std::size_t l = 0; l < kLanes; ++l) {
        const auto& y = d[j0 + std::min(l, count - 1)];
        for (std::size_t k = 0; k < n; ++k) ys[k * kLanes + l] = y[k];
      }
      const auto dist = dtw_lanes(d[i].samples(), ys, n);
      for (std::size_t l = 0; l < count; ++l) {
        out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j0 + l)) = dist[l];
      }
    });
  }
  out.values.triangularView<Eigen::StrictlyLower>() = out.values.transpose();
  return out;
}

DistanceMatrix feature_distances(const Eigen::MatrixXd& features) {
  const Eigen::Index m = features.rows();
  DistanceMatrix out;
  out.metric = Metric::Euclidean;
  out.values = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double dist = (features.row(i) - features.row(j)).norm();
      out.values(i, j) = dist;
      out.values(j, i) = dist;
    }
  }
  return out;
}

Eigen::MatrixXd feature_rows(const LabeledDataset& d,
                             std::vector<double> (*features)(const TimeSeries&)) {
  if (d.empty()) throw std::invalid_argument("feature_rows: empty dataset");
  std::vector<std::vector<double>> rows(d.size());
  parallel_for(d.size(), [&](std::size_t i) { rows[i] = features(d[i]); });
  Eigen::MatrixXd out(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return out;
}

}  // namespace amp
