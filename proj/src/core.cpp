#include "amp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace amp {

TimeSeries::TimeSeries(std::vector<double> samples, double t0, double dt)
    : samples_(std::move(samples)), t0_(t0), dt_(dt) {
  if (samples_.empty()) throw std::invalid_argument("TimeSeries: empty input");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw std::invalid_argument("TimeSeries: dt must be positive");
  if (!std::isfinite(t0_)) throw std::invalid_argument("TimeSeries: t0 must be finite");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw std::invalid_argument("TimeSeries: non-finite sample");
  }
}

bool TimeSeries::aligned_with(const TimeSeries& other) const {
  return size() == other.size() && t0_ == other.t0_ && dt_ == other.dt_;
}

LabeledDataset::LabeledDataset(std::vector<TimeSeries> series,
                               std::optional<std::vector<int>> labels, Meta meta)
    : series_(std::move(series)), labels_(std::move(labels)), meta_(std::move(meta)) {
  for (const auto& s : series_) {
    if (!s.aligned_with(series_.front())) {
      throw std::invalid_argument("LabeledDataset: unaligned series");
    }
  }
  if (labels_ && labels_->size() != series_.size()) {
    throw std::invalid_argument("LabeledDataset: label count does not match series count");
  }
}

double intermittence(std::span<const double> x, double quantum) {
  if (x.empty()) throw std::invalid_argument("intermittence: empty input");
  if (!(quantum >= 0.0)) throw std::invalid_argument("intermittence: quantum must be >= 0");

  std::vector<double> buckets(x.begin(), x.end());
  if (quantum > 0.0) {
    for (auto& v : buckets) v = std::floor(v / quantum);
  }
  std::sort(buckets.begin(), buckets.end());

  std::size_t best = 0;
  for (std::size_t i = 0; i < buckets.size();) {
    std::size_t j = i;
    while (j < buckets.size() && buckets[j] == buckets[i]) ++j;
    best = std::max(best, j - i);
    i = j;
  }
  return static_cast<double>(best) / static_cast<double>(x.size());
}

double intermittence(const TimeSeries& x, double quantum) {
  return intermittence(x.samples(), quantum);
}

double mean_intermittence(const LabeledDataset& d, double quantum) {
  if (d.empty()) throw std::invalid_argument("mean_intermittence: empty dataset");
  double total = 0.0;
  for (const auto& s : d.series()) total += intermittence(s, quantum);
  return total / static_cast<double>(d.size());
}

TimeSeries aggregate(const LabeledDataset& d) {
  if (d.empty()) throw std::invalid_argument("aggregate: empty dataset");
  const auto& first = d[0];
  std::vector<double> sum(first.size(), 0.0);
  for (const auto& s : d.series()) {
    if (!s.aligned_with(first)) throw std::invalid_argument("aggregate: unaligned series");
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += s[k];
  }
  return TimeSeries(std::move(sum), first.t0(), first.dt());
}

std::vector<double> mean_center(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean_center: empty input");
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] - mean;
  return out;
}

TimeSeries mean_center(const TimeSeries& x) {
  return TimeSeries(mean_center(x.samples()), x.t0(), x.dt());
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace amp
