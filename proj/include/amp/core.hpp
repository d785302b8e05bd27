#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace amp {

/// Default value-quantization resolution used when locating the modal value
/// of a real-valued series.
inline constexpr double kDefaultQuantum = 1e-9;

/// Uniformly sampled real-valued series. Samples are finite and non-empty,
/// dt is strictly positive.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> samples, double t0 = 0.0, double dt = 1.0);

  std::span<const double> samples() const { return samples_; }
  const std::vector<double>& values() const { return samples_; }
  double t0() const { return t0_; }
  double dt() const { return dt_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  /// True when both series share length and grid (t0, dt compared exactly).
  bool aligned_with(const TimeSeries& other) const;

 private:
  std::vector<double> samples_;
  double t0_;
  double dt_;
};

using Meta = std::map<std::string, std::string>;

/// A set of aligned series with optional integer group labels.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::vector<TimeSeries> series,
                 std::optional<std::vector<int>> labels = std::nullopt,
                 Meta meta = {});

  const std::vector<TimeSeries>& series() const { return series_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }
  const Meta& meta() const { return meta_; }
  std::size_t size() const { return series_.size(); }
  bool empty() const { return series_.empty(); }
  const TimeSeries& operator[](std::size_t i) const { return series_[i]; }

  /// Length of every member series (0 for an empty dataset).
  std::size_t length() const { return series_.empty() ? 0 : series_.front().size(); }

 private:
  std::vector<TimeSeries> series_;
  std::optional<std::vector<int>> labels_;
  Meta meta_;
};

/// Relative frequency of the modal quantized value. Each sample maps to
/// floor(v / quantum) when quantum > 0; quantum == 0 means exact equality.
double intermittence(const TimeSeries& x, double quantum = kDefaultQuantum);
double intermittence(std::span<const double> x, double quantum = kDefaultQuantum);

/// Arithmetic mean of intermittence over every member series.
double mean_intermittence(const LabeledDataset& d, double quantum = kDefaultQuantum);

/// Element-wise sum of all series.
TimeSeries aggregate(const LabeledDataset& d);

TimeSeries mean_center(const TimeSeries& x);
std::vector<double> mean_center(std::span<const double> x);

bool is_power_of_two(std::size_t n);

double squared_norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace amp
