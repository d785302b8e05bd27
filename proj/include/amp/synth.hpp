#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "amp/core.hpp"

namespace amp::synth {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream, index, attempt). Distinct keys give
/// statistically independent streams, so results never depend on the order
/// in which series are generated.
Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
              std::uint64_t attempt = 0);

/// Sorted event times in [0, horizon).
class EventSequence {
 public:
  EventSequence(std::vector<double> times, double horizon);

  const std::vector<double>& times() const { return times_; }
  double horizon() const { return horizon_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }

 private:
  std::vector<double> times_;
  double horizon_;
};

/// Two-period almost-periodic rate mixture. Periods drift linearly:
/// T1(t) = t1_base + alpha1 t, T2(t) = t2_base + alpha2 t.
struct RateParams {
  double amplitude = 1.0;  // peak rate
  double gamma = 0.0;      // mixing, [0, 0.5]
  double t1_base = 2.0;
  double t2_base = 8.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  void validate() const;
};

enum class Scenario { Syn1, Syn2, Syn3 };

std::string to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

/// Preset periods and drifts for a scenario with the given amplitude/mixing.
RateParams scenario_params(Scenario s, double amplitude, double gamma);

struct ScenarioConfig {
  Scenario scenario = Scenario::Syn1;
  std::size_t m = 4000;
  std::size_t n = 1024;
  double horizon = 256.0;
  double bandwidth = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

struct NoiseOptions {
  std::size_t anchors = 50;
  std::size_t burst = 41;
  double span = 0.02;
};

/// Group 1: amplitude (gamma s1 + (1 - gamma) s2); group 2 swaps the weights,
/// with s_i = sin^2(pi t / T_i(t)).
double rate(double t, int group, const RateParams& p);

/// Lewis-Shedler thinning of a homogeneous Poisson(lambda_max) proposal on
/// [0, horizon). `intensity` must not exceed lambda_max.
EventSequence sample_thinned(const std::function<double(double)>& intensity, double lambda_max,
                             double horizon, Rng& rng);

/// Thinning with dominating rate equal to the amplitude.
EventSequence sample_nhpp(const RateParams& p, int group, double horizon, Rng& rng);

/// Gaussian-kernel series x(t) = (1/theta) sum_k K((t - t_k) / h) on the grid
/// t0 + j dt, j = 0 ... n - 1, with theta the number of events.
TimeSeries smooth_events(const EventSequence& e, double bandwidth, std::size_t n, double t0,
                         double dt);

/// Adds `burst` equally spaced events over `span` time units starting at each
/// of `anchors` distinct, uniformly chosen existing events. Events past the
/// horizon are dropped.
EventSequence inject_noise(const EventSequence& e, Rng& rng, const NoiseOptions& opts = {});

struct SyntheticData {
  LabeledDataset dataset;
  std::vector<EventSequence> events;
  std::vector<std::size_t> noisy;  // indices that received noise bursts
};

/// Generates the labelled two-group dataset (first m/2 series group 1).
SyntheticData generate(const ScenarioConfig& cfg, const RateParams& p,
                       const NoiseOptions& noise = {});

LabeledDataset build_dataset(const ScenarioConfig& cfg, const RateParams& p);

}  // namespace amp::synth
