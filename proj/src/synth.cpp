#include "amp/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "amp/parallel.hpp"

namespace amp::synth {

namespace {

constexpr std::uint64_t kEventStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kSubsetStream = 3;
constexpr std::uint64_t kMaxAttempts = 100;

// Kernel contributions beyond this many bandwidths underflow to zero.
constexpr double kKernelReach = 40.0;

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
              std::uint64_t attempt) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ attempt);
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

EventSequence::EventSequence(std::vector<double> times, double horizon)
    : times_(std::move(times)), horizon_(horizon) {
  if (!(horizon_ > 0.0)) throw std::invalid_argument("EventSequence: horizon must be positive");
  std::stable_sort(times_.begin(), times_.end());
  for (double t : times_) {
    if (!(t >= 0.0 && t < horizon_)) throw std::invalid_argument("EventSequence: time out of range");
  }
}

void RateParams::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("RateParams: amplitude must be >= 0");
  }
  if (!(gamma >= 0.0 && gamma <= 0.5)) throw std::invalid_argument("RateParams: gamma outside [0, 0.5]");
  if (!(t1_base > 0.0 && t2_base > 0.0)) throw std::invalid_argument("RateParams: periods must be positive");
  if (!(alpha1 >= 0.0 && alpha2 >= 0.0)) throw std::invalid_argument("RateParams: drifts must be >= 0");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Syn1: return "syn1";
    case Scenario::Syn2: return "syn2";
    case Scenario::Syn3: return "syn3";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "syn1") return Scenario::Syn1;
  if (lower == "syn2") return Scenario::Syn2;
  if (lower == "syn3") return Scenario::Syn3;
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

RateParams scenario_params(Scenario s, double amplitude, double gamma) {
  RateParams p;
  p.amplitude = amplitude;
  p.gamma = gamma;
  if (s == Scenario::Syn1) {
    p.t1_base = 2.0;
    p.t2_base = 8.0;
    p.alpha1 = 0.0;
    p.alpha2 = 0.0;
  } else {
    // Periods run 2 -> 4 and 4 -> 8 over t = 0 ... 255.
    p.t1_base = 2.0;
    p.t2_base = 4.0;
    p.alpha1 = 0.0078;
    p.alpha2 = 0.0314;
  }
  return p;
}

void ScenarioConfig::validate() const {
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("ScenarioConfig: m must be even and >= 2");
  if (!is_power_of_two(n)) throw std::invalid_argument("ScenarioConfig: n must be a power of two");
  if (!(horizon > 0.0)) throw std::invalid_argument("ScenarioConfig: horizon must be positive");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("ScenarioConfig: bandwidth must be positive");
}

double rate(double t, int group, const RateParams& p) {
  const double period1 = p.t1_base + p.alpha1 * t;
  const double period2 = p.t2_base + p.alpha2 * t;
  const double s1 = std::pow(std::sin(M_PI * t / period1), 2);
  const double s2 = std::pow(std::sin(M_PI * t / period2), 2);
  const double w1 = group == 1 ? p.gamma : 1.0 - p.gamma;
  return p.amplitude * (w1 * s1 + (1.0 - w1) * s2);
}

EventSequence sample_thinned(const std::function<double(double)>& intensity, double lambda_max,
                             double horizon, Rng& rng) {
  if (!(horizon > 0.0)) throw std::invalid_argument("sample_thinned: horizon must be positive");
  std::vector<double> times;
  if (!(lambda_max > 0.0)) return EventSequence(std::move(times), horizon);

  std::exponential_distribution<double> gap(lambda_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double t = gap(rng);
  while (t < horizon) {
    if (unit(rng) * lambda_max < intensity(t)) times.push_back(t);
    t += gap(rng);
  }
  return EventSequence(std::move(times), horizon);
}

EventSequence sample_nhpp(const RateParams& p, int group, double horizon, Rng& rng) {
  p.validate();
  if (group != 1 && group != 2) throw std::invalid_argument("sample_nhpp: group must be 1 or 2");
  return sample_thinned([&](double t) { return rate(t, group, p); }, p.amplitude, horizon, rng);
}

TimeSeries smooth_events(const EventSequence& e, double bandwidth, std::size_t n, double t0,
                         double dt) {
  if (e.empty()) throw std::invalid_argument("smooth_events: no events");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("smooth_events: bandwidth must be positive");
  if (n == 0 || !(dt > 0.0)) throw std::invalid_argument("smooth_events: invalid grid");

  std::vector<double> x(n, 0.0);
  const double reach = kKernelReach * bandwidth;
  const double last = static_cast<double>(n - 1);
  for (double tk : e.times()) {
    const double lo = std::ceil((tk - reach - t0) / dt);
    const double hi = std::floor((tk + reach - t0) / dt);
    if (hi < 0.0 || lo > last) continue;
    const auto first = static_cast<std::size_t>(std::max(lo, 0.0));
    const auto end = static_cast<std::size_t>(std::min(hi, last));
    for (std::size_t j = first; j <= end; ++j) {
      const double u = (t0 + static_cast<double>(j) * dt - tk) / bandwidth;
      x[j] += kInvSqrt2Pi * std::exp(-0.5 * u * u);
    }
  }
  const double theta = static_cast<double>(e.size());
  for (auto& v : x) v /= theta;
  return TimeSeries(std::move(x), t0, dt);
}

EventSequence inject_noise(const EventSequence& e, Rng& rng, const NoiseOptions& opts) {
  if (e.size() < opts.anchors) throw std::invalid_argument("inject_noise: fewer events than anchors");
  if (opts.anchors == 0 || opts.burst == 0) return e;

  std::vector<std::size_t> idx(e.size());
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first `anchors` slots become a uniform sample.
  for (std::size_t i = 0; i < opts.anchors; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }

  const double spacing = opts.burst > 1 ? opts.span / static_cast<double>(opts.burst - 1) : 0.0;
  std::vector<double> times = e.times();
  times.reserve(times.size() + opts.anchors * opts.burst);
  for (std::size_t a = 0; a < opts.anchors; ++a) {
    const double start = e.times()[idx[a]];
    for (std::size_t b = 0; b < opts.burst; ++b) {
      const double t = start + static_cast<double>(b) * spacing;
      if (t < e.horizon()) times.push_back(t);
    }
  }
  return EventSequence(std::move(times), e.horizon());
}

SyntheticData generate(const ScenarioConfig& cfg, const RateParams& p, const NoiseOptions& noise) {
  cfg.validate();
  p.validate();

  SyntheticData out;
  const std::size_t m = cfg.m;
  std::vector<bool> is_noisy(m, false);
  if (cfg.scenario == Scenario::Syn3) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    auto rng = substream(cfg.seed, kSubsetStream, 0);
    const std::size_t count = m / 10;
    for (std::size_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, m - 1);
      std::swap(order[i], order[pick(rng)]);
    }
    for (std::size_t i = 0; i < count; ++i) is_noisy[order[i]] = true;
  }

  const double dt = cfg.horizon / static_cast<double>(cfg.n);
  std::vector<std::optional<EventSequence>> events(m);
  std::vector<std::optional<TimeSeries>> series(m);
  parallel_for(m, [&](std::size_t i) {
    const int group = i < m / 2 ? 1 : 2;
    const std::size_t needed = is_noisy[i] ? std::max<std::size_t>(noise.anchors, 1) : 1;
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      auto rng = substream(cfg.seed, kEventStream, i, attempt);
      auto e = sample_nhpp(p, group, cfg.horizon, rng);
      if (e.size() < needed) continue;
      if (is_noisy[i]) {
        auto noise_rng = substream(cfg.seed, kNoiseStream, i, attempt);
        e = inject_noise(e, noise_rng, noise);
      }
      series[i] = smooth_events(e, cfg.bandwidth, cfg.n, 0.0, dt);
      events[i] = std::move(e);
      return;
    }
    throw std::runtime_error("generate: series " + std::to_string(i) +
                             " produced too few events after repeated attempts");
  });

  std::vector<TimeSeries> xs;
  std::vector<int> labels;
  xs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs.push_back(std::move(*series[i]));
    out.events.push_back(std::move(*events[i]));
    labels.push_back(i < m / 2 ? 1 : 2);
    if (is_noisy[i]) out.noisy.push_back(i);
  }

  Meta meta{
      {"scenario", to_string(cfg.scenario)},
      {"m", std::to_string(cfg.m)},
      {"n", std::to_string(cfg.n)},
      {"T", format_double(cfg.horizon)},
      {"h", format_double(cfg.bandwidth)},
      {"seed", std::to_string(cfg.seed)},
      {"varphi", format_double(p.amplitude)},
      {"gamma", format_double(p.gamma)},
      {"T1_base", format_double(p.t1_base)},
      {"T2_base", format_double(p.t2_base)},
      {"alpha1", format_double(p.alpha1)},
      {"alpha2", format_double(p.alpha2)},
      {"noisy_series", std::to_string(out.noisy.size())},
  };
  out.dataset = LabeledDataset(std::move(xs), std::move(labels), std::move(meta));
  return out;
}

LabeledDataset build_dataset(const ScenarioConfig& cfg, const RateParams& p) {
  return generate(cfg, p).dataset;
}

}  // namespace amp::synth
