#include "amp/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "amp/baselines.hpp"
#include "amp/eval.hpp"
#include "amp/parallel.hpp"

namespace amp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<Method> amp_method(Technique t) {
  switch (t) {
    case Technique::DftAmp: return Method::DFT;
    case Technique::DwtAmp: return Method::DWT;
    case Technique::DwptAmp: return Method::DWPT;
    case Technique::EmdAmp: return Method::EMD;
    default: return std::nullopt;
  }
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

}  // namespace

std::string to_string(Technique t) {
  switch (t) {
    case Technique::DftAmp: return "dft-amp";
    case Technique::DwtAmp: return "dwt-amp";
    case Technique::DwptAmp: return "dwpt-amp";
    case Technique::EmdAmp: return "emd-amp";
    case Technique::FourierPower: return "fourier-power";
    case Technique::WaveletCoef: return "wavelet-coef";
    case Technique::Euclidean: return "euclidean";
    case Technique::Dtw: return "dtw";
  }
  return "unknown";
}

Technique parse_technique(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Technique t : all_techniques()) {
    if (to_string(t) == lower) return t;
  }
  throw std::invalid_argument("unknown technique: " + std::string(name));
}

const std::vector<Technique>& all_techniques() {
  static const std::vector<Technique> all{Technique::DftAmp,       Technique::DwtAmp,
                                          Technique::DwptAmp,      Technique::EmdAmp,
                                          Technique::FourierPower, Technique::WaveletCoef,
                                          Technique::Euclidean,    Technique::Dtw};
  return all;
}

Scores evaluate_technique(const LabeledDataset& d, Technique t, const EvaluationOptions& opts) {
  if (!d.labels()) throw std::invalid_argument("evaluate_technique: dataset has no labels");
  const auto& truth = *d.labels();

  Eigen::MatrixXd cluster_input;
  DistanceMatrix distances;
  if (auto method = amp_method(t)) {
    cluster_input = extract_features(d, *method, opts.extract).values;
    distances = feature_distances(cluster_input);
  } else if (t == Technique::FourierPower) {
    cluster_input = feature_rows(d, &fourier_power_features);
    distances = feature_distances(cluster_input);
  } else if (t == Technique::WaveletCoef) {
    cluster_input = feature_rows(d, &wavelet_coef_features);
    distances = feature_distances(cluster_input);
  } else {
    distances = distance_matrix(d, t == Technique::Dtw ? Metric::DTW : Metric::Euclidean);
    cluster_input = classical_mds(distances, std::min(d.size(), opts.distance_kmeans_dims));
  }

  Scores scores;
  scores.silhouette = silhouette_mean(classical_mds(distances, 2), truth);
  KMeansOptions km;
  km.k = 2;
  km.restarts = opts.kmeans_restarts;
  km.seed = opts.seed;
  scores.rand = rand_index(kmeans(cluster_input, km).labels, truth);
  return scores;
}

void SweepConfig::validate() const {
  if (scenarios.empty() || gammas.empty() || amplitudes.empty() || techniques.empty()) {
    throw std::invalid_argument("SweepConfig: every grid axis needs at least one value");
  }
  if (replicates == 0) throw std::invalid_argument("SweepConfig: replicates must be >= 1");
  synth::ScenarioConfig probe;
  probe.m = m;
  probe.n = n;
  probe.horizon = horizon;
  probe.bandwidth = bandwidth;
  probe.validate();
  for (double g : gammas) {
    for (double a : amplitudes) synth::scenario_params(scenarios.front(), a, g).validate();
  }
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t scenario, std::size_t gamma,
                        std::size_t amplitude, std::size_t replicate) {
  std::uint64_t h = mix(0x5eed, seed);
  h = mix(h, scenario);
  h = mix(h, gamma);
  h = mix(h, amplitude);
  return mix(h, replicate);
}

ExperimentResult run_experiment(const SweepConfig& cfg) {
  cfg.validate();

  struct Job {
    std::size_t s, g, a, r;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < cfg.scenarios.size(); ++s)
    for (std::size_t g = 0; g < cfg.gammas.size(); ++g)
      for (std::size_t a = 0; a < cfg.amplitudes.size(); ++a)
        for (std::size_t r = 0; r < cfg.replicates; ++r) jobs.push_back({s, g, a, r});

  const std::size_t per_job = cfg.techniques.size();
  std::vector<ExperimentRecord> records(jobs.size() * per_job);

  parallel_for(jobs.size(), [&](std::size_t jid) {
    const Job& job = jobs[jid];
    const auto scenario = cfg.scenarios[job.s];
    const double gamma = cfg.gammas[job.g];
    const double amplitude = cfg.amplitudes[job.a];
    const std::uint64_t seed = cell_seed(cfg.seed, job.s, job.g, job.a, job.r);

    for (std::size_t t = 0; t < per_job; ++t) {
      auto& rec = records[jid * per_job + t];
      rec.scenario = scenario;
      rec.gamma = gamma;
      rec.amplitude = amplitude;
      rec.replicate = job.r;
      rec.technique = cfg.techniques[t];
      rec.silhouette_mean = rec.rand_index = rec.mean_intermittence = kNaN;
    }

    std::optional<LabeledDataset> data;
    try {
      synth::ScenarioConfig sc;
      sc.scenario = scenario;
      sc.m = cfg.m;
      sc.n = cfg.n;
      sc.horizon = cfg.horizon;
      sc.bandwidth = cfg.bandwidth;
      sc.seed = seed;
      data = synth::build_dataset(sc, synth::scenario_params(scenario, amplitude, gamma));
    } catch (const std::exception& e) {
      for (std::size_t t = 0; t < per_job; ++t) records[jid * per_job + t].error = e.what();
      return;
    }

    const double phi = mean_intermittence(*data, cfg.quantum);
    for (std::size_t t = 0; t < per_job; ++t) {
      auto& rec = records[jid * per_job + t];
      rec.mean_intermittence = phi;
      try {
        EvaluationOptions eo = cfg.eval;
        eo.seed = mix(seed, 0xc105e5u);
        const auto scores = evaluate_technique(*data, rec.technique, eo);
        rec.silhouette_mean = scores.silhouette;
        rec.rand_index = scores.rand;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    }
  });

  ExperimentResult result;
  result.config = cfg;
  result.records = std::move(records);

  // Records are grouped by cell with replicates contiguous per technique slot.
  for (std::size_t s = 0; s < cfg.scenarios.size(); ++s)
    for (std::size_t g = 0; g < cfg.gammas.size(); ++g)
      for (std::size_t a = 0; a < cfg.amplitudes.size(); ++a)
        for (std::size_t t = 0; t < per_job; ++t) {
          CellSummary cell;
          cell.scenario = cfg.scenarios[s];
          cell.gamma = cfg.gammas[g];
          cell.amplitude = cfg.amplitudes[a];
          cell.technique = cfg.techniques[t];
          double sil = 0.0, rand = 0.0, phi = 0.0;
          for (std::size_t jid = 0; jid < jobs.size(); ++jid) {
            const Job& job = jobs[jid];
            if (job.s != s || job.g != g || job.a != a) continue;
            const auto& rec = result.records[jid * per_job + t];
            if (rec.error) {
              ++cell.failures;
              continue;
            }
            ++cell.replicates;
            sil += rec.silhouette_mean;
            rand += rec.rand_index;
            phi += rec.mean_intermittence;
          }
          const double count = static_cast<double>(cell.replicates);
          cell.silhouette_mean = cell.replicates ? sil / count : kNaN;
          cell.rand_index = cell.replicates ? rand / count : kNaN;
          cell.mean_intermittence = cell.replicates ? phi / count : kNaN;
          result.cells.push_back(cell);
        }
  return result;
}

}  // namespace amp
