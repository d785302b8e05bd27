#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amp/core.hpp"
#include "amp/project.hpp"
#include "amp/synth.hpp"

namespace amp {

/// Feature extraction or distance technique compared in the sweeps.
enum class Technique { DftAmp, DwtAmp, DwptAmp, EmdAmp, FourierPower, WaveletCoef, Euclidean, Dtw };

std::string to_string(Technique t);
Technique parse_technique(std::string_view name);
const std::vector<Technique>& all_techniques();

struct EvaluationOptions {
  ExtractOptions extract;
  std::size_t kmeans_restarts = 10;
  /// Upper bound on MDS dimensions fed to k-means for distance techniques.
  std::size_t distance_kmeans_dims = 10;
  std::uint64_t seed = 0;
};

struct Scores {
  double silhouette = 0.0;
  double rand = 0.0;
};

/// Clusters `d` with one technique and scores it against the dataset labels:
/// silhouette of the 2-D classical MDS representation, Rand index of
/// k-means (k = 2) on the full feature set (MDS coordinates for distance
/// techniques).
Scores evaluate_technique(const LabeledDataset& d, Technique t, const EvaluationOptions& opts);

struct SweepConfig {
  std::vector<synth::Scenario> scenarios{synth::Scenario::Syn1};
  std::vector<double> gammas{0.0};
  std::vector<double> amplitudes{5.0};
  std::vector<Technique> techniques = all_techniques();
  std::size_t replicates = 10;
  std::size_t m = 400;
  std::size_t n = 1024;
  double horizon = 256.0;
  double bandwidth = 0.05;
  double quantum = kDefaultQuantum;
  EvaluationOptions eval;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ExperimentRecord {
  synth::Scenario scenario = synth::Scenario::Syn1;
  double gamma = 0.0;
  double amplitude = 0.0;
  std::size_t replicate = 0;
  Technique technique = Technique::EmdAmp;
  double silhouette_mean = 0.0;
  double rand_index = 0.0;
  double mean_intermittence = 0.0;
  std::optional<std::string> error;
};

/// Per-cell means over successful replicates.
struct CellSummary {
  synth::Scenario scenario = synth::Scenario::Syn1;
  double gamma = 0.0;
  double amplitude = 0.0;
  Technique technique = Technique::EmdAmp;
  std::size_t replicates = 0;
  std::size_t failures = 0;
  double silhouette_mean = 0.0;
  double rand_index = 0.0;
  double mean_intermittence = 0.0;
};

struct ExperimentResult {
  SweepConfig config;
  std::vector<ExperimentRecord> records;  // grid order, replicate-major within a cell
  std::vector<CellSummary> cells;
};

/// Seed of the dataset for one (scenario, gamma, amplitude, replicate) cell.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t scenario, std::size_t gamma,
                        std::size_t amplitude, std::size_t replicate);

ExperimentResult run_experiment(const SweepConfig& cfg);

}  // namespace amp
