#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "amp/baselines.hpp"
#include "amp/core.hpp"
#include "amp/experiment.hpp"

namespace amp::io {

/// Malformed or unreadable input data (as opposed to a usage error).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset files are JSON objects:
//   {"t0": .., "dt": .., "labels": [..] | null, "meta": {"k": "v"}, "series": [[..], ..]}
void write_dataset(const LabeledDataset& d, std::ostream& os);
LabeledDataset read_dataset(std::istream& is);
void save_dataset(const LabeledDataset& d, const std::filesystem::path& path);
LabeledDataset load_dataset(const std::filesystem::path& path);

/// Feature CSV with header series_index,c_1,...,c_p.
void write_features(const Eigen::MatrixXd& features, std::ostream& os);
Eigen::MatrixXd read_features(std::istream& is);

/// Distance CSV with header series_index,d_1,...,d_m.
void write_distances(const DistanceMatrix& d, std::ostream& os);
DistanceMatrix read_distances(std::istream& is, Metric metric = Metric::Euclidean);

/// n x p basis matrix as CSV with header sample_index,b_1,...,b_p.
void write_basis(const Eigen::MatrixXd& basis, std::ostream& os);

struct EventLogRecord {
  std::string series_id;
  double timestamp = 0.0;
};

/// Parses `series_id,timestamp` CSV (header required). Errors carry the
/// offending line number.
std::vector<EventLogRecord> read_event_log(std::istream& is);

struct IngestResult {
  LabeledDataset dataset;
  std::vector<std::string> ids;    // series ids in dataset order
  std::size_t dropped_series = 0;  // ids with no events inside the window
  std::size_t dropped_events = 0;  // records outside [t_min, t_max)
};

/// Groups records by id (first appearance order), shifts times by t_min and
/// smooths each group onto a shared n-point grid over [0, t_max - t_min).
IngestResult ingest_events(const std::vector<EventLogRecord>& records, double bandwidth,
                           std::size_t n, double t_min, double t_max);
IngestResult ingest_events(const std::filesystem::path& path, double bandwidth, std::size_t n,
                           double t_min, double t_max);

/// Sweep configuration JSON. Keys (all optional): scenarios, gammas, varphis,
/// methods, replicates, m, n, T, h, et, quantum, kmeans_restarts,
/// center_individuals, seed.
SweepConfig parse_sweep_config(std::istream& is);

/// One row per grid cell per technique.
void write_experiment_cells(const ExperimentResult& r, std::ostream& os);
/// One row per replicate.
void write_experiment_records(const ExperimentResult& r, std::ostream& os);

/// Shortest decimal text that reads back to the identical double.
std::string format_number(double v);

}  // namespace amp::io
