#include "amp/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "amp/synth.hpp"

namespace amp::io {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
    throw DataError("line " + std::to_string(line) + ": invalid number '" + t + "'");
  }
  return v;
}

// Reads a numeric CSV whose first column is an index; returns the remaining
// columns row by row.
std::vector<std::vector<double>> read_indexed_csv(std::istream& is, const std::string& first_col) {
  std::string line;
  if (!std::getline(is, line)) throw DataError("empty file");
  const auto header = split_csv_line(trim(line));
  if (header.empty() || trim(header[0]) != first_col) {
    throw DataError("line 1: expected header starting with '" + first_col + "'");
  }
  const std::size_t width = header.size() - 1;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(trim(line));
    if (fields.size() != width + 1) {
      throw DataError("line " + std::to_string(lineno) + ": expected " +
                      std::to_string(width + 1) + " fields");
    }
    std::vector<double> row(width);
    for (std::size_t k = 0; k < width; ++k) row[k] = parse_double(fields[k + 1], lineno);
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
std::vector<T> json_list(const json& j, const char* key, const std::vector<T>& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_array()) throw DataError(std::string("config: '") + key + "' must be a list");
  return j.at(key).get<std::vector<T>>();
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

void write_dataset(const LabeledDataset& d, std::ostream& os) {
  json j;
  j["t0"] = d.empty() ? 0.0 : d[0].t0();
  j["dt"] = d.empty() ? 1.0 : d[0].dt();
  j["labels"] = d.labels() ? json(*d.labels()) : json(nullptr);
  j["meta"] = json(d.meta());
  json series = json::array();
  for (const auto& s : d.series()) series.push_back(s.values());
  j["series"] = std::move(series);
  os << j.dump() << '\n';
}

LabeledDataset read_dataset(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw DataError(std::string("dataset: invalid JSON: ") + e.what());
  }
  try {
    const double t0 = j.at("t0").get<double>();
    const double dt = j.at("dt").get<double>();
    std::vector<TimeSeries> series;
    for (const auto& row : j.at("series")) series.emplace_back(row.get<std::vector<double>>(), t0, dt);
    std::optional<std::vector<int>> labels;
    if (j.contains("labels") && !j.at("labels").is_null()) labels = j.at("labels").get<std::vector<int>>();
    Meta meta;
    if (j.contains("meta") && !j.at("meta").is_null()) {
      for (const auto& [k, v] : j.at("meta").items()) {
        meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    if (series.empty()) throw DataError("dataset: no series");
    return LabeledDataset(std::move(series), std::move(labels), std::move(meta));
  } catch (const json::exception& e) {
    throw DataError(std::string("dataset: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("dataset: ") + e.what());
  }
}

void save_dataset(const LabeledDataset& d, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot write " + path.string());
  write_dataset(d, os);
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot read " + path.string());
  return read_dataset(is);
}

void write_features(const Eigen::MatrixXd& features, std::ostream& os) {
  os << "series_index";
  for (Eigen::Index c = 0; c < features.cols(); ++c) os << ",c_" << (c + 1);
  os << '\n';
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    os << i;
    for (Eigen::Index c = 0; c < features.cols(); ++c) os << ',' << format_number(features(i, c));
    os << '\n';
  }
}

Eigen::MatrixXd read_features(std::istream& is) {
  const auto rows = read_indexed_csv(is, "series_index");
  if (rows.empty()) throw DataError("features: no data rows");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return out;
}

void write_distances(const DistanceMatrix& d, std::ostream& os) {
  os << "series_index";
  for (Eigen::Index c = 0; c < d.values.cols(); ++c) os << ",d_" << (c + 1);
  os << '\n';
  for (Eigen::Index i = 0; i < d.values.rows(); ++i) {
    os << i;
    for (Eigen::Index c = 0; c < d.values.cols(); ++c) os << ',' << format_number(d.values(i, c));
    os << '\n';
  }
}

DistanceMatrix read_distances(std::istream& is, Metric metric) {
  DistanceMatrix d;
  d.metric = metric;
  d.values = read_features(is);
  if (d.values.rows() != d.values.cols()) throw DataError("distances: matrix must be square");
  return d;
}

void write_basis(const Eigen::MatrixXd& basis, std::ostream& os) {
  os << "sample_index";
  for (Eigen::Index c = 0; c < basis.cols(); ++c) os << ",b_" << (c + 1);
  os << '\n';
  for (Eigen::Index k = 0; k < basis.rows(); ++k) {
    os << k;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) os << ',' << format_number(basis(k, c));
    os << '\n';
  }
}

std::vector<EventLogRecord> read_event_log(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DataError("event log: empty file");
  const auto header = split_csv_line(trim(line));
  if (header.size() != 2 || trim(header[0]) != "series_id" || trim(header[1]) != "timestamp") {
    throw DataError("line 1: expected header 'series_id,timestamp'");
  }
  std::vector<EventLogRecord> records;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(trim(line));
    if (fields.size() != 2) throw DataError("line " + std::to_string(lineno) + ": expected 2 fields");
    EventLogRecord rec;
    rec.series_id = trim(fields[0]);
    if (rec.series_id.empty()) throw DataError("line " + std::to_string(lineno) + ": empty series_id");
    rec.timestamp = parse_double(fields[1], lineno);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw DataError("event log: no records");
  return records;
}

IngestResult ingest_events(const std::vector<EventLogRecord>& records, double bandwidth,
                           std::size_t n, double t_min, double t_max) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("ingest: bandwidth must be positive");
  if (!(t_max > t_min)) throw std::invalid_argument("ingest: t_max must exceed t_min");
  if (!is_power_of_two(n)) throw std::invalid_argument("ingest: n must be a power of two");
  if (records.empty()) throw DataError("ingest: no records");

  IngestResult out;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> times;
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& rec : records) {
    auto [it, inserted] = slot.try_emplace(rec.series_id, ids.size());
    if (inserted) {
      ids.push_back(rec.series_id);
      times.emplace_back();
    }
    if (rec.timestamp < t_min || rec.timestamp >= t_max) {
      ++out.dropped_events;
      continue;
    }
    times[it->second].push_back(rec.timestamp - t_min);
  }

  const double horizon = t_max - t_min;
  const double dt = horizon / static_cast<double>(n);
  std::vector<TimeSeries> series;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    // Guard against t - t_min rounding up to the horizon.
    for (auto& t : times[i]) t = std::min(t, std::nextafter(horizon, 0.0));
    if (times[i].empty()) {
      ++out.dropped_series;
      continue;
    }
    series.push_back(synth::smooth_events(synth::EventSequence(times[i], horizon), bandwidth, n, 0.0, dt));
    out.ids.push_back(ids[i]);
  }
  if (series.empty()) throw DataError("ingest: no series with events inside the window");

  Meta meta{{"source", "event-log"},
            {"h", format_number(bandwidth)},
            {"n", std::to_string(n)},
            {"t_min", format_number(t_min)},
            {"t_max", format_number(t_max)},
            {"dropped_series", std::to_string(out.dropped_series)}};
  out.dataset = LabeledDataset(std::move(series), std::nullopt, std::move(meta));
  return out;
}

IngestResult ingest_events(const std::filesystem::path& path, double bandwidth, std::size_t n,
                           double t_min, double t_max) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot read " + path.string());
  return ingest_events(read_event_log(is), bandwidth, n, t_min, t_max);
}

SweepConfig parse_sweep_config(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw DataError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("config: expected a JSON object");

  SweepConfig cfg;
  try {
    cfg.scenarios.clear();
    for (const auto& s : json_list<std::string>(j, "scenarios", {"syn1"})) {
      cfg.scenarios.push_back(synth::parse_scenario(s));
    }
    cfg.gammas = json_list<double>(j, "gammas", cfg.gammas);
    cfg.amplitudes = json_list<double>(j, "varphis", cfg.amplitudes);
    if (j.contains("methods")) {
      cfg.techniques.clear();
      for (const auto& m : json_list<std::string>(j, "methods", {})) {
        cfg.techniques.push_back(parse_technique(m));
      }
    }
    cfg.replicates = j.value("replicates", cfg.replicates);
    cfg.m = j.value("m", cfg.m);
    cfg.n = j.value("n", cfg.n);
    cfg.horizon = j.value("T", cfg.horizon);
    cfg.bandwidth = j.value("h", cfg.bandwidth);
    cfg.quantum = j.value("quantum", cfg.quantum);
    cfg.eval.extract.energy_threshold = j.value("et", cfg.eval.extract.energy_threshold);
    cfg.eval.extract.center_individuals =
        j.value("center_individuals", cfg.eval.extract.center_individuals);
    cfg.eval.kmeans_restarts = j.value("kmeans_restarts", cfg.eval.kmeans_restarts);
    cfg.seed = j.value("seed", cfg.seed);
  } catch (const json::exception& e) {
    throw DataError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  return cfg;
}

void write_experiment_cells(const ExperimentResult& r, std::ostream& os) {
  os << "scenario,gamma,varphi,method,replicates,failures,silhouette_mean,rand_index,"
        "mean_intermittence\n";
  for (const auto& c : r.cells) {
    os << synth::to_string(c.scenario) << ',' << format_number(c.gamma) << ','
       << format_number(c.amplitude) << ',' << to_string(c.technique) << ',' << c.replicates << ','
       << c.failures << ',' << format_number(c.silhouette_mean) << ','
       << format_number(c.rand_index) << ',' << format_number(c.mean_intermittence) << '\n';
  }
}

void write_experiment_records(const ExperimentResult& r, std::ostream& os) {
  os << "scenario,gamma,varphi,replicate,method,silhouette_mean,rand_index,mean_intermittence,"
        "error\n";
  for (const auto& rec : r.records) {
    std::string err = rec.error.value_or("");
    for (auto& ch : err) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    os << synth::to_string(rec.scenario) << ',' << format_number(rec.gamma) << ','
       << format_number(rec.amplitude) << ',' << rec.replicate << ',' << to_string(rec.technique)
       << ',' << format_number(rec.silhouette_mean) << ',' << format_number(rec.rand_index) << ','
       << format_number(rec.mean_intermittence) << ',' << err << '\n';
  }
}

}  // namespace amp::io
