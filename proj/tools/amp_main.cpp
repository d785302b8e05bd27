// amp: command-line front end for AMP feature extraction, synthetic data
// generation, baselines and clustering evaluation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "amp/baselines.hpp"
#include "amp/eval.hpp"
#include "amp/experiment.hpp"
#include "amp/io.hpp"
#include "amp/project.hpp"
#include "amp/synth.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw amp::io::DataError("cannot write " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw amp::io::DataError("cannot read " + path);
  return is;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMP: aggregation, mode decomposition and projection features for intermittent "
               "time-series"};
  app.require_subcommand(1);
  // --h is the kernel bandwidth, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic dataset");
  std::string scenario = "syn1";
  amp::synth::ScenarioConfig scfg;
  double gamma = 0.0, varphi = 5.0;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth_cmd->add_option("--scenario", scenario, "syn1 | syn2 | syn3")
      ->check(CLI::IsMember({"syn1", "syn2", "syn3"}, CLI::ignore_case));
  synth_cmd->add_option("--m", scfg.m, "Number of series (even)")->capture_default_str();
  synth_cmd->add_option("--n", scfg.n, "Samples per series (power of two)")->capture_default_str();
  synth_cmd->add_option("--T", scfg.horizon, "Horizon in time units")->capture_default_str();
  synth_cmd->add_option("--h", scfg.bandwidth, "Kernel bandwidth")->capture_default_str();
  synth_cmd->add_option("--gamma", gamma, "Mixing parameter in [0, 0.5]")->capture_default_str();
  synth_cmd->add_option("--varphi", varphi, "Rate amplitude")->capture_default_str();
  synth_cmd->add_option("--seed", synth_seed, "Random seed")->required();
  synth_cmd->add_option("--out", synth_out, "Dataset JSON path")->required();

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "Smooth a series_id,timestamp event log");
  std::string ingest_in, ingest_out;
  double ingest_h = 0.05, t_min = 0.0, t_max = 0.0;
  std::size_t ingest_n = 1024;
  ingest_cmd->add_option("--in", ingest_in, "Event log CSV")->required();
  ingest_cmd->add_option("--h", ingest_h, "Kernel bandwidth")->capture_default_str();
  ingest_cmd->add_option("--n", ingest_n, "Grid size (power of two)")->capture_default_str();
  ingest_cmd->add_option("--t-min", t_min, "Window start")->required();
  ingest_cmd->add_option("--t-max", t_max, "Window end (exclusive)")->required();
  ingest_cmd->add_option("--out", ingest_out, "Dataset JSON path")->required();

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Compute AMP features");
  std::string method = "emd", extract_in, extract_out, basis_out;
  amp::ExtractOptions xopts;
  bool no_center = false;
  extract_cmd->add_option("--method", method, "emd | dft | dwt | dwpt")
      ->check(CLI::IsMember({"emd", "dft", "dwt", "dwpt"}, CLI::ignore_case))
      ->capture_default_str();
  extract_cmd->add_option("--in", extract_in, "Dataset JSON")->required();
  extract_cmd->add_option("--out", extract_out, "Feature CSV")->required();
  extract_cmd->add_option("--et", xopts.energy_threshold, "Energy threshold in (0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  extract_cmd->add_flag("--no-center-individuals", no_center,
                        "Fit raw series instead of mean-centred ones");
  extract_cmd->add_option("--basis-out", basis_out, "Optional CSV of the learnt basis columns");

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "Compute a baseline representation");
  std::string baseline_method, baseline_in, baseline_out;
  baseline_cmd->add_option("--method", baseline_method, "fourier-power | wavelet-coef | euclidean | dtw")
      ->check(CLI::IsMember({"fourier-power", "wavelet-coef", "euclidean", "dtw"}, CLI::ignore_case))
      ->required();
  baseline_cmd->add_option("--in", baseline_in, "Dataset JSON")->required();
  baseline_cmd->add_option("--out", baseline_out, "Feature or distance CSV")->required();

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Cluster features and score against labels");
  std::string eval_features, eval_distances, labels_from, eval_out;
  amp::KMeansOptions kopts;
  std::size_t eval_dims = 10;
  auto* feat_opt = eval_cmd->add_option("--features", eval_features, "Feature CSV");
  auto* dist_opt = eval_cmd->add_option("--distances", eval_distances, "Distance CSV");
  feat_opt->excludes(dist_opt);
  eval_cmd->add_option("--labels-from", labels_from, "Dataset JSON carrying true labels")->required();
  eval_cmd->add_option("--out", eval_out, "Result JSON")->required();
  eval_cmd->add_option("--k", kopts.k, "Number of clusters")->capture_default_str();
  eval_cmd->add_option("--restarts", kopts.restarts, "k-means restarts")->capture_default_str();
  eval_cmd->add_option("--seed", kopts.seed, "k-means seed")->capture_default_str();
  eval_cmd->add_option("--dims", eval_dims, "MDS dimensions for distance input")->capture_default_str();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run a scenario/gamma/varphi sweep");
  std::string exp_config, exp_out, exp_records;
  std::uint64_t exp_seed = 0;
  exp_cmd->add_option("--config", exp_config, "Sweep JSON")->required();
  exp_cmd->add_option("--seed", exp_seed, "Random seed")->required();
  exp_cmd->add_option("--out", exp_out, "Per-cell CSV")->required();
  exp_cmd->add_option("--records-out", exp_records, "Optional per-replicate CSV");

  // intermittence
  auto* phi_cmd = app.add_subcommand("intermittence", "Print per-series and mean intermittence");
  std::string phi_in;
  double quantum = amp::kDefaultQuantum;
  phi_cmd->add_option("--in", phi_in, "Dataset JSON")->required();
  phi_cmd->add_option("--quantum", quantum, "Value quantization step (0 = exact)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*synth_cmd) {
      scfg.scenario = amp::synth::parse_scenario(scenario);
      scfg.seed = synth_seed;
      const auto params = amp::synth::scenario_params(scfg.scenario, varphi, gamma);
      amp::io::save_dataset(amp::synth::build_dataset(scfg, params), synth_out);
    } else if (*ingest_cmd) {
      const auto result = amp::io::ingest_events(ingest_in, ingest_h, ingest_n, t_min, t_max);
      if (result.dropped_series > 0 || result.dropped_events > 0) {
        std::cerr << "warning: dropped " << result.dropped_series << " series and "
                  << result.dropped_events << " events outside the window\n";
      }
      amp::io::save_dataset(result.dataset, ingest_out);
    } else if (*extract_cmd) {
      const auto data = amp::io::load_dataset(extract_in);
      xopts.center_individuals = !no_center;
      const auto basis = amp::learn_basis(data, amp::parse_method(method), xopts);
      const auto features = amp::project_dataset(data, basis, xopts.center_individuals);
      auto os = open_out(extract_out);
      amp::io::write_features(features.values, os);
      if (!basis_out.empty()) {
        auto bos = open_out(basis_out);
        amp::io::write_basis(basis.columns(), bos);
      }
      std::cerr << "retained " << basis.cols() << " components ("
                << basis.retained_energy_fraction() << " of aggregate energy)\n";
    } else if (*baseline_cmd) {
      const auto data = amp::io::load_dataset(baseline_in);
      const auto technique = amp::parse_technique(baseline_method);
      auto os = open_out(baseline_out);
      if (technique == amp::Technique::FourierPower) {
        amp::io::write_features(amp::feature_rows(data, &amp::fourier_power_features), os);
      } else if (technique == amp::Technique::WaveletCoef) {
        amp::io::write_features(amp::feature_rows(data, &amp::wavelet_coef_features), os);
      } else {
        const auto metric = technique == amp::Technique::Dtw ? amp::Metric::DTW : amp::Metric::Euclidean;
        amp::io::write_distances(amp::distance_matrix(data, metric), os);
      }
    } else if (*eval_cmd) {
      if (eval_features.empty() && eval_distances.empty()) {
        std::cerr << "evaluate: one of --features or --distances is required\n";
        return kUsageError;
      }
      const auto data = amp::io::load_dataset(labels_from);
      if (!data.labels()) throw amp::io::DataError("evaluate: dataset carries no labels");
      const auto& truth = *data.labels();

      Eigen::MatrixXd cluster_input;
      amp::DistanceMatrix distances;
      if (!eval_features.empty()) {
        auto is = open_in(eval_features);
        cluster_input = amp::io::read_features(is);
        distances = amp::feature_distances(cluster_input);
      } else {
        auto is = open_in(eval_distances);
        distances = amp::io::read_distances(is);
        cluster_input = amp::classical_mds(distances, std::min(distances.size(), eval_dims));
      }
      if (static_cast<std::size_t>(cluster_input.rows()) != truth.size()) {
        throw amp::io::DataError("evaluate: row count does not match label count");
      }
      const auto km = amp::kmeans(cluster_input, kopts);
      nlohmann::json result;
      result["rand_index"] = amp::rand_index(km.labels, truth);
      result["silhouette_mean"] = amp::silhouette_mean(amp::classical_mds(distances, 2), truth);
      result["k"] = kopts.k;
      result["wcss"] = km.wcss;
      result["labels"] = km.labels;
      auto os = open_out(eval_out);
      os << result.dump(2) << '\n';
    } else if (*exp_cmd) {
      auto is = open_in(exp_config);
      auto cfg = amp::io::parse_sweep_config(is);
      cfg.seed = exp_seed;
      const auto result = amp::run_experiment(cfg);
      auto os = open_out(exp_out);
      amp::io::write_experiment_cells(result, os);
      if (!exp_records.empty()) {
        auto ros = open_out(exp_records);
        amp::io::write_experiment_records(result, ros);
      }
      std::size_t failures = 0;
      for (const auto& c : result.cells) failures += c.failures;
      if (failures > 0) std::cerr << "warning: " << failures << " replicate(s) failed\n";
    } else if (*phi_cmd) {
      const auto data = amp::io::load_dataset(phi_in);
      std::cout << "series_index,intermittence\n";
      for (std::size_t i = 0; i < data.size(); ++i) {
        std::cout << i << ',' << amp::io::format_number(amp::intermittence(data[i], quantum)) << '\n';
      }
      std::cout << "mean," << amp::io::format_number(amp::mean_intermittence(data, quantum)) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
