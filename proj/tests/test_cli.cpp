#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "amp/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(AMP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("amp_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with status 1") {
  CHECK(run("").status == 1);
  CHECK(run("bogus").status == 1);
  CHECK(run("synth --scenario syn1 --out x.json").status == 1);  // missing --seed
  CHECK(run("extract --in a --out b --et 1.5").status == 1);
  CHECK(run("--help").status == 0);
}

TEST_CASE("data errors exit with status 2") {
  TempDir tmp;
  CHECK(run("extract --in " + (tmp / "missing.json") + " --out " + (tmp / "f.csv")).status == 2);
  std::ofstream(tmp / "broken.json") << "{not json";
  CHECK(run("intermittence --in " + (tmp / "broken.json")).status == 2);
  CHECK(run("synth --scenario syn1 --m 3 --seed 1 --out " + (tmp / "d.json")).status == 2);
}

TEST_CASE("synth, extract, baseline and evaluate pipeline") {
  TempDir tmp;
  const std::string data = tmp / "d.json";
  REQUIRE(run("synth --scenario syn1 --m 40 --n 256 --T 64 --gamma 0 --varphi 5 --seed 7 --out " + data).status == 0);
  const auto d = amp::io::load_dataset(data);
  CHECK(d.size() == 40);
  CHECK(d.length() == 256);

  const std::string again = tmp / "d2.json";
  REQUIRE(run("synth --scenario syn1 --m 40 --n 256 --T 64 --gamma 0 --varphi 5 --seed 7 --out " + again).status == 0);
  CHECK(slurp(data) == slurp(again));

  const std::string feats = tmp / "f.csv";
  REQUIRE(run("extract --method emd --in " + data + " --out " + feats + " --basis-out " + (tmp / "b.csv")).status == 0);
  CHECK(slurp(feats).rfind("series_index,c_1", 0) == 0);
  CHECK(slurp(tmp / "b.csv").rfind("sample_index,b_1", 0) == 0);

  const std::string result = tmp / "r.json";
  REQUIRE(run("evaluate --features " + feats + " --labels-from " + data + " --out " + result).status == 0);
  const auto j = nlohmann::json::parse(slurp(result));
  CHECK(j.at("rand_index").get<double>() >= 0.0);
  CHECK(j.at("rand_index").get<double>() <= 1.0);
  CHECK(j.at("labels").size() == 40);
  CHECK(j.at("k").get<int>() == 2);

  const std::string dist = tmp / "dist.csv";
  REQUIRE(run("baseline --method euclidean --in " + data + " --out " + dist).status == 0);
  REQUIRE(run("evaluate --distances " + dist + " --labels-from " + data + " --out " + result).status == 0);
  CHECK(run("evaluate --labels-from " + data + " --out " + result).status == 1);

  const auto phi = run("intermittence --in " + data);
  CHECK(phi.status == 0);
  CHECK(phi.out.rfind("series_index,intermittence\n", 0) == 0);
  CHECK(phi.out.find("\nmean,") != std::string::npos);
}

TEST_CASE("ingest and experiment subcommands") {
  TempDir tmp;
  std::ofstream(tmp / "log.csv") << "series_id,timestamp\na,1.0\nb,2.5\na,3.0\nc,50\n";
  REQUIRE(run("ingest --in " + (tmp / "log.csv") + " --n 16 --t-min 0 --t-max 8 --out " + (tmp / "i.json")).status == 0);
  CHECK(amp::io::load_dataset(tmp / "i.json").size() == 2);

  std::ofstream(tmp / "cfg.json") << R"({"scenarios": ["syn1"], "gammas": [0], "varphis": [5],
    "methods": ["dft-amp", "euclidean"], "replicates": 1, "m": 20, "n": 128, "T": 32})";
  REQUIRE(run("experiment --config " + (tmp / "cfg.json") + " --seed 3 --out " + (tmp / "cells.csv") +
              " --records-out " + (tmp / "rec.csv"))
              .status == 0);
  const auto first = slurp(tmp / "rec.csv");
  REQUIRE(run("experiment --config " + (tmp / "cfg.json") + " --seed 3 --out " + (tmp / "cells.csv") +
              " --records-out " + (tmp / "rec.csv"))
              .status == 0);
  CHECK(slurp(tmp / "rec.csv") == first);
}
