#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "amp/io.hpp"
#include "test_util.hpp"

using namespace amp;

TEST_CASE("format_number round trips exactly") {
  test::Gen g(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(g) * std::pow(10.0, static_cast<double>(i % 40) - 20.0);
    CHECK(std::stod(io::format_number(v)) == v);
  }
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(std::strtod(io::format_number(std::numeric_limits<double>::denorm_min()).c_str(), nullptr) ==
        std::numeric_limits<double>::denorm_min());
}

TEST_CASE("dataset round trip is bit-exact") {
  test::Gen g(2);
  std::vector<TimeSeries> s;
  for (int i = 0; i < 6; ++i) s.emplace_back(test::random_vector(g, 32, -1e-3, 1e3), 0.5, 0.1);
  const LabeledDataset d(s, std::vector<int>{1, 1, 1, 2, 2, 2}, Meta{{"scenario", "syn2"}, {"seed", "9"}});
  std::stringstream buf;
  io::write_dataset(d, buf);
  const auto back = io::read_dataset(buf);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back[i].values() == d[i].values());
    CHECK(back[i].t0() == 0.5);
    CHECK(back[i].dt() == 0.1);
  }
  CHECK(back.labels() == d.labels());
  CHECK(back.meta() == d.meta());

  const LabeledDataset unlabeled(s);
  std::stringstream buf2;
  io::write_dataset(unlabeled, buf2);
  CHECK_FALSE(io::read_dataset(buf2).labels().has_value());
}

TEST_CASE("malformed datasets are data errors") {
  std::istringstream bad_json("{\"series\": [[1, 2");
  CHECK_THROWS_AS(io::read_dataset(bad_json), io::DataError);
  std::istringstream ragged(R"({"t0": 0, "dt": 1, "labels": null, "meta": {}, "series": [[1, 2], [3]]})");
  CHECK_THROWS_AS(io::read_dataset(ragged), io::DataError);
  std::istringstream empty(R"({"t0": 0, "dt": 1, "labels": null, "meta": {}, "series": []})");
  CHECK_THROWS_AS(io::read_dataset(empty), io::DataError);
}

TEST_CASE("feature and distance CSV round trips") {
  test::Gen g(3);
  Eigen::MatrixXd f(4, 3);
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = std::uniform_real_distribution<double>(-5, 5)(g);
  std::stringstream buf;
  io::write_features(f, buf);
  CHECK(buf.str().rfind("series_index,c_1,c_2,c_3\n", 0) == 0);
  CHECK(io::read_features(buf) == f);

  DistanceMatrix d;
  d.values = Eigen::MatrixXd::Zero(3, 3);
  d.values(0, 1) = d.values(1, 0) = 1.0 / 3.0;
  d.values(0, 2) = d.values(2, 0) = 2.5;
  std::stringstream dbuf;
  io::write_distances(d, dbuf);
  CHECK(io::read_distances(dbuf).values == d.values);

  std::istringstream bad("series_index,c_1\n0,abc\n");
  CHECK_THROWS_WITH_AS(io::read_features(bad), doctest::Contains("line 2"), io::DataError);
}

TEST_CASE("event log parsing reports line numbers") {
  std::istringstream good("series_id,timestamp\na,1.5\nb,2\na,3\n");
  const auto recs = io::read_event_log(good);
  REQUIRE(recs.size() == 3);
  CHECK(recs[1].series_id == "b");
  CHECK(recs[2].timestamp == 3.0);

  std::istringstream no_header("a,1.5\n");
  CHECK_THROWS_WITH_AS(io::read_event_log(no_header), doctest::Contains("line 1"), io::DataError);
  std::istringstream bad_time("series_id,timestamp\na,1\nb,oops\n");
  CHECK_THROWS_WITH_AS(io::read_event_log(bad_time), doctest::Contains("line 3"), io::DataError);
  std::istringstream extra("series_id,timestamp\na,1,2\n");
  CHECK_THROWS_WITH_AS(io::read_event_log(extra), doctest::Contains("line 2"), io::DataError);
}

TEST_CASE("ingest groups, windows and smooths events") {
  const std::vector<io::EventLogRecord> recs{{"x", 10.0}, {"y", 12.0}, {"x", 11.0}, {"z", 99.0}, {"y", 5.0}};
  const auto r = io::ingest_events(recs, 0.05, 16, 8.0, 16.0);
  CHECK(r.ids == std::vector<std::string>{"x", "y"});
  CHECK(r.dropped_series == 1);
  CHECK(r.dropped_events == 2);
  REQUIRE(r.dataset.size() == 2);
  CHECK(r.dataset.length() == 16);
  CHECK(r.dataset[0].dt() == 0.5);
  // Event at 12.0 lands on grid point (12 - 8) / 0.5 = 8 with a single event.
  CHECK(r.dataset[1][8] == doctest::Approx(0.3989422804014327));
  CHECK(r.dataset.meta().at("source") == "event-log");

  CHECK_THROWS_AS(io::ingest_events(recs, 0.05, 16, 100.0, 200.0), io::DataError);
  CHECK_THROWS(io::ingest_events(recs, 0.05, 15, 8.0, 16.0));
  CHECK_THROWS(io::ingest_events(recs, 0.0, 16, 8.0, 16.0));
}

TEST_CASE("sweep config parsing") {
  std::istringstream cfg(R"({"scenarios": ["syn2", "syn3"], "gammas": [0, 0.25], "varphis": [1.5],
                             "methods": ["emd-amp", "dtw"], "replicates": 3, "m": 40, "seed": 4})");
  const auto c = io::parse_sweep_config(cfg);
  CHECK(c.scenarios.size() == 2);
  CHECK(c.gammas == std::vector<double>{0.0, 0.25});
  CHECK(c.amplitudes == std::vector<double>{1.5});
  CHECK(c.techniques == std::vector<Technique>{Technique::EmdAmp, Technique::Dtw});
  CHECK(c.replicates == 3);
  CHECK(c.m == 40);
  CHECK(c.seed == 4);

  std::istringstream bad(R"({"gammas": 0.5})");
  CHECK_THROWS_AS(io::parse_sweep_config(bad), io::DataError);
  std::istringstream not_object("[1, 2]");
  CHECK_THROWS_AS(io::parse_sweep_config(not_object), io::DataError);
}
