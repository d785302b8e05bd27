#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "amp/experiment.hpp"
#include "amp/io.hpp"

using namespace amp;

namespace {

SweepConfig small_sweep() {
  SweepConfig cfg;
  cfg.m = 40;
  cfg.n = 256;
  cfg.horizon = 64.0;
  cfg.replicates = 2;
  cfg.gammas = {0.0, 0.5};
  cfg.techniques = {Technique::DftAmp, Technique::EmdAmp, Technique::FourierPower, Technique::Euclidean};
  cfg.seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("technique names round trip") {
  for (Technique t : all_techniques()) CHECK(parse_technique(to_string(t)) == t);
  CHECK(all_techniques().size() == 8);
  CHECK_THROWS(parse_technique("kmeans"));
}

TEST_CASE("cell seeds are distinct across the grid") {
  std::set<std::uint64_t> seen;
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t g = 0; g < 4; ++g)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t r = 0; r < 10; ++r) seen.insert(cell_seed(5, s, g, a, r));
  CHECK(seen.size() == 3 * 4 * 3 * 10);
  CHECK(cell_seed(5, 1, 2, 0, 3) == cell_seed(5, 1, 2, 0, 3));
  CHECK(cell_seed(5, 1, 2, 0, 3) != cell_seed(6, 1, 2, 0, 3));
}

TEST_CASE("sweep layout and determinism") {
  const auto cfg = small_sweep();
  const auto a = run_experiment(cfg);
  CHECK(a.records.size() == 2 * 2 * 4);
  CHECK(a.cells.size() == 2 * 4);
  for (const auto& c : a.cells) {
    CHECK(c.replicates + c.failures == 2);
    CHECK(c.rand_index >= 0.0);
    CHECK(c.rand_index <= 1.0);
    CHECK(c.silhouette_mean >= -1.0);
    CHECK(c.silhouette_mean <= 1.0);
  }

  const auto b = run_experiment(cfg);
  std::ostringstream ra, rb;
  io::write_experiment_records(a, ra);
  io::write_experiment_records(b, rb);
  CHECK(ra.str() == rb.str());

  auto other = cfg;
  other.seed = 12;
  std::ostringstream rc;
  io::write_experiment_records(run_experiment(other), rc);
  CHECK(rc.str() != ra.str());
}

TEST_CASE("identical rates score near chance") {
  SweepConfig cfg = small_sweep();
  cfg.m = 200;
  cfg.replicates = 5;
  cfg.gammas = {0.5};
  cfg.techniques = {Technique::EmdAmp, Technique::Euclidean};
  const auto r = run_experiment(cfg);
  for (const auto& c : r.cells) {
    CAPTURE(to_string(c.technique));
    CHECK(c.rand_index < 0.6);
  }
}

TEST_CASE("invalid sweeps are rejected") {
  auto cfg = small_sweep();
  cfg.replicates = 0;
  CHECK_THROWS(run_experiment(cfg));
  cfg = small_sweep();
  cfg.gammas = {0.7};
  CHECK_THROWS(run_experiment(cfg));
  cfg = small_sweep();
  cfg.m = 41;
  CHECK_THROWS(run_experiment(cfg));
}
