#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "maxent/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace maxent;
namespace fs = std::filesystem;

namespace {

fs::path unique_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("maxent_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string write_temp_config(const std::string& tag,
                              const std::string& body) {
  const fs::path path =
      fs::temp_directory_path() / ("maxent_cfg_" + tag + ".json");
  std::ofstream out(path);
  out << body;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kMinimalConfig = R"({
  "model": {"type": "TFIM", "n": 4},
  "beta": 1.5,
  "control": {"name": "g", "from": 0.2, "to": 1.8, "points": 5}
})";

} // namespace

TEST_CASE("parse_config fills documented defaults") {
  const SweepConfig cfg =
      parse_config(write_temp_config("minimal", kMinimalConfig));
  CHECK(cfg.model.model == SpinModel::TFIM);
  CHECK(cfg.model.n == 4);
  CHECK_FALSE(cfg.model.periodic);
  CHECK(cfg.beta == 1.5);
  CHECK(cfg.threads == 1);
  CHECK(cfg.pair == std::pair<int, int>{0, 1});
  CHECK(cfg.bipartition.left == std::vector<Eigen::Index>{0, 1});
  CHECK(cfg.bipartition.right == std::vector<Eigen::Index>{2, 3});
  CHECK(cfg.output_dir == ".");
}

TEST_CASE("parse_config rejects bad inputs with the offending key named") {
  CHECK_THROWS_AS(parse_config("/nonexistent/nowhere.json"), ConfigError);

  CHECK_THROWS_AS(parse_config(write_temp_config("syntax", "{not json")),
                  ConfigError);

  CHECK_THROWS_WITH_AS(
      parse_config(write_temp_config("unknown", R"({
        "model": {"type": "TFIM", "n": 4},
        "beta": 1.0,
        "control": {"name": "g", "from": 0.2, "to": 1.8, "points": 5},
        "moddel": 3
      })")),
      doctest::Contains("moddel"), ConfigError);

  CHECK_THROWS_WITH_AS(
      parse_config(write_temp_config("points", R"({
        "model": {"type": "TFIM", "n": 4},
        "beta": 1.0,
        "control": {"name": "g", "from": 0.2, "to": 1.8, "points": 2}
      })")),
      doctest::Contains("points"), ConfigError);

  CHECK_THROWS_WITH_AS(
      parse_config(write_temp_config("fromto", R"({
        "model": {"type": "TFIM", "n": 4},
        "beta": 1.0,
        "control": {"name": "g", "from": 1.8, "to": 0.2, "points": 5}
      })")),
      doctest::Contains("from"), ConfigError);

  CHECK_THROWS_AS(parse_config(write_temp_config("pairing", R"({
        "model": {"type": "XXZ", "n": 4},
        "beta": 1.0,
        "control": {"name": "g", "from": 0.2, "to": 1.8, "points": 5}
      })")),
                  ConfigError);

  CHECK_THROWS_AS(parse_config(write_temp_config("heis", R"({
        "model": {"type": "HEISENBERG", "n": 4},
        "beta": 1.0,
        "control": {"name": "delta", "from": 0.2, "to": 1.8, "points": 5}
      })")),
                  ConfigError);

  CHECK_THROWS_AS(parse_config(write_temp_config("badpair", R"({
        "model": {"type": "TFIM", "n": 4},
        "beta": 1.0,
        "control": {"name": "g", "from": 0.2, "to": 1.8, "points": 5},
        "pair": [1, 1]
      })")),
                  ConfigError);

  CHECK_THROWS_AS(parse_config(write_temp_config("badsplit", R"({
        "model": {"type": "TFIM", "n": 4},
        "beta": 1.0,
        "control": {"name": "g", "from": 0.2, "to": 1.8, "points": 5},
        "bipartition": {"left": [0, 2], "right": [1, 3]}
      })")),
                  ConfigError);
}

TEST_CASE("run_sweep reproduces direct library calls point by point") {
  SweepConfig cfg;
  cfg.model = {SpinModel::TFIM, 2, false, 1.0};
  cfg.beta = 1.0;
  cfg.control = {"g", 0.5, 1.5, 3};
  const SweepResult result = run_sweep(cfg);

  REQUIRE(result.records.size() == 3);
  const ObservableSet obs = tfim_observables(2, false);
  const double grid[3] = {0.5, 1.0, 1.5};
  for (int k = 0; k < 3; ++k) {
    const auto& rec = result.records[static_cast<std::size_t>(k)];
    CHECK(rec.control_value == doctest::Approx(grid[k]).epsilon(1e-15));
    const Multipliers lambda({cfg.beta, cfg.beta * grid[k]});
    CHECK(rec.free_energy_per_site ==
          doctest::Approx(free_energy(obs, lambda) / 2.0).epsilon(1e-13));
    const GibbsEnsemble ens = gibbs_state(obs, lambda);
    CHECK(rec.entropy == doctest::Approx(ens.entropy()).epsilon(1e-13));
    REQUIRE(rec.means.size() == 2);
    CHECK(rec.means[0] ==
          doctest::Approx(ens.mean_values()[0]).epsilon(1e-13));

    // per-point consistency: -F_total = S - Σ λ_l a_l ... rearranged
    double sum = 0.0;
    for (std::size_t l = 0; l < 2; ++l)
      sum += lambda[l] * rec.means[l];
    const double f_total = rec.free_energy_per_site * 2.0;
    CHECK(std::abs(f_total - (sum - rec.entropy)) <= 1e-10);
  }
  CHECK(result.mean_labels == std::vector<std::string>{"bond", "field"});

  // endpoints are flagged as one-sided
  CHECK(result.records.front().one_sided);
  CHECK(result.records.back().one_sided);
  CHECK_FALSE(result.records[1].one_sided);
}

TEST_CASE("run_sweep is deterministic across thread counts") {
  SweepConfig cfg;
  cfg.model = {SpinModel::TFIM, 4, true, 1.0};
  cfg.beta = 4.0;
  cfg.control = {"g", 0.4, 1.6, 13};

  cfg.threads = 1;
  const SweepResult serial = run_sweep(cfg);
  cfg.threads = 8;
  const SweepResult parallel = run_sweep(cfg);

  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t k = 0; k < serial.records.size(); ++k) {
    CHECK(serial.records[k].free_energy_per_site ==
          parallel.records[k].free_energy_per_site);
    CHECK(serial.records[k].entropy == parallel.records[k].entropy);
    CHECK(serial.records[k].concurrence == parallel.records[k].concurrence);
    CHECK(serial.records[k].negativity == parallel.records[k].negativity);
    CHECK(serial.records[k].d2F == parallel.records[k].d2F);
  }

  const fs::path d1 = unique_dir("serial");
  const fs::path d4 = unique_dir("parallel");
  write_csv(serial, d1.string());
  write_csv(parallel, d4.string());
  CHECK(slurp((d1 / "sweep.csv").string()) ==
        slurp((d4 / "sweep.csv").string()));
}

TEST_CASE("XXZ sweep over the anisotropy") {
  SweepConfig cfg;
  cfg.model = {SpinModel::XXZ, 4, true, 1.0};
  cfg.beta = 2.0;
  cfg.control = {"delta", -1.5, 1.5, 7};
  const SweepResult result = run_sweep(cfg);
  REQUIRE(result.records.size() == 7);
  CHECK(result.mean_labels == std::vector<std::string>{"xy", "zz"});
  for (const auto& rec : result.records) {
    CHECK(std::isfinite(rec.free_energy_per_site));
    CHECK(rec.entropy >= -1e-12);
    CHECK(rec.negativity >= 0.0);
  }
}

TEST_CASE("singularity markers sit on interior grid points") {
  SweepConfig cfg;
  cfg.model = {SpinModel::TFIM, 4, true, 1.0};
  cfg.beta = 6.0;
  cfg.control = {"g", 0.2, 2.0, 19};
  const SweepResult result = run_sweep(cfg);

  for (const SingularityMarker* m :
       {&result.report.d2F, &result.report.dC, &result.report.dN}) {
    CHECK(std::isfinite(m->derivative_value));
    CHECK(m->control_value > cfg.control.from);
    CHECK(m->control_value < cfg.control.to);
  }
}

TEST_CASE("write_csv layout and round trip") {
  SweepConfig cfg;
  cfg.model = {SpinModel::TFIM, 2, false, 1.0};
  cfg.beta = 1.0;
  cfg.control = {"g", 0.5, 1.5, 3};
  const SweepResult result = run_sweep(cfg);

  const fs::path dir = unique_dir("csv");
  const SweepOutputs paths = write_csv(result, dir.string());

  std::ifstream csv(paths.csv_path);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(csv, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4); // header + 3 records
  CHECK(lines[0] ==
        "control,free_energy_per_site,entropy,mean_bond,mean_field,"
        "concurrence,negativity,dF,d2F,dC,dN");

  // round trip: parse the second row, compare to 12 significant digits
  std::stringstream row(lines[1]);
  std::vector<double> values;
  std::string cell;
  while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
  REQUIRE(values.size() == 11);
  const auto& rec = result.records[0];
  const double expect[] = {rec.control_value,
                           rec.free_energy_per_site,
                           rec.entropy,
                           rec.means[0],
                           rec.means[1],
                           rec.concurrence,
                           rec.negativity,
                           rec.dF,
                           rec.d2F,
                           rec.dC,
                           rec.dN};
  for (std::size_t i = 0; i < 11; ++i) {
    const double scale = std::max(1e-300, std::abs(expect[i]));
    CHECK(std::abs(values[i] - expect[i]) / scale <= 1e-11);
  }

  const std::string report = slurp(paths.report_path);
  CHECK(report.find("argmax|d2F|") != std::string::npos);
  CHECK(report.find("argmax|dC|") != std::string::npos);
  CHECK(report.find("argmax|dN|") != std::string::npos);

  SUBCASE("empty record list is a misuse error") {
    SweepResult empty;
    CHECK_THROWS_AS(write_csv(empty, dir.string()), std::invalid_argument);
  }

  SUBCASE("unwritable destination raises an i/o error") {
    CHECK_THROWS_AS(write_csv(result, (dir / "sweep.csv" / "x").string()),
                    IoError);
  }
}
