#include "maxent/sweep.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace maxent {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj,
                         std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

const json& require_key(const json& obj, const char* key,
                        const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number())
    throw ConfigError("value of '" + what + "' must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer())
    throw ConfigError("value of '" + what + "' must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string())
    throw ConfigError("value of '" + what + "' must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& what) {
  if (!v.is_boolean())
    throw ConfigError("value of '" + what + "' must be a boolean");
  return v.get<bool>();
}

std::vector<Eigen::Index> as_index_list(const json& v,
                                        const std::string& what) {
  if (!v.is_array())
    throw ConfigError("value of '" + what + "' must be an array of integers");
  std::vector<Eigen::Index> out;
  for (const auto& e : v) out.push_back(as_int(e, what));
  return out;
}

void check_bipartition(const Bipartition& bp, int n) {
  if (bp.left.empty() || bp.right.empty())
    throw ConfigError("bipartition: left and right must be non-empty");
  std::vector<Eigen::Index> all = bp.left;
  all.insert(all.end(), bp.right.begin(), bp.right.end());
  std::sort(all.begin(), all.end());
  for (std::size_t k = 0; k < all.size(); ++k)
    if (all[k] != static_cast<Eigen::Index>(k))
      throw ConfigError(
          "bipartition: left and right must partition the sites 0.." +
          std::to_string(n - 1));
  if (all.size() != static_cast<std::size_t>(n))
    throw ConfigError("bipartition: must cover all " + std::to_string(n) +
                      " sites");
  std::vector<Eigen::Index> right = bp.right;
  std::sort(right.begin(), right.end());
  for (std::size_t k = 1; k < right.size(); ++k)
    if (right[k] != right[k - 1] + 1)
      throw ConfigError("bipartition: right group must be contiguous");
}

Multipliers control_multipliers(const SweepConfig& cfg, double control) {
  // The coupling J is fixed to 1; the control enters only through the
  // multipliers, (βJ, βg) for TFIM and (βJ, βJΔ) for XXZ.
  return Multipliers({cfg.beta, cfg.beta * control});
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

} // namespace

void SweepConfig::validate() const {
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ConfigError("beta must be positive and finite");

  if (control.points < 3)
    throw ConfigError("control: 'points' must be >= 3, got " +
                      std::to_string(control.points));
  if (!std::isfinite(control.from) || !std::isfinite(control.to))
    throw ConfigError("control: 'from' and 'to' must be finite");
  if (!(control.from < control.to))
    throw ConfigError("control: 'from' must be less than 'to'");

  if (control.name == "g") {
    if (model.model != SpinModel::TFIM)
      throw ConfigError("control 'g' applies to the TFIM model only");
  } else if (control.name == "delta") {
    if (model.model != SpinModel::XXZ)
      throw ConfigError("control 'delta' applies to the XXZ model only");
  } else {
    throw ConfigError("control: 'name' must be \"g\" or \"delta\", got \"" +
                      control.name + "\"");
  }

  if (pair.first == pair.second || pair.first < 0 || pair.second < 0 ||
      pair.first >= model.n || pair.second >= model.n)
    throw ConfigError("pair: sites must be distinct and within 0.." +
                      std::to_string(model.n - 1));

  if (threads < 1) throw ConfigError("threads must be >= 1");

  if (!bipartition.left.empty() || !bipartition.right.empty())
    check_bipartition(bipartition, model.n);
}

SweepConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  reject_unknown_keys(j,
                      {"model", "beta", "control", "pair", "bipartition",
                       "threads", "output_dir"},
                      "config");

  SweepConfig cfg;

  const json& jm = require_key(j, "model", "config");
  if (!jm.is_object()) throw ConfigError("'model' must be an object");
  reject_unknown_keys(jm, {"type", "n", "periodic", "delta"}, "model");
  cfg.model.model =
      spin_model_from_string(as_string(require_key(jm, "type", "model"),
                                       "model.type"));
  cfg.model.n = as_int(require_key(jm, "n", "model"), "model.n");
  cfg.model.periodic =
      jm.contains("periodic") ? as_bool(jm["periodic"], "model.periodic")
                              : false;
  cfg.model.anisotropy =
      jm.contains("delta") ? as_number(jm["delta"], "model.delta") : 1.0;

  cfg.beta = as_number(require_key(j, "beta", "config"), "beta");

  const json& jc = require_key(j, "control", "config");
  if (!jc.is_object()) throw ConfigError("'control' must be an object");
  reject_unknown_keys(jc, {"name", "from", "to", "points"}, "control");
  cfg.control.name =
      as_string(require_key(jc, "name", "control"), "control.name");
  cfg.control.from =
      as_number(require_key(jc, "from", "control"), "control.from");
  cfg.control.to = as_number(require_key(jc, "to", "control"), "control.to");
  cfg.control.points =
      as_int(require_key(jc, "points", "control"), "control.points");

  if (j.contains("pair")) {
    const auto sites = as_index_list(j["pair"], "pair");
    if (sites.size() != 2)
      throw ConfigError("'pair' must hold exactly two site indices");
    cfg.pair = {static_cast<int>(sites[0]), static_cast<int>(sites[1])};
  }

  if (j.contains("bipartition")) {
    const json& jb = j["bipartition"];
    if (!jb.is_object()) throw ConfigError("'bipartition' must be an object");
    reject_unknown_keys(jb, {"left", "right"}, "bipartition");
    cfg.bipartition.left =
        as_index_list(require_key(jb, "left", "bipartition"),
                      "bipartition.left");
    cfg.bipartition.right =
        as_index_list(require_key(jb, "right", "bipartition"),
                      "bipartition.right");
  } else {
    cfg.bipartition = half_split(static_cast<std::size_t>(cfg.model.n));
  }

  if (j.contains("threads")) cfg.threads = as_int(j["threads"], "threads");
  if (j.contains("output_dir"))
    cfg.output_dir = as_string(j["output_dir"], "output_dir");

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();

  const ObservableSet obs = chain_observables(config.model);
  const Bipartition bp = config.bipartition.left.empty()
                             ? half_split(static_cast<std::size_t>(config.model.n))
                             : config.bipartition;
  const int points = config.control.points;
  const double h =
      (config.control.to - config.control.from) / (points - 1);

  SweepResult result;
  result.mean_labels = obs.labels();
  result.records.resize(static_cast<std::size_t>(points));

  auto evaluate_point = [&](int k) {
    SweepRecord rec;
    rec.control_value = config.control.from + k * h;
    const GibbsEnsemble ens =
        gibbs_state(obs, control_multipliers(config, rec.control_value));
    rec.free_energy_per_site = ens.free_energy() / config.model.n;
    rec.entropy = ens.entropy();
    rec.means = ens.mean_values();
    rec.concurrence =
        pairwise_concurrence(ens.state(), config.pair.first,
                             config.pair.second);
    rec.negativity = negativity(ens.state(), bp).negativity;
    return rec;
  };

  // Grid points are independent work items; records land in their slot by
  // index, so output is identical for any worker count.
  const int workers = std::clamp(config.threads, 1, points);
  std::atomic<int> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto drain = [&] {
    try {
      while (true) {
        const int k = next.fetch_add(1);
        if (k >= points) break;
        result.records[static_cast<std::size_t>(k)] = evaluate_point(k);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Finite-difference markers on the uniform grid; one-sided at the ends.
  auto& recs = result.records;
  const auto d1 = [&](auto field, int k) {
    if (k == 0)
      return (recs[1].*field - recs[0].*field) / h;
    if (k == points - 1)
      return (recs[k].*field - recs[k - 1].*field) / h;
    return (recs[k + 1].*field - recs[k - 1].*field) / (2.0 * h);
  };
  const auto d2 = [&](auto field, int k) {
    const int c = std::clamp(k, 1, points - 2);
    return (recs[c + 1].*field - 2.0 * recs[c].*field + recs[c - 1].*field) /
           (h * h);
  };
  for (int k = 0; k < points; ++k) {
    auto& r = recs[static_cast<std::size_t>(k)];
    r.dF = d1(&SweepRecord::free_energy_per_site, k);
    r.d2F = d2(&SweepRecord::free_energy_per_site, k);
    r.dC = d1(&SweepRecord::concurrence, k);
    r.dN = d1(&SweepRecord::negativity, k);
    r.one_sided = (k == 0 || k == points - 1);
  }

  auto interior_argmax = [&](auto field) {
    int best = 1;
    for (int k = 2; k < points - 1; ++k)
      if (std::abs(recs[static_cast<std::size_t>(k)].*field) >
          std::abs(recs[static_cast<std::size_t>(best)].*field))
        best = k;
    const auto& r = recs[static_cast<std::size_t>(best)];
    return SingularityMarker{r.control_value, r.*field};
  };
  result.report.d2F = interior_argmax(&SweepRecord::d2F);
  result.report.dC = interior_argmax(&SweepRecord::dC);
  result.report.dN = interior_argmax(&SweepRecord::dN);

  return result;
}

SweepOutputs write_csv(const SweepResult& result,
                       const std::string& output_dir) {
  if (result.records.empty())
    throw std::invalid_argument("write_csv: no records to write");

  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec)
    throw IoError("cannot create output directory '" + output_dir +
                  "': " + ec.message());

  SweepOutputs out;
  out.csv_path = (fs::path(output_dir) / "sweep.csv").string();
  out.report_path = (fs::path(output_dir) / "singularities.txt").string();

  std::ofstream csv(out.csv_path);
  if (!csv) throw IoError("cannot open '" + out.csv_path + "' for writing");

  csv << "control,free_energy_per_site,entropy";
  for (const auto& label : result.mean_labels) csv << ",mean_" << label;
  csv << ",concurrence,negativity,dF,d2F,dC,dN\n";

  for (const auto& r : result.records) {
    csv << format_number(r.control_value) << ','
        << format_number(r.free_energy_per_site) << ','
        << format_number(r.entropy);
    for (double m : r.means) csv << ',' << format_number(m);
    csv << ',' << format_number(r.concurrence) << ','
        << format_number(r.negativity) << ',' << format_number(r.dF) << ','
        << format_number(r.d2F) << ',' << format_number(r.dC) << ','
        << format_number(r.dN) << '\n';
  }
  csv.flush();
  if (!csv) throw IoError("write failed for '" + out.csv_path + "'");

  std::ofstream rep(out.report_path);
  if (!rep) throw IoError("cannot open '" + out.report_path + "' for writing");
  rep << "argmax|d2F| control=" << format_number(result.report.d2F.control_value)
      << " value=" << format_number(result.report.d2F.derivative_value) << '\n'
      << "argmax|dC| control=" << format_number(result.report.dC.control_value)
      << " value=" << format_number(result.report.dC.derivative_value) << '\n'
      << "argmax|dN| control=" << format_number(result.report.dN.control_value)
      << " value=" << format_number(result.report.dN.derivative_value) << '\n'
      << "scanned interior grid points only; endpoint derivatives are"
         " one-sided estimates\n";
  rep.flush();
  if (!rep) throw IoError("write failed for '" + out.report_path + "'");

  return out;
}

std::string model_info(SpinModel model) {
  switch (model) {
    case SpinModel::TFIM:
      return "TFIM — transverse-field Ising chain\n"
             "  observables: bond  = -sum_i sigma^z_i sigma^z_{i+1}\n"
             "               field = -sum_i sigma^x_i\n"
             "  multipliers (beta*J, beta*g) with J = 1 give the effective\n"
             "  Hamiltonian beta*(-J sum sigma^z sigma^z - g sum sigma^x).\n"
             "  sweep control: g\n";
    case SpinModel::XXZ:
      return "XXZ — anisotropic nearest-neighbor exchange chain\n"
             "  observables: xy = sum_i (sigma^x_i sigma^x_{i+1} +"
             " sigma^y_i sigma^y_{i+1})\n"
             "               zz = sum_i sigma^z_i sigma^z_{i+1}\n"
             "  multipliers (beta*J, beta*J*delta) with J = 1 give the\n"
             "  effective Hamiltonian beta*J*(xy + delta*zz).\n"
             "  sweep control: delta\n";
    case SpinModel::HEISENBERG:
      return "HEISENBERG — isotropic exchange chain (XXZ at delta = 1)\n"
             "  observables: heis = sum_i vec(sigma)_i . vec(sigma)_{i+1}\n"
             "  single multiplier beta*J with J = 1; no sweepable control\n"
             "  (sweep the XXZ model around delta = 1 instead).\n";
  }
  return "";
}

} // namespace maxent
