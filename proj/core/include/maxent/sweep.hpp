// sweep.hpp — control-parameter sweeps over spin-chain Gibbs ensembles:
// free energy, entropy, mean values, entanglement measures, and
// finite-difference singularity markers on a grid, with CSV output.

#pragma once

#include "maxent/entanglement.hpp"
#include "maxent/models.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxent {

/// Invalid or unreadable configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failed filesystem output (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ControlSpec {
  std::string name; // "g" (TFIM) or "delta" (XXZ)
  double from = 0.0;
  double to = 1.0;
  int points = 3; // ≥ 3, central differences need interior points
};

struct SweepConfig {
  SpinChainSpec model;
  double beta = 1.0;
  ControlSpec control;
  std::pair<int, int> pair{0, 1}; // sites for pairwise concurrence
  Bipartition bipartition;        // empty groups mean: use half_split(n)
  int threads = 1;
  std::string output_dir = ".";

  void validate() const; // throws ConfigError
};

/// One grid point. Derivatives are central differences in the control
/// variable; at the two grid endpoints they are one-sided and flagged.
struct SweepRecord {
  double control_value = 0.0;
  double free_energy_per_site = 0.0;
  double entropy = 0.0;
  std::vector<double> means;
  double concurrence = 0.0;
  double negativity = 0.0;
  double dF = 0.0;
  double d2F = 0.0;
  double dC = 0.0;
  double dN = 0.0;
  bool one_sided = false;
};

struct SingularityMarker {
  double control_value = 0.0;
  double derivative_value = 0.0;
};

/// Interior-grid argmax locations of |d2F|, |dC| and |dN|. Locations are
/// reported side by side without asserting any relation between them.
struct SingularityReport {
  SingularityMarker d2F;
  SingularityMarker dC;
  SingularityMarker dN;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SingularityReport report;
  std::vector<std::string> mean_labels; // column labels, observable order
};

// Read and validate a JSON config. Unknown keys are rejected by name.
SweepConfig parse_config(const std::string& path);

// Evaluate every grid point (independently, on `threads` workers) and the
// finite-difference markers. Output is deterministic: records are ordered
// by grid index and each point's arithmetic is thread-count independent.
SweepResult run_sweep(const SweepConfig& config);

struct SweepOutputs {
  std::string csv_path;
  std::string report_path;
};

// Write sweep.csv (fixed header, 12 significant digits) and
// singularities.txt under output_dir, creating it if needed.
SweepOutputs write_csv(const SweepResult& result,
                       const std::string& output_dir);

// Human-readable description of a model's observables and control knob.
std::string model_info(SpinModel model);

} // namespace maxent
