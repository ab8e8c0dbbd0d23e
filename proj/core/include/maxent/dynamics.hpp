// dynamics.hpp — fixed-step propagation of density matrices under a
// Markovian (GKSL) master equation, with entropy/entanglement time series.

#pragma once

#include "maxent/entanglement.hpp"
#include "maxent/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace maxent {

/// Generator data: dρ/dt = -i[H,ρ] + Σ_k γ_k (L_k ρ L_k† - ½{L_k†L_k, ρ}).
struct LindbladSpec {
  HermitianObservable hamiltonian;
  std::vector<ComplexMatrix> jump_ops;
  std::vector<double> rates;

  LindbladSpec(HermitianObservable h, std::vector<ComplexMatrix> jumps,
               std::vector<double> gammas);
  Eigen::Index dim() const { return hamiltonian.dim(); }
};

// Right-hand side of the master equation; traceless and Hermitian (to
// round-off) for Hermitian input.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const LindbladSpec& spec);

/// States and scalar series along one propagation. Stored states are
/// re-Hermitized and trace-renormalized; positivity is monitored with a
/// relaxed floor, not projected.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  // "entropy" and "energy" always; "negativity"/"log_negativity" when the
  // state has at least two factors; "concurrence" for two-qubit states.
  std::map<std::string, std::vector<double>> series;
  double max_trace_drift = 0.0; // |tr - 1| before renormalization, worst step
};

// Step count from the default accuracy policy
// steps = ceil(200 · t_end · (‖H‖ + Σ_k γ_k ‖L_k‖²)), at least 1.
int recommended_steps(const LindbladSpec& spec, double t_end);

// Classic fourth-order Runge–Kutta with fixed step t_end/steps. Stores the
// state and series at every step including t = 0. Throws std::runtime_error
// if a propagated state's minimum eigenvalue falls below -1e-6 (pick a
// smaller step).
Trajectory propagate(const DensityMatrix& rho0, const LindbladSpec& spec,
                     double t_end, int steps);

} // namespace maxent
