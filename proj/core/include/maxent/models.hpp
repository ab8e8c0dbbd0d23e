// models.hpp — spin-chain observable sets whose multipliers act as β-scaled
// control parameters, plus standard reference states.

#pragma once

#include "maxent/gibbs.hpp"
#include "maxent/linalg.hpp"

#include <string>

namespace maxent {

enum class Pauli { X, Y, Z };
enum class SpinModel { TFIM, XXZ, HEISENBERG };

SpinModel spin_model_from_string(const std::string& name);
std::string to_string(SpinModel model);

/// Chain geometry and model choice. Dimension is 2^n; n is capped at 12 so
/// dense eigendecomposition stays fast.
struct SpinChainSpec {
  SpinModel model = SpinModel::TFIM;
  int n = 2;
  bool periodic = false;
  double anisotropy = 1.0; // XXZ Δ; ignored by the other models

  void validate() const; // throws std::invalid_argument
};

// I⊗…⊗σ⊗…⊗I with the Pauli at position `site` (site 0 is the leftmost
// Kronecker factor).
HermitianObservable site_operator(Pauli pauli, int site, int n);

// {bond = -Σ σ^z_i σ^z_{i+1}, field = -Σ σ^x_i}. With multipliers
// (βJ, βg) the effective Hamiltonian is β·H_TFIM. Periodic adds the wrap
// bond (n-1, 0).
ObservableSet tfim_observables(int n, bool periodic);

// {xy = Σ (σ^x σ^x + σ^y σ^y), zz = Σ σ^z σ^z} over nearest-neighbor
// bonds. With multipliers (βJ, βJΔ) the effective Hamiltonian is β·H_XXZ;
// the anisotropy enters only through the multipliers.
ObservableSet xxz_observables(int n, bool periodic);

// {heis = Σ σ⃗_i·σ⃗_{i+1}}, a single isotropic-exchange observable.
ObservableSet heisenberg_observables(int n, bool periodic);

// Dispatch on spec.model.
ObservableSet chain_observables(const SpinChainSpec& spec);

// Reference states -----------------------------------------------------

// (|00⟩+|11⟩)/√2 as a density matrix, factor dims (2,2).
DensityMatrix bell_phi_plus();

// p·|Ψ−⟩⟨Ψ−| + (1-p)·I/4 for 0 ≤ p ≤ 1; separable iff p ≤ 1/3.
DensityMatrix werner_state(double p);

// (|0…0⟩+|1…1⟩)/√2 on n qubits.
DensityMatrix ghz_state(int n);

// Equal-weight single-excitation state on n qubits.
DensityMatrix w_state(int n);

// Gibbs state of the two-site isotropic exchange observable at multiplier β.
DensityMatrix dimer_gibbs(double beta);

} // namespace maxent
