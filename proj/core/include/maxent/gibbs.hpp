// gibbs.hpp — Gibbs (maximum-entropy) ensembles over a set of observables:
// log-partition function, free energy, entropies, exact first and second
// derivatives in the conjugate multipliers, and the inverse (Legendre-dual)
// map from target mean values back to multipliers.

#pragma once

#include "maxent/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace maxent {

/// Ordered list of same-dimension Hermitian observables with unique labels.
/// Copies share storage, so passing sets by value is cheap.
class ObservableSet {
 public:
  // factor_dims describes the tensor decomposition states over this set
  // should carry; empty means the single factor {dim}.
  explicit ObservableSet(std::vector<HermitianObservable> observables,
                         std::vector<Eigen::Index> factor_dims = {});

  std::size_t size() const { return items_->size(); }
  Eigen::Index dim() const { return (*items_)[0].dim(); }
  const HermitianObservable& operator[](std::size_t l) const {
    return (*items_)[l];
  }
  const std::vector<HermitianObservable>& items() const { return *items_; }
  const std::vector<Eigen::Index>& factor_dims() const { return factor_dims_; }
  std::vector<std::string> labels() const;

 private:
  std::shared_ptr<const std::vector<HermitianObservable>> items_;
  std::vector<Eigen::Index> factor_dims_;
};

/// Conjugate field parameters, one per observable. Dimensionless.
struct Multipliers {
  std::vector<double> values;

  Multipliers() = default;
  explicit Multipliers(std::vector<double> v);
  static Multipliers zeros(std::size_t count);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t l) const { return values[l]; }
};

// Σ_l λ_l A_l. Throws std::invalid_argument on length mismatch.
ComplexMatrix effective_hamiltonian(const ObservableSet& obs,
                                    const Multipliers& lambda);

/// Everything derived from one (observables, multipliers) pairing:
/// spectrum of the effective Hamiltonian, ln Z, the Gibbs state, its mean
/// values and entropy. Immutable after construction.
///
/// All exponentials are stabilized by shifting with the minimum eigenvalue;
/// ln Z = -shift + ln Σ_i exp(-(ε_i - shift)). If the spectral spread
/// exceeds 700 the smallest Boltzmann weight would leave the normal double
/// range (losing full rank), and construction throws std::range_error.
class GibbsEnsemble {
 public:
  GibbsEnsemble(ObservableSet obs, Multipliers lambda);

  const ObservableSet& observables() const { return obs_; }
  const Multipliers& multipliers() const { return lambda_; }
  const RealVector& eff_eigenvalues() const { return eff_eigenvalues_; }
  const ComplexMatrix& eff_eigenvectors() const { return eff_eigenvectors_; }
  // Boltzmann probabilities in the effective eigenbasis, ascending-ε order.
  const RealVector& probabilities() const { return probabilities_; }

  double log_partition() const { return ln_z_; }
  double free_energy() const { return -ln_z_; }
  const std::vector<double>& mean_values() const { return means_; }
  double entropy() const { return entropy_; }
  // Normalization multiplier pinned by the unit-trace constraint.
  double lambda0() const { return ln_z_ - 1.0; }
  const DensityMatrix& state() const { return *state_; }

 private:
  ObservableSet obs_;
  Multipliers lambda_;
  RealVector eff_eigenvalues_;
  ComplexMatrix eff_eigenvectors_;
  RealVector probabilities_;
  double ln_z_ = 0.0;
  double entropy_ = 0.0;
  std::vector<double> means_;
  std::shared_ptr<const DensityMatrix> state_;
};

// Gibbs state exp(-Σ λ_l A_l)/Z with everything cached.
GibbsEnsemble gibbs_state(const ObservableSet& obs, const Multipliers& lambda);

// ln tr exp(-Σ λ_l A_l) by log-sum-exp over the spectrum. Cheaper than
// building the full ensemble (no eigenvectors).
double log_partition(const ObservableSet& obs, const Multipliers& lambda);

// -ln Z, the minimum of the free-energy functional.
double free_energy(const ObservableSet& obs, const Multipliers& lambda);

// -tr ρ ln ρ with 0 ln 0 = 0; eigenvalues below 1e-14 count as exactly 0.
double von_neumann_entropy(const DensityMatrix& rho);

// Σ_l λ_l tr(ρ A_l) + tr(ρ ln ρ), the variational functional whose minimum
// over states is -ln Z. Well-defined for rank-deficient ρ.
double free_energy_functional(const DensityMatrix& rho,
                              const ObservableSet& obs,
                              const Multipliers& lambda);

// tr ρ(ln ρ - ln σ). Requires support(ρ) ⊆ support(σ); throws
// std::domain_error when ρ carries weight on σ's kernel.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// a_l = Re tr(ρ A_l).
std::vector<double> mean_values(const ObservableSet& obs,
                                const DensityMatrix& rho);

// Exact gradient of the free energy in the multipliers: ∂F/∂λ_l = a_l,
// the mean values in the Gibbs state.
std::vector<double> grad_free_energy(const ObservableSet& obs,
                                     const Multipliers& lambda);

// Exact Hessian ∂² ln Z / ∂λ_l ∂λ_m via the divided-difference (Duhamel)
// kernel in the effective eigenbasis. Symmetric positive semidefinite.
// Note ∂a_l/∂λ_m = -H_lm.
RealMatrix kubo_mori_hessian(const ObservableSet& obs,
                             const Multipliers& lambda);
RealMatrix kubo_mori_hessian(const GibbsEnsemble& ensemble);

struct InversionResult {
  Multipliers lambda;
  int iterations = 0;
  double residual_inf_norm = 0.0;
  bool converged = false;
};

// Solve the dual problem: find multipliers whose Gibbs state reproduces the
// target means, by damped Newton descent on the strictly convex
// G(λ) = ln Z(λ) + Σ_l λ_l·target_l starting from λ = 0. Converged means
// ‖a(λ) - target‖∞ ≤ tol. Targets attainable only in the zero-temperature
// limit come back converged=false with the best iterate. For a single
// observable, a target outside its closed spectral range throws
// std::domain_error immediately.
InversionResult maxent_invert(const ObservableSet& obs,
                              const std::vector<double>& target_means,
                              double tol, int max_iter);

} // namespace maxent
