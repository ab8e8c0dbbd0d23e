// entanglement.hpp — entanglement quantifiers of density matrices:
// two-qubit concurrence, negativity/log-negativity from the partial
// transpose, and the positive-partial-transpose flag.

#pragma once

#include "maxent/linalg.hpp"

#include <optional>
#include <vector>

namespace maxent {

/// Two disjoint groups of tensor-factor indices covering all factors.
/// The right group is the one that gets transposed and must be contiguous
/// in factor order.
struct Bipartition {
  std::vector<Eigen::Index> left;
  std::vector<Eigen::Index> right;
};

// left = first half of the factors, right = the rest.
Bipartition half_split(std::size_t factor_count);

struct NegativityResult {
  double negativity = 0.0;
  double log_negativity = 0.0;
  bool ppt = true;
};

struct EntanglementReport {
  std::optional<double> concurrence; // two-qubit states only
  double negativity = 0.0;
  double log_negativity = 0.0;
  bool ppt = true;
  Bipartition bipartition;
};

// Wootters concurrence of a two-qubit state (factor_dims must be {2,2}).
// Computed through the Hermitian reformulation √ρ ρ̃ √ρ whose eigenvalues
// are the squared Wootters roots; tiny negative eigenvalues from round-off
// are clamped to zero.
double concurrence_two_qubit(const DensityMatrix& rho);

// N = (‖ρ^{T_B}‖₁ - 1)/2 across the given bipartition, log-negativity
// ln(2N + 1), and whether the partial transpose stayed positive
// (min eigenvalue ≥ -1e-10). Values within 1e-10 of zero are clamped.
NegativityResult negativity(const DensityMatrix& rho, const Bipartition& bp);

// Concurrence of the reduced state of qubits (i, j) of an n-qubit state.
double pairwise_concurrence(const DensityMatrix& rho, Eigen::Index i,
                            Eigen::Index j);

// All measures at once; concurrence is filled in only for two-qubit states.
EntanglementReport entanglement_report(const DensityMatrix& rho,
                                       const Bipartition& bp);

} // namespace maxent
