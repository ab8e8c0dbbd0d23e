// linalg.hpp — dense complex Hermitian linear algebra for finite-dimensional
// quantum states: eigendecomposition, spectral functions, Kronecker products,
// partial trace / partial transpose, trace norm, seeded test states.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace maxent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Relative tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

// Eigenvalues of a density matrix below this are treated as exactly zero
// (0 ln 0 = 0 convention).
inline constexpr double kEntropyEigenvalueFloor = 1e-14;

double max_abs(const ComplexMatrix& A);
bool all_finite(const ComplexMatrix& A);

// max_ij |A[i][j] - conj(A[j][i])|
double hermiticity_defect(const ComplexMatrix& A);

bool is_hermitian(const ComplexMatrix& A, double rel_tol = kHermitianTol);

// (A + A†)/2
ComplexMatrix hermitize(const ComplexMatrix& A);

// Throws std::invalid_argument unless A is square with finite entries.
void require_square_finite(const ComplexMatrix& A, const std::string& what);

// Throws std::invalid_argument unless A is Hermitian within rel_tol.
void require_hermitian(const ComplexMatrix& A, const std::string& what,
                       double rel_tol = kHermitianTol);

/// A labelled Hermitian operator. Validated on construction and stored
/// symmetrized, so downstream eigensolves never see representation noise.
class HermitianObservable {
 public:
  HermitianObservable(ComplexMatrix matrix, std::string label);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  std::string label_;
};

/// Positive semidefinite unit-trace matrix together with the dimensions of
/// its tensor factors (product of factor_dims equals the matrix dimension).
class DensityMatrix {
 public:
  // psd_floor is the most negative eigenvalue tolerated; integrators that
  // accumulate harmless round-off pass a relaxed floor.
  DensityMatrix(ComplexMatrix matrix, std::vector<Eigen::Index> factor_dims,
                double psd_floor = 1e-10);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<Eigen::Index>& factor_dims() const { return factor_dims_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  std::size_t factor_count() const { return factor_dims_.size(); }

  // Same matrix, reinterpreted with a different tensor decomposition.
  DensityMatrix with_factor_dims(std::vector<Eigen::Index> dims) const;

 private:
  ComplexMatrix matrix_;
  std::vector<Eigen::Index> factor_dims_;
};

struct EigenSystem {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns; A = V diag(w) V†
};

// Eigendecomposition of a Hermitian matrix. Input is validated and
// symmetrized first; eigenvalues come back ascending. Within a degenerate
// subspace neither eigenvector order nor phase is guaranteed.
EigenSystem hermitian_eig(const ComplexMatrix& A);

// Ascending eigenvalues only (skips the eigenvector computation).
RealVector hermitian_eigenvalues(const ComplexMatrix& A);

// V diag(f(w)) V† for Hermitian A = V diag(w) V†. Throws std::domain_error
// if f is undefined (non-finite) at any eigenvalue.
ComplexMatrix spectral_fn(const ComplexMatrix& A,
                          const std::function<double(double)>& f);

// Kronecker product, (A⊗B)[i·dB+k][j·dB+l] = A[i][j]·B[k][l].
ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

// Left-fold kron over a list of factors.
ComplexMatrix kron_chain(const std::vector<ComplexMatrix>& factors);

// Trace out every factor not in `keep`; kept factors stay in their original
// order. `keep` holds factor indices (duplicates ignored), must be non-empty.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Eigen::Index>& keep);

// Transpose a single tensor factor. Pure entry permutation, hence an exact
// involution; the result is generally not positive semidefinite.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Eigen::Index which);

// As above for a group of factors (transposes compose factorwise).
ComplexMatrix partial_transpose(const ComplexMatrix& mat,
                                const std::vector<Eigen::Index>& factor_dims,
                                const std::vector<Eigen::Index>& which);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& A);

// Full-rank state G·G†/tr(G·G†) from a seeded complex Gaussian G.
// Deterministic for a fixed seed. factor_dims is {dim}.
DensityMatrix random_density_matrix(Eigen::Index dim, std::uint64_t seed);

// 2×2 primitives
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix identity(Eigen::Index dim);

} // namespace maxent
