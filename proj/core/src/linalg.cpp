#include "maxent/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace maxent {

double max_abs(const ComplexMatrix& A) {
  if (A.size() == 0) return 0.0;
  return A.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const Complex& z = A(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

double hermiticity_defect(const ComplexMatrix& A) {
  return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& A, double rel_tol) {
  if (A.rows() != A.cols()) return false;
  if (A.size() == 0) return true;
  return hermiticity_defect(A) <= rel_tol * max_abs(A);
}

ComplexMatrix hermitize(const ComplexMatrix& A) {
  return 0.5 * (A + A.adjoint());
}

void require_square_finite(const ComplexMatrix& A, const std::string& what) {
  if (A.rows() != A.cols())
    throw std::invalid_argument(what + ": matrix must be square, got " +
                                std::to_string(A.rows()) + "x" +
                                std::to_string(A.cols()));
  if (A.rows() == 0)
    throw std::invalid_argument(what + ": matrix must be non-empty");
  if (!all_finite(A))
    throw std::invalid_argument(what + ": matrix has non-finite entries");
}

void require_hermitian(const ComplexMatrix& A, const std::string& what,
                       double rel_tol) {
  require_square_finite(A, what);
  const double defect = hermiticity_defect(A);
  const double scale = max_abs(A);
  if (defect > rel_tol * scale)
    throw std::invalid_argument(what + ": matrix is not Hermitian (defect " +
                                std::to_string(defect) + " exceeds " +
                                std::to_string(rel_tol) + " * max|A|)");
}

HermitianObservable::HermitianObservable(ComplexMatrix matrix,
                                         std::string label)
    : label_(std::move(label)) {
  require_hermitian(matrix, "HermitianObservable('" + label_ + "')");
  matrix_ = hermitize(matrix);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix,
                             std::vector<Eigen::Index> factor_dims,
                             double psd_floor)
    : factor_dims_(std::move(factor_dims)) {
  require_hermitian(matrix, "DensityMatrix");
  if (factor_dims_.empty()) factor_dims_ = {matrix.rows()};
  Eigen::Index prod = 1;
  for (Eigen::Index d : factor_dims_) {
    if (d < 1)
      throw std::invalid_argument("DensityMatrix: factor dims must be >= 1");
    prod *= d;
  }
  if (prod != matrix.rows())
    throw std::invalid_argument(
        "DensityMatrix: factor dims multiply to " + std::to_string(prod) +
        ", matrix dim is " + std::to_string(matrix.rows()));
  const double tr = matrix.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) +
                                " is not 1 within 1e-10");
  matrix_ = hermitize(matrix);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_,
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("DensityMatrix: eigenvalue check failed");
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -std::abs(psd_floor))
    throw std::invalid_argument(
        "DensityMatrix: minimum eigenvalue " + std::to_string(min_eig) +
        " below positivity floor " + std::to_string(-std::abs(psd_floor)));
}

DensityMatrix DensityMatrix::with_factor_dims(
    std::vector<Eigen::Index> dims) const {
  DensityMatrix out = *this;
  Eigen::Index prod = 1;
  for (Eigen::Index d : dims) {
    if (d < 1)
      throw std::invalid_argument("with_factor_dims: dims must be >= 1");
    prod *= d;
  }
  if (prod != dim())
    throw std::invalid_argument("with_factor_dims: dims multiply to " +
                                std::to_string(prod) + ", matrix dim is " +
                                std::to_string(dim()));
  out.factor_dims_ = std::move(dims);
  return out;
}

EigenSystem hermitian_eig(const ComplexMatrix& A) {
  require_hermitian(A, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(A));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& A) {
  require_hermitian(A, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(A),
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error(
        "hermitian_eigenvalues: eigensolver did not converge");
  return es.eigenvalues();
}

ComplexMatrix spectral_fn(const ComplexMatrix& A,
                          const std::function<double(double)>& f) {
  EigenSystem sys = hermitian_eig(A);
  RealVector fw(sys.eigenvalues.size());
  for (Eigen::Index i = 0; i < fw.size(); ++i) {
    const double v = f(sys.eigenvalues(i));
    if (!std::isfinite(v))
      throw std::domain_error(
          "spectral_fn: function undefined at eigenvalue " +
          std::to_string(sys.eigenvalues(i)));
    fw(i) = v;
  }
  return sys.eigenvectors * fw.asDiagonal() * sys.eigenvectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  const Eigen::Index ar = A.rows(), ac = A.cols();
  const Eigen::Index br = B.rows(), bc = B.cols();
  ComplexMatrix K(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      K.block(i * br, j * bc, br, bc) = A(i, j) * B;
  return K;
}

ComplexMatrix kron_chain(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty())
    throw std::invalid_argument("kron_chain: empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

namespace {

// Strides of a row-major multi-index over the given factor dims:
// full index = sum_m idx[m] * stride[m].
std::vector<Eigen::Index> factor_strides(
    const std::vector<Eigen::Index>& dims) {
  std::vector<Eigen::Index> stride(dims.size(), 1);
  for (std::size_t m = dims.size(); m-- > 1;)
    stride[m - 1] = stride[m] * dims[m];
  return stride;
}

std::vector<Eigen::Index> checked_factor_indices(
    const std::vector<Eigen::Index>& which, std::size_t factor_count,
    const std::string& what) {
  if (which.empty()) throw std::invalid_argument(what + ": empty factor set");
  std::vector<Eigen::Index> idx = which;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.front() < 0 ||
      idx.back() >= static_cast<Eigen::Index>(factor_count))
    throw std::invalid_argument(what + ": factor index out of range");
  return idx;
}

} // namespace

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<Eigen::Index>& keep) {
  const auto& dims = rho.factor_dims();
  const auto kept =
      checked_factor_indices(keep, dims.size(), "partial_trace");

  std::vector<Eigen::Index> traced;
  for (Eigen::Index m = 0; m < static_cast<Eigen::Index>(dims.size()); ++m)
    if (!std::binary_search(kept.begin(), kept.end(), m)) traced.push_back(m);

  const auto stride = factor_strides(dims);

  std::vector<Eigen::Index> kept_dims, traced_dims;
  kept_dims.reserve(kept.size());
  for (Eigen::Index m : kept) kept_dims.push_back(dims[m]);
  for (Eigen::Index m : traced) traced_dims.push_back(dims[m]);

  const Eigen::Index out_dim = std::accumulate(
      kept_dims.begin(), kept_dims.end(), Eigen::Index{1},
      std::multiplies<>());
  const Eigen::Index traced_dim = std::accumulate(
      traced_dims.begin(), traced_dims.end(), Eigen::Index{1},
      std::multiplies<>());

  // Base offset of each kept (resp. traced) multi-index in the full index.
  auto offsets = [&stride](const std::vector<Eigen::Index>& group,
                           const std::vector<Eigen::Index>& group_dims,
                           Eigen::Index count) {
    std::vector<Eigen::Index> off(count, 0);
    for (Eigen::Index flat = 0; flat < count; ++flat) {
      Eigen::Index rem = flat;
      for (std::size_t m = group.size(); m-- > 0;) {
        off[flat] += (rem % group_dims[m]) * stride[group[m]];
        rem /= group_dims[m];
      }
    }
    return off;
  };

  const auto kept_off = offsets(kept, kept_dims, out_dim);
  const auto traced_off = offsets(traced, traced_dims, traced_dim);

  const ComplexMatrix& in = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index r = 0; r < out_dim; ++r)
    for (Eigen::Index c = 0; c < out_dim; ++c) {
      Complex sum(0.0, 0.0);
      for (Eigen::Index t = 0; t < traced_dim; ++t)
        sum += in(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
      out(r, c) = sum;
    }

  return DensityMatrix(std::move(out), kept_dims);
}

ComplexMatrix partial_transpose(const ComplexMatrix& mat,
                                const std::vector<Eigen::Index>& factor_dims,
                                const std::vector<Eigen::Index>& which) {
  require_square_finite(mat, "partial_transpose");
  const Eigen::Index full = std::accumulate(
      factor_dims.begin(), factor_dims.end(), Eigen::Index{1},
      std::multiplies<>());
  if (full != mat.rows())
    throw std::invalid_argument(
        "partial_transpose: factor dims inconsistent with matrix dim");
  const auto group =
      checked_factor_indices(which, factor_dims.size(), "partial_transpose");

  const auto stride = factor_strides(factor_dims);

  // Split any full index into (transposed part, untouched part).
  const Eigen::Index dim = mat.rows();
  std::vector<Eigen::Index> swap_part(dim, 0);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    for (Eigen::Index m : group)
      swap_part[idx] += ((idx / stride[m]) % factor_dims[m]) * stride[m];
  }

  ComplexMatrix out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const Eigen::Index r_keep = r - swap_part[r];
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Eigen::Index c_keep = c - swap_part[c];
      out(r_keep + swap_part[c], c_keep + swap_part[r]) = mat(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Eigen::Index which) {
  return partial_transpose(rho.matrix(), rho.factor_dims(), {which});
}

double trace_norm(const ComplexMatrix& A) {
  RealVector w = hermitian_eigenvalues(A);
  return w.cwiseAbs().sum();
}

DensityMatrix random_density_matrix(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1)
    throw std::invalid_argument("random_density_matrix: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix G(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      G(i, j) = Complex(re, im);
    }
  ComplexMatrix rho = G * G.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitize(rho), {dim});
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

} // namespace maxent
