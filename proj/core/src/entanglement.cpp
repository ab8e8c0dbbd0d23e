#include "maxent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace maxent {

namespace {

constexpr double kClampTol = 1e-10;

ComplexMatrix psd_sqrt(const ComplexMatrix& A) {
  EigenSystem sys = hermitian_eig(A);
  RealVector roots(sys.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    roots(i) = std::sqrt(std::max(0.0, sys.eigenvalues(i)));
  return sys.eigenvectors * roots.asDiagonal() * sys.eigenvectors.adjoint();
}

void require_contiguous(const std::vector<Eigen::Index>& group,
                        const std::string& what) {
  std::vector<Eigen::Index> sorted = group;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k] != sorted[k - 1] + 1)
      throw std::invalid_argument(
          what + ": transposed factor group must be contiguous");
}

} // namespace

Bipartition half_split(std::size_t factor_count) {
  if (factor_count < 2)
    throw std::invalid_argument("half_split: needs at least two factors");
  Bipartition bp;
  const std::size_t cut = factor_count / 2;
  for (std::size_t m = 0; m < factor_count; ++m)
    (m < cut ? bp.left : bp.right).push_back(static_cast<Eigen::Index>(m));
  return bp;
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  if (rho.factor_dims() != std::vector<Eigen::Index>{2, 2})
    throw std::invalid_argument(
        "concurrence_two_qubit: state must have factor dims (2,2)");

  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const ComplexMatrix flipped = yy * rho.matrix().conjugate() * yy;
  const ComplexMatrix root = psd_sqrt(rho.matrix());

  // Eigenvalues of √ρ ρ̃ √ρ equal those of ρρ̃; this route keeps the
  // problem Hermitian.
  RealVector mu = hermitian_eig(hermitize(root * flipped * root)).eigenvalues;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    mu(i) = std::max(0.0, mu(i)); // round-off can dip a hair below zero

  // Ascending order: the largest root minus the other three.
  const double c = std::sqrt(mu(3)) - std::sqrt(mu(2)) - std::sqrt(mu(1)) -
                   std::sqrt(mu(0));
  return std::clamp(c, 0.0, 1.0);
}

NegativityResult negativity(const DensityMatrix& rho, const Bipartition& bp) {
  const auto& dims = rho.factor_dims();
  if (bp.left.empty() || bp.right.empty())
    throw std::invalid_argument("negativity: both groups must be non-empty");

  std::vector<Eigen::Index> all = bp.left;
  all.insert(all.end(), bp.right.begin(), bp.right.end());
  std::vector<Eigen::Index> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != static_cast<Eigen::Index>(k))
      throw std::invalid_argument(
          "negativity: groups must partition the factor indices");
  if (sorted.size() != dims.size())
    throw std::invalid_argument(
        "negativity: groups must cover every factor exactly once");
  require_contiguous(bp.right, "negativity");

  const ComplexMatrix pt = partial_transpose(rho.matrix(), dims, bp.right);
  const RealVector spectrum = hermitian_eigenvalues(pt);

  NegativityResult out;
  double n = 0.5 * (spectrum.cwiseAbs().sum() - 1.0);
  if (std::abs(n) <= kClampTol) n = 0.0;
  out.negativity = std::max(0.0, n);
  out.log_negativity = std::log(2.0 * out.negativity + 1.0);
  out.ppt = spectrum.minCoeff() >= -kClampTol;
  return out;
}

double pairwise_concurrence(const DensityMatrix& rho, Eigen::Index i,
                            Eigen::Index j) {
  for (Eigen::Index d : rho.factor_dims())
    if (d != 2)
      throw std::invalid_argument(
          "pairwise_concurrence: all factors must be qubits");
  if (i == j)
    throw std::invalid_argument("pairwise_concurrence: sites must differ");
  const DensityMatrix pair = partial_trace(rho, {i, j});
  return concurrence_two_qubit(pair);
}

EntanglementReport entanglement_report(const DensityMatrix& rho,
                                       const Bipartition& bp) {
  EntanglementReport report;
  report.bipartition = bp;
  const NegativityResult n = negativity(rho, bp);
  report.negativity = n.negativity;
  report.log_negativity = n.log_negativity;
  report.ppt = n.ppt;
  if (rho.factor_dims() == std::vector<Eigen::Index>{2, 2})
    report.concurrence = concurrence_two_qubit(rho);
  return report;
}

} // namespace maxent
