#include "maxent/models.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace maxent {

namespace {

ComplexMatrix pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::X: return pauli_x();
    case Pauli::Y: return pauli_y();
    case Pauli::Z: return pauli_z();
  }
  throw std::invalid_argument("pauli_matrix: bad enumerator");
}

ComplexMatrix site_matrix(Pauli pauli, int site, int n) {
  if (n < 1) throw std::invalid_argument("site_operator: n must be >= 1");
  if (site < 0 || site >= n)
    throw std::out_of_range("site_operator: site " + std::to_string(site) +
                            " out of range for n=" + std::to_string(n));
  std::vector<ComplexMatrix> factors;
  factors.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m)
    factors.push_back(m == site ? pauli_matrix(pauli) : identity(2));
  return kron_chain(factors);
}

ComplexMatrix bond_matrix(Pauli pauli, int i, int j, int n) {
  return site_matrix(pauli, i, n) * site_matrix(pauli, j, n);
}

// Deterministic bond order: (0,1), (1,2), …, plus (n-1, 0) when periodic.
std::vector<std::pair<int, int>> bonds(int n, bool periodic) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < n; ++i) out.emplace_back(i, i + 1);
  if (periodic) out.emplace_back(n - 1, 0);
  return out;
}

std::vector<Eigen::Index> qubit_dims(int n) {
  return std::vector<Eigen::Index>(static_cast<std::size_t>(n), 2);
}

void check_chain_size(int n, const std::string& what) {
  if (n < 2 || n > 12)
    throw std::invalid_argument(what + ": n must be in [2, 12], got " +
                                std::to_string(n));
}

DensityMatrix pure_state(const Eigen::VectorXcd& psi,
                         std::vector<Eigen::Index> dims) {
  Eigen::VectorXcd v = psi / psi.norm();
  return DensityMatrix(v * v.adjoint(), std::move(dims));
}

} // namespace

SpinModel spin_model_from_string(const std::string& name) {
  if (name == "TFIM") return SpinModel::TFIM;
  if (name == "XXZ") return SpinModel::XXZ;
  if (name == "HEISENBERG") return SpinModel::HEISENBERG;
  throw std::invalid_argument("unknown spin model '" + name +
                              "' (expected TFIM, XXZ or HEISENBERG)");
}

std::string to_string(SpinModel model) {
  switch (model) {
    case SpinModel::TFIM: return "TFIM";
    case SpinModel::XXZ: return "XXZ";
    case SpinModel::HEISENBERG: return "HEISENBERG";
  }
  return "?";
}

void SpinChainSpec::validate() const {
  check_chain_size(n, "SpinChainSpec");
  if (!std::isfinite(anisotropy))
    throw std::invalid_argument("SpinChainSpec: anisotropy must be finite");
}

HermitianObservable site_operator(Pauli pauli, int site, int n) {
  const char* name = pauli == Pauli::X ? "x" : pauli == Pauli::Y ? "y" : "z";
  return HermitianObservable(
      site_matrix(pauli, site, n),
      std::string("sigma_") + name + "_" + std::to_string(site));
}

ObservableSet tfim_observables(int n, bool periodic) {
  check_chain_size(n, "tfim_observables");
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexMatrix bond = ComplexMatrix::Zero(d, d);
  for (const auto& [i, j] : bonds(n, periodic))
    bond -= bond_matrix(Pauli::Z, i, j, n);
  ComplexMatrix field = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < n; ++i) field -= site_matrix(Pauli::X, i, n);
  return ObservableSet({HermitianObservable(std::move(bond), "bond"),
                        HermitianObservable(std::move(field), "field")},
                       qubit_dims(n));
}

ObservableSet xxz_observables(int n, bool periodic) {
  check_chain_size(n, "xxz_observables");
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexMatrix xy = ComplexMatrix::Zero(d, d);
  ComplexMatrix zz = ComplexMatrix::Zero(d, d);
  for (const auto& [i, j] : bonds(n, periodic)) {
    xy += bond_matrix(Pauli::X, i, j, n) + bond_matrix(Pauli::Y, i, j, n);
    zz += bond_matrix(Pauli::Z, i, j, n);
  }
  return ObservableSet({HermitianObservable(std::move(xy), "xy"),
                        HermitianObservable(std::move(zz), "zz")},
                       qubit_dims(n));
}

ObservableSet heisenberg_observables(int n, bool periodic) {
  check_chain_size(n, "heisenberg_observables");
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexMatrix heis = ComplexMatrix::Zero(d, d);
  for (const auto& [i, j] : bonds(n, periodic))
    heis += bond_matrix(Pauli::X, i, j, n) + bond_matrix(Pauli::Y, i, j, n) +
            bond_matrix(Pauli::Z, i, j, n);
  return ObservableSet({HermitianObservable(std::move(heis), "heis")},
                       qubit_dims(n));
}

ObservableSet chain_observables(const SpinChainSpec& spec) {
  spec.validate();
  switch (spec.model) {
    case SpinModel::TFIM: return tfim_observables(spec.n, spec.periodic);
    case SpinModel::XXZ: return xxz_observables(spec.n, spec.periodic);
    case SpinModel::HEISENBERG:
      return heisenberg_observables(spec.n, spec.periodic);
  }
  throw std::invalid_argument("chain_observables: bad model enumerator");
}

DensityMatrix bell_phi_plus() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = 1.0;
  psi(3) = 1.0;
  return pure_state(psi, {2, 2});
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("werner_state: p must lie in [0, 1]");
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  ComplexMatrix rho = p * (singlet * singlet.adjoint()).eval() +
                      (1.0 - p) * 0.25 * identity(4);
  return DensityMatrix(std::move(rho), {2, 2});
}

DensityMatrix ghz_state(int n) {
  check_chain_size(n, "ghz_state");
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi(0) = 1.0;
  psi(d - 1) = 1.0;
  return pure_state(psi, qubit_dims(n));
}

DensityMatrix w_state(int n) {
  check_chain_size(n, "w_state");
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  for (int k = 0; k < n; ++k)
    psi(Eigen::Index{1} << (n - 1 - k)) = 1.0; // excitation on site k
  return pure_state(psi, qubit_dims(n));
}

DensityMatrix dimer_gibbs(double beta) {
  if (!std::isfinite(beta))
    throw std::invalid_argument("dimer_gibbs: beta must be finite");
  return gibbs_state(heisenberg_observables(2, false),
                     Multipliers({beta}))
      .state();
}

} // namespace maxent
