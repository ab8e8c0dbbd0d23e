#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "maxent/models.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace maxent;

namespace {

// cyclic shift by one site: basis index bit-rotation, exact permutation
ComplexMatrix cyclic_shift(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  ComplexMatrix P = ComplexMatrix::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    // site 0 is the leftmost factor = most significant bit
    const Eigen::Index top = (b >> (n - 1)) & 1;
    const Eigen::Index shifted = ((b << 1) & (d - 1)) | top;
    P(shifted, b) = 1.0;
  }
  return P;
}

// closed-form spectrum of the two-site chain at multipliers (beta, beta*g):
// {-beta*sqrt(1+4g^2), -beta, +beta, +beta*sqrt(1+4g^2)}
std::array<double, 4> tfim2_open_spectrum(double beta, double g) {
  const double root = std::sqrt(1.0 + 4.0 * g * g);
  return {-beta * root, -beta, beta, beta * root};
}

} // namespace

TEST_CASE("site_operator basics") {
  CHECK(site_operator(Pauli::Z, 0, 1).matrix() == pauli_z());
  CHECK(site_operator(Pauli::X, 1, 2).matrix() == kron(identity(2), pauli_x()));

  const ComplexMatrix z0 = site_operator(Pauli::Z, 0, 3).matrix();
  CHECK(oracles::max_abs_diff(z0 * z0, identity(8)) == 0.0);

  CHECK_THROWS_AS(site_operator(Pauli::X, 3, 3), std::out_of_range);
}

TEST_CASE("tfim_observables structure at n=2") {
  const ObservableSet obs = tfim_observables(2, false);
  REQUIRE(obs.size() == 2);
  CHECK(obs[0].label() == "bond");
  CHECK(obs[1].label() == "field");
  CHECK(obs[0].matrix() == (-kron(pauli_z(), pauli_z())).eval());
  CHECK(obs[1].matrix() ==
        (-kron(pauli_x(), identity(2)) - kron(identity(2), pauli_x())).eval());
  CHECK(obs.factor_dims() == std::vector<Eigen::Index>{2, 2});
}

TEST_CASE("tfim effective spectrum matches the closed form at n=2") {
  const ObservableSet obs = tfim_observables(2, false);
  for (auto [beta, g] : {std::pair<double, double>{1.0, 1.0},
                         {2.0, 0.3},
                         {0.7, 2.5}}) {
    const RealVector w = hermitian_eigenvalues(
        effective_hamiltonian(obs, Multipliers({beta, beta * g})));
    const auto expected = tfim2_open_spectrum(beta, g);
    for (int i = 0; i < 4; ++i)
      CHECK(w(i) == doctest::Approx(expected[static_cast<std::size_t>(i)])
                        .epsilon(1e-12));
  }
  // ground energy at beta=1, g=1 is -sqrt(5)
  const RealVector w = hermitian_eigenvalues(
      effective_hamiltonian(obs, Multipliers({1.0, 1.0})));
  CHECK(w(0) == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("periodic boundary adds exactly the wrap bond") {
  const ComplexMatrix open = tfim_observables(3, false)[0].matrix();
  const ComplexMatrix periodic = tfim_observables(3, true)[0].matrix();
  const ComplexMatrix wrap =
      site_operator(Pauli::Z, 2, 3).matrix() *
      site_operator(Pauli::Z, 0, 3).matrix();
  CHECK(periodic - open == (-wrap).eval());

  const ObservableSet xxz_open = xxz_observables(3, false);
  const ObservableSet xxz_per = xxz_observables(3, true);
  const ComplexMatrix zz_wrap =
      site_operator(Pauli::Z, 2, 3).matrix() *
      site_operator(Pauli::Z, 0, 3).matrix();
  CHECK(xxz_per[1].matrix() - xxz_open[1].matrix() == zz_wrap);
  const ComplexMatrix xy_wrap =
      site_operator(Pauli::X, 2, 3).matrix() *
          site_operator(Pauli::X, 0, 3).matrix() +
      site_operator(Pauli::Y, 2, 3).matrix() *
          site_operator(Pauli::Y, 0, 3).matrix();
  CHECK(xxz_per[0].matrix() - xxz_open[0].matrix() == xy_wrap);
}

TEST_CASE("generated observables are Hermitian, traceless and integral") {
  for (const ObservableSet& obs :
       {tfim_observables(4, true), xxz_observables(4, true),
        heisenberg_observables(4, false), tfim_observables(8, true)}) {
    for (std::size_t l = 0; l < obs.size(); ++l) {
      const ComplexMatrix& A = obs[l].matrix();
      CHECK(hermiticity_defect(A) == 0.0);
      CHECK(A.trace() == Complex(0.0, 0.0));
    }
  }
}

TEST_CASE("tfim n=8 periodic bond observable counts its bonds") {
  const ObservableSet obs = tfim_observables(8, true);
  // -A_bond squared has trace 8·d on the ZZ terms' diagonal:
  // tr(A_bond²) = (number of bonds)·2^n since distinct ZZ strings are
  // orthogonal under the trace inner product
  const double t = (obs[0].matrix() * obs[0].matrix()).trace().real();
  CHECK(t == doctest::Approx(8.0 * 256.0));
  CHECK(obs[0].matrix().trace() == Complex(0.0, 0.0));
}

TEST_CASE("xxz observables at n=2 and the magnetization symmetry") {
  const ObservableSet obs = xxz_observables(2, false);
  const RealVector w = hermitian_eigenvalues(obs[0].matrix());
  CHECK(w(0) == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(w(1) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(w(2) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(w(3) == doctest::Approx(2.0).epsilon(1e-13));

  for (int n : {2, 3, 4}) {
    const ObservableSet set = xxz_observables(n, true);
    ComplexMatrix mag = ComplexMatrix::Zero(Eigen::Index{1} << n,
                                            Eigen::Index{1} << n);
    for (int i = 0; i < n; ++i) mag += site_operator(Pauli::Z, i, n).matrix();
    for (std::size_t l = 0; l < set.size(); ++l) {
      const ComplexMatrix& A = set[l].matrix();
      CHECK(max_abs(mag * A - A * mag) <= 1e-12);
    }
  }
}

TEST_CASE("periodic observables are invariant under cyclic shifts") {
  for (int n : {3, 4, 5}) {
    const ComplexMatrix P = cyclic_shift(n);
    for (const ObservableSet& obs :
         {tfim_observables(n, true), xxz_observables(n, true),
          heisenberg_observables(n, true)}) {
      for (std::size_t l = 0; l < obs.size(); ++l) {
        const ComplexMatrix& A = obs[l].matrix();
        CHECK((P * A * P.adjoint()).eval() == A);
      }
    }
  }
}

TEST_CASE("chain size limits are enforced") {
  CHECK_THROWS_AS(tfim_observables(1, false), std::invalid_argument);
  CHECK_THROWS_AS(tfim_observables(13, false), std::invalid_argument);
  SpinChainSpec bad;
  bad.n = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("reference states") {
  const DensityMatrix w0 = werner_state(0.0);
  CHECK(oracles::max_abs_diff(w0.matrix(), 0.25 * identity(4)) <= 1e-15);
  CHECK_THROWS_AS(werner_state(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(werner_state(1.1), std::invalid_argument);

  const DensityMatrix bell = bell_phi_plus();
  CHECK(von_neumann_entropy(bell) <= 1e-12);
  const DensityMatrix reduced = partial_trace(bell, {1});
  CHECK(oracles::max_abs_diff(reduced.matrix(), 0.5 * identity(2)) <= 1e-14);

  const DensityMatrix ghz = ghz_state(3);
  CHECK(von_neumann_entropy(ghz) <= 1e-12);
  CHECK(ghz.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(ghz.matrix()(7, 7).real() == doctest::Approx(0.5));

  const DensityMatrix w = w_state(3);
  CHECK(von_neumann_entropy(w) <= 1e-12);
  // weight on |100>, |010>, |001> is 1/3 each
  CHECK(w.matrix()(4, 4).real() == doctest::Approx(1.0 / 3.0));
  CHECK(w.matrix()(2, 2).real() == doctest::Approx(1.0 / 3.0));
  CHECK(w.matrix()(1, 1).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("dimer_gibbs equals the hand-built Bell-diagonal state") {
  const double beta = 0.9;
  // exchange spectrum: singlet -3, triplet +1
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  const ComplexMatrix ps = singlet * singlet.adjoint();
  const ComplexMatrix pt = identity(4) - ps;
  const double zs = std::exp(3.0 * beta);
  const double zt = std::exp(-beta);
  const ComplexMatrix expected = (zs * ps + zt * pt) / (zs + 3.0 * zt);

  CHECK(oracles::max_abs_diff(dimer_gibbs(beta).matrix(), expected) <= 1e-12);
  CHECK(dimer_gibbs(beta).factor_dims() == std::vector<Eigen::Index>{2, 2});
}

TEST_CASE("model name round trip") {
  for (SpinModel m :
       {SpinModel::TFIM, SpinModel::XXZ, SpinModel::HEISENBERG})
    CHECK(spin_model_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(spin_model_from_string("ISING"), std::invalid_argument);
}
