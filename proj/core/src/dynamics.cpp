#include "maxent/dynamics.hpp"

#include "maxent/gibbs.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace maxent {

namespace {

double spectral_norm(const ComplexMatrix& A) {
  // max singular value = sqrt of max eigenvalue of A†A
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(A.adjoint() * A,
                                                  Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

} // namespace

LindbladSpec::LindbladSpec(HermitianObservable h,
                           std::vector<ComplexMatrix> jumps,
                           std::vector<double> gammas)
    : hamiltonian(std::move(h)),
      jump_ops(std::move(jumps)),
      rates(std::move(gammas)) {
  if (jump_ops.size() != rates.size())
    throw std::invalid_argument(
        "LindbladSpec: jump operator and rate counts differ");
  for (double g : rates)
    if (!(g >= 0.0) || !std::isfinite(g))
      throw std::invalid_argument("LindbladSpec: rates must be finite and >= 0");
  for (const auto& L : jump_ops) {
    require_square_finite(L, "LindbladSpec jump operator");
    if (L.rows() != hamiltonian.dim())
      throw std::invalid_argument(
          "LindbladSpec: jump operator dim does not match Hamiltonian");
  }
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho,
                           const LindbladSpec& spec) {
  if (rho.rows() != spec.dim() || rho.cols() != spec.dim())
    throw std::invalid_argument("lindblad_rhs: state dim mismatch");
  const Complex i_unit(0.0, 1.0);
  const ComplexMatrix& H = spec.hamiltonian.matrix();
  ComplexMatrix out = -i_unit * (H * rho - rho * H);
  for (std::size_t k = 0; k < spec.jump_ops.size(); ++k) {
    const ComplexMatrix& L = spec.jump_ops[k];
    const ComplexMatrix LdL = L.adjoint() * L;
    out += spec.rates[k] *
           (L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL));
  }
  return out;
}

int recommended_steps(const LindbladSpec& spec, double t_end) {
  if (!(t_end > 0.0))
    throw std::invalid_argument("recommended_steps: t_end must be positive");
  double scale = spectral_norm(spec.hamiltonian.matrix());
  for (std::size_t k = 0; k < spec.jump_ops.size(); ++k) {
    const double n = spectral_norm(spec.jump_ops[k]);
    scale += spec.rates[k] * n * n;
  }
  const double steps = std::ceil(200.0 * t_end * scale);
  return std::max(1, static_cast<int>(steps));
}

Trajectory propagate(const DensityMatrix& rho0, const LindbladSpec& spec,
                     double t_end, int steps) {
  if (steps < 1)
    throw std::invalid_argument("propagate: steps must be >= 1");
  if (!(t_end > 0.0))
    throw std::invalid_argument("propagate: t_end must be positive");
  if (rho0.dim() != spec.dim())
    throw std::invalid_argument("propagate: state dim does not match spec");

  const double h = t_end / steps;
  const auto& dims = rho0.factor_dims();
  const bool two_qubit = dims == std::vector<Eigen::Index>{2, 2};
  const bool split = dims.size() >= 2;
  const Bipartition bp = split ? half_split(dims.size()) : Bipartition{};

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);

  auto record = [&](double t, const DensityMatrix& state) {
    traj.times.push_back(t);
    traj.series["entropy"].push_back(von_neumann_entropy(state));
    traj.series["energy"].push_back(
        (state.matrix().cwiseProduct(spec.hamiltonian.matrix().transpose()))
            .sum()
            .real());
    if (split) {
      const NegativityResult n = negativity(state, bp);
      traj.series["negativity"].push_back(n.negativity);
      traj.series["log_negativity"].push_back(n.log_negativity);
    }
    if (two_qubit)
      traj.series["concurrence"].push_back(concurrence_two_qubit(state));
    traj.states.push_back(state);
  };

  record(0.0, rho0);

  ComplexMatrix rho = rho0.matrix();
  for (int step = 1; step <= steps; ++step) {
    const ComplexMatrix k1 = lindblad_rhs(rho, spec);
    const ComplexMatrix k2 = lindblad_rhs(rho + 0.5 * h * k1, spec);
    const ComplexMatrix k3 = lindblad_rhs(rho + 0.5 * h * k2, spec);
    const ComplexMatrix k4 = lindblad_rhs(rho + h * k3, spec);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    rho = hermitize(rho);
    const double tr = rho.trace().real();
    traj.max_trace_drift = std::max(traj.max_trace_drift, std::abs(tr - 1.0));
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho,
                                                    Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-6)
      throw std::runtime_error(
          "propagate: state eigenvalue " + std::to_string(min_eig) +
          " fell below -1e-6 at t=" + std::to_string(step * h) +
          "; reduce the step size");

    record(step * h, DensityMatrix(rho, dims, /*psd_floor=*/1e-6));
  }

  return traj;
}

} // namespace maxent
