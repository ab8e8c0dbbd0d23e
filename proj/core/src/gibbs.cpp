#include "maxent/gibbs.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace maxent {

namespace {

// Spectral spread beyond which the smallest Boltzmann weight leaves the
// normal double range even after shifting.
constexpr double kMaxSpectralSpread = 700.0;

// Divided-difference kernel switches to its equal-eigenvalue limit below
// this gap, where the quotient loses precision.
constexpr double kDegenerateGap = 1e-10;

struct StabilizedWeights {
  double shift = 0.0;     // min eigenvalue
  RealVector weights;     // exp(-(ε_i - shift))
  double weight_sum = 0.0;
  double ln_z = 0.0;
};

StabilizedWeights stabilized_weights(const RealVector& eps) {
  StabilizedWeights out;
  out.shift = eps.minCoeff();
  const double spread = eps.maxCoeff() - out.shift;
  if (spread > kMaxSpectralSpread)
    throw std::range_error(
        "gibbs: spectral spread " + std::to_string(spread) +
        " of the effective Hamiltonian exceeds " +
        std::to_string(kMaxSpectralSpread) +
        "; Boltzmann weights would underflow");
  out.weights = (-(eps.array() - out.shift)).exp();
  out.weight_sum = out.weights.sum();
  out.ln_z = -out.shift + std::log(out.weight_sum);
  return out;
}

double real_trace_product(const ComplexMatrix& rho, const ComplexMatrix& A,
                          const std::string& what) {
  // tr(ρA) = Σ_ij ρ_ij A_ji without forming the product.
  const Complex t = rho.cwiseProduct(A.transpose()).sum();
  if (std::abs(t.imag()) > 1e-10)
    throw std::runtime_error(what + ": trace has imaginary residue " +
                             std::to_string(t.imag()));
  return t.real();
}

void require_pairing(const ObservableSet& obs, const Multipliers& lambda,
                     const std::string& what) {
  if (obs.size() != lambda.size())
    throw std::invalid_argument(what + ": " + std::to_string(obs.size()) +
                                " observables paired with " +
                                std::to_string(lambda.size()) +
                                " multipliers");
}

} // namespace

ObservableSet::ObservableSet(std::vector<HermitianObservable> observables,
                             std::vector<Eigen::Index> factor_dims)
    : factor_dims_(std::move(factor_dims)) {
  if (observables.empty())
    throw std::invalid_argument("ObservableSet: needs at least one observable");
  const Eigen::Index d = observables[0].dim();
  std::set<std::string> seen;
  for (const auto& a : observables) {
    if (a.dim() != d)
      throw std::invalid_argument("ObservableSet: observable '" + a.label() +
                                  "' has dim " + std::to_string(a.dim()) +
                                  ", expected " + std::to_string(d));
    if (!seen.insert(a.label()).second)
      throw std::invalid_argument("ObservableSet: duplicate label '" +
                                  a.label() + "'");
  }
  if (factor_dims_.empty()) factor_dims_ = {d};
  Eigen::Index prod = 1;
  for (Eigen::Index f : factor_dims_) prod *= f;
  if (prod != d)
    throw std::invalid_argument(
        "ObservableSet: factor dims inconsistent with observable dim");
  items_ = std::make_shared<const std::vector<HermitianObservable>>(
      std::move(observables));
}

std::vector<std::string> ObservableSet::labels() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const auto& a : *items_) out.push_back(a.label());
  return out;
}

Multipliers::Multipliers(std::vector<double> v) : values(std::move(v)) {
  for (double x : values)
    if (!std::isfinite(x))
      throw std::invalid_argument("Multipliers: non-finite entry");
}

Multipliers Multipliers::zeros(std::size_t count) {
  return Multipliers(std::vector<double>(count, 0.0));
}

ComplexMatrix effective_hamiltonian(const ObservableSet& obs,
                                    const Multipliers& lambda) {
  require_pairing(obs, lambda, "effective_hamiltonian");
  ComplexMatrix H = ComplexMatrix::Zero(obs.dim(), obs.dim());
  for (std::size_t l = 0; l < obs.size(); ++l)
    H += lambda[l] * obs[l].matrix();
  return H;
}

GibbsEnsemble::GibbsEnsemble(ObservableSet obs, Multipliers lambda)
    : obs_(std::move(obs)), lambda_(std::move(lambda)) {
  require_pairing(obs_, lambda_, "GibbsEnsemble");
  const ComplexMatrix H = effective_hamiltonian(obs_, lambda_);
  EigenSystem sys = hermitian_eig(H);
  eff_eigenvalues_ = std::move(sys.eigenvalues);
  eff_eigenvectors_ = std::move(sys.eigenvectors);

  const StabilizedWeights sw = stabilized_weights(eff_eigenvalues_);
  ln_z_ = sw.ln_z;
  probabilities_ = sw.weights / sw.weight_sum;

  ComplexMatrix rho = eff_eigenvectors_ *
                      probabilities_.cast<Complex>().asDiagonal() *
                      eff_eigenvectors_.adjoint();
  state_ = std::make_shared<const DensityMatrix>(hermitize(rho),
                                                 obs_.factor_dims());

  entropy_ = 0.0;
  for (Eigen::Index i = 0; i < probabilities_.size(); ++i) {
    const double p = probabilities_(i);
    if (p > 0.0) entropy_ -= p * std::log(p);
  }

  means_.reserve(obs_.size());
  for (std::size_t l = 0; l < obs_.size(); ++l)
    means_.push_back(real_trace_product(state_->matrix(), obs_[l].matrix(),
                                        "GibbsEnsemble means"));
}

GibbsEnsemble gibbs_state(const ObservableSet& obs,
                          const Multipliers& lambda) {
  return GibbsEnsemble(obs, lambda);
}

double log_partition(const ObservableSet& obs, const Multipliers& lambda) {
  require_pairing(obs, lambda, "log_partition");
  const RealVector eps =
      hermitian_eigenvalues(effective_hamiltonian(obs, lambda));
  return stabilized_weights(eps).ln_z;
}

double free_energy(const ObservableSet& obs, const Multipliers& lambda) {
  return -log_partition(obs, lambda);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector w = hermitian_eigenvalues(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > kEntropyEigenvalueFloor) s -= w(i) * std::log(w(i));
  return s;
}

double free_energy_functional(const DensityMatrix& rho,
                              const ObservableSet& obs,
                              const Multipliers& lambda) {
  require_pairing(obs, lambda, "free_energy_functional");
  if (rho.dim() != obs.dim())
    throw std::invalid_argument("free_energy_functional: state dim " +
                                std::to_string(rho.dim()) +
                                " does not match observable dim " +
                                std::to_string(obs.dim()));
  double value = -von_neumann_entropy(rho);
  for (std::size_t l = 0; l < obs.size(); ++l)
    value += lambda[l] * real_trace_product(rho.matrix(), obs[l].matrix(),
                                            "free_energy_functional");
  return value;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  if (rho.matrix() == sigma.matrix()) return 0.0;

  const RealVector r = hermitian_eigenvalues(rho.matrix());
  double tr_rho_ln_rho = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r(i) > kEntropyEigenvalueFloor) tr_rho_ln_rho += r(i) * std::log(r(i));

  EigenSystem sig = hermitian_eig(sigma.matrix());
  const RealVector weight_on_sigma_basis =
      (sig.eigenvectors.adjoint() * rho.matrix() * sig.eigenvectors)
          .diagonal()
          .real();

  constexpr double kSupportEigTol = 1e-12;
  double kernel_mass = 0.0;
  double tr_rho_ln_sigma = 0.0;
  for (Eigen::Index j = 0; j < sig.eigenvalues.size(); ++j) {
    const double s = sig.eigenvalues(j);
    const double w = weight_on_sigma_basis(j);
    if (s <= kSupportEigTol) {
      kernel_mass += std::max(0.0, w);
    } else {
      tr_rho_ln_sigma += w * std::log(s);
    }
  }
  if (kernel_mass > 1e-10)
    throw std::domain_error(
        "relative_entropy: first state has weight " +
        std::to_string(kernel_mass) +
        " outside the support of the second; the divergence is infinite");

  return tr_rho_ln_rho - tr_rho_ln_sigma;
}

std::vector<double> mean_values(const ObservableSet& obs,
                                const DensityMatrix& rho) {
  if (rho.dim() != obs.dim())
    throw std::invalid_argument("mean_values: state dim " +
                                std::to_string(rho.dim()) +
                                " does not match observable dim " +
                                std::to_string(obs.dim()));
  std::vector<double> out;
  out.reserve(obs.size());
  for (std::size_t l = 0; l < obs.size(); ++l)
    out.push_back(
        real_trace_product(rho.matrix(), obs[l].matrix(), "mean_values"));
  return out;
}

std::vector<double> grad_free_energy(const ObservableSet& obs,
                                     const Multipliers& lambda) {
  return GibbsEnsemble(obs, lambda).mean_values();
}

RealMatrix kubo_mori_hessian(const GibbsEnsemble& ensemble) {
  const auto& obs = ensemble.observables();
  const RealVector& eps = ensemble.eff_eigenvalues();
  const ComplexMatrix& V = ensemble.eff_eigenvectors();
  const Eigen::Index d = eps.size();
  const std::size_t L = obs.size();

  // Weights relative to the shifted spectrum; the shift cancels against Z.
  const RealVector w = (-(eps.array() - eps.minCoeff())).exp();
  const double W = w.sum();

  RealMatrix kernel(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const double gap = eps(i) - eps(j);
      kernel(i, j) = (std::abs(gap) > kDegenerateGap)
                         ? (w(j) - w(i)) / (gap * W)
                         : w(i) / W;
    }

  std::vector<ComplexMatrix> in_basis;
  in_basis.reserve(L);
  for (std::size_t l = 0; l < L; ++l)
    in_basis.push_back(V.adjoint() * obs[l].matrix() * V);

  const auto& a = ensemble.mean_values();
  RealMatrix H(L, L);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t m = l; m < L; ++m) {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          sum += kernel(i, j) *
                 (in_basis[l](i, j) * in_basis[m](j, i)).real();
      const double h = sum - a[l] * a[m];
      H(l, m) = h;
      H(m, l) = h;
    }
  return H;
}

RealMatrix kubo_mori_hessian(const ObservableSet& obs,
                             const Multipliers& lambda) {
  return kubo_mori_hessian(GibbsEnsemble(obs, lambda));
}

InversionResult maxent_invert(const ObservableSet& obs,
                              const std::vector<double>& target_means,
                              double tol, int max_iter) {
  if (!(tol > 0.0))
    throw std::invalid_argument("maxent_invert: tol must be positive");
  if (max_iter < 0)
    throw std::invalid_argument("maxent_invert: max_iter must be >= 0");
  if (target_means.size() != obs.size())
    throw std::invalid_argument("maxent_invert: " +
                                std::to_string(target_means.size()) +
                                " targets for " + std::to_string(obs.size()) +
                                " observables");
  for (double t : target_means)
    if (!std::isfinite(t))
      throw std::invalid_argument("maxent_invert: non-finite target mean");

  const std::size_t L = obs.size();
  if (L == 1) {
    const RealVector w = hermitian_eigenvalues(obs[0].matrix());
    if (target_means[0] < w.minCoeff() || target_means[0] > w.maxCoeff())
      throw std::domain_error(
          "maxent_invert: target " + std::to_string(target_means[0]) +
          " lies outside the attainable range [" +
          std::to_string(w.minCoeff()) + ", " + std::to_string(w.maxCoeff()) +
          "] of observable '" + obs[0].label() + "'");
  }

  const Eigen::Map<const Eigen::VectorXd> target(target_means.data(),
                                                 static_cast<Eigen::Index>(L));

  auto dual_objective = [&](const Multipliers& lam, double ln_z) {
    double g = ln_z;
    for (std::size_t l = 0; l < L; ++l) g += lam[l] * target_means[l];
    return g;
  };

  Multipliers lambda = Multipliers::zeros(L);
  InversionResult best;
  best.lambda = lambda;
  best.residual_inf_norm = std::numeric_limits<double>::infinity();

  for (int it = 0;; ++it) {
    const GibbsEnsemble ens(obs, lambda);
    const auto& a = ens.mean_values();
    Eigen::VectorXd residual(static_cast<Eigen::Index>(L));
    for (std::size_t l = 0; l < L; ++l)
      residual(static_cast<Eigen::Index>(l)) = a[l] - target_means[l];
    const double res_inf = residual.cwiseAbs().maxCoeff();

    if (res_inf < best.residual_inf_norm) {
      best.lambda = lambda;
      best.residual_inf_norm = res_inf;
      best.iterations = it;
    }
    if (res_inf <= tol) {
      best.lambda = lambda;
      best.residual_inf_norm = res_inf;
      best.iterations = it;
      best.converged = true;
      return best;
    }
    if (it == max_iter) break;

    // Newton direction -H⁻¹∇G = H⁻¹(a - target), with a tiny Levenberg
    // shift so near-singular Hessians still factor.
    RealMatrix H = kubo_mori_hessian(ens);
    const double shift =
        1e-10 * H.trace() / static_cast<double>(L);
    H.diagonal().array() += shift;
    const Eigen::VectorXd direction = H.ldlt().solve(residual);
    if (!direction.allFinite()) break;

    const double g0 = dual_objective(lambda, ens.log_partition());
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      std::vector<double> trial(L);
      for (std::size_t l = 0; l < L; ++l)
        trial[l] = lambda[l] + step * direction(static_cast<Eigen::Index>(l));
      Multipliers trial_lambda(std::move(trial));
      double g_trial;
      try {
        g_trial = dual_objective(trial_lambda, log_partition(obs, trial_lambda));
      } catch (const std::range_error&) {
        g_trial = std::numeric_limits<double>::infinity();
      }
      // tolerate round-off-level non-decrease, otherwise Newton stalls one
      // ulp from the optimum
      if (g_trial <= g0 + 1e-14 * (1.0 + std::abs(g0))) {
        lambda = std::move(trial_lambda);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break; // flat to machine precision; report best iterate
  }

  best.converged = false;
  return best;
}

} // namespace maxent
