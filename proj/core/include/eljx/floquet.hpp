#pragma once

#include <Eigen/Core>
#include <memory>
#include <utility>

#include "eljx/common.hpp"
#include "eljx/fock_basis.hpp"
#include "eljx/model.hpp"

namespace eljx {

/// Time-periodic Hermitian generator sampled by the propagator.
class PeriodicHamiltonian {
public:
  virtual ~PeriodicHamiltonian() = default;

  virtual Eigen::Index dim() const = 0;
  virtual double period() const = 0;

  /// Fill `out` (dim x dim) with H(t).
  virtual void evaluate(double t, Eigen::MatrixXcd& out) const = 0;

  /// True when every entry of H(t) is real at all times. Enables the
  /// real-symmetric propagation path.
  virtual bool real_valued() const { return false; }

  /// True when H(T - t) = H(t) for all t (cosine drives). Lets the
  /// propagator reuse substep exponentials across the mirrored half-period.
  virtual bool mirror_symmetric() const { return false; }

  /// Real fast path; only called when real_valued() is true.
  virtual void evaluate_real(double t, Eigen::MatrixXd& out) const;
};

/// The driven boson chain in one particle-number sector.
class BoseChainHamiltonian final : public PeriodicHamiltonian {
public:
  BoseChainHamiltonian(const FockBasis& basis, const ModelParams& params,
                       const DisorderRealization& disorder);

  Eigen::Index dim() const override { return static_cast<Eigen::Index>(basis_->size()); }
  double period() const override { return params_.period(); }
  void evaluate(double t, Eigen::MatrixXcd& out) const override;
  void evaluate_real(double t, Eigen::MatrixXd& out) const override;
  bool real_valued() const override { return true; }
  bool mirror_symmetric() const override { return true; }

  const FockBasis& basis() const { return *basis_; }
  const ModelParams& params() const { return params_; }

private:
  std::shared_ptr<const FockBasis> basis_;
  ModelParams params_;
  DisorderRealization disorder_;
};

struct PropagatorSettings {
  int steps_per_period = 256; // K, must be even and >= 8
  double unitarity_tol = 1e-10;
  double convergence_tol = 1e-6;

  void validate() const;
};

/// Everything the one-period analysis produces.
struct FloquetResult {
  Eigen::MatrixXcd F;           // one-period propagator U(T)
  Eigen::VectorXd quasienergies; // ascending, in (-omega/2, omega/2]
  Eigen::MatrixXcd modes;       // columns = Floquet states at t = 0, same order
  Eigen::MatrixXcd h_eff;       // Hermitian generator of the stroboscopic map
  double omega = 0.0;
  double period = 0.0;
};

/// Midpoint-exponential propagator over one period: the product of
/// exp(-i H(t_mid) dt) over `steps` substeps. Each substep is exactly
/// unitary (eigendecomposition), the scheme is second order in dt.
Eigen::MatrixXcd one_period_propagator(const PeriodicHamiltonian& ham, int steps);

/// Evolve psi0 from t0 to t1 with the same midpoint scheme; the step size
/// matches settings.steps_per_period substeps per drive period. Warns on
/// stderr (and proceeds) when psi0 is not normalized.
Eigen::VectorXcd evolve_state(const Eigen::VectorXcd& psi0, double t0, double t1,
                              const ModelParams& params, const DisorderRealization& disorder,
                              const PropagatorSettings& settings);

/// One-period propagator of the driven chain; audits unitarity against
/// settings.unitarity_tol and throws numeric_error on violation.
Eigen::MatrixXcd floquet_operator(const ModelParams& params, const DisorderRealization& disorder,
                                  const PropagatorSettings& settings);

/// Eigenphases of a unitary F folded to the first Brillouin zone.
/// Returns quasienergies sorted ascending in (-omega/2, omega/2] and the
/// matching orthonormal eigenvector columns (Schur vectors, so the mode
/// matrix is unitary to machine precision even under near-degeneracy).
/// Rejects non-unitary input beyond `unitarity_tol`.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> quasienergy_spectrum(const Eigen::MatrixXcd& F,
                                                                  double omega,
                                                                  double unitarity_tol = 1e-8);

/// Hermitian effective Hamiltonian from the principal matrix logarithm:
/// H_eff = modes diag(eps) modes^dagger with eigenphases taken in (-pi, pi].
Eigen::MatrixXcd effective_hamiltonian(const Eigen::MatrixXcd& F, double period,
                                       double unitarity_tol = 1e-8);

/// Full pipeline for one disorder realization: F, spectrum, modes, H_eff,
/// with the unitarity / zone / reconstruction / orthonormality invariants
/// checked on every run.
FloquetResult floquet_analysis(const ModelParams& params, const DisorderRealization& disorder,
                               const PropagatorSettings& settings);

/// Max-norm difference between the propagators at `steps` and 2x`steps`
/// substeps; the step-halving self-convergence measure.
double propagation_self_error(const PeriodicHamiltonian& ham, int steps);

/// Map an energy into the first Brillouin zone (-omega/2, omega/2].
double fold_to_zone(double energy, double omega);

} // namespace eljx
