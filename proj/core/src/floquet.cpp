#include "eljx/floquet.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <numeric>
#include <vector>

namespace eljx {

namespace {

using cd = std::complex<double>;
const cd I_UNIT(0.0, 1.0);

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double unitarity_defect(const Eigen::MatrixXcd& F) {
  const Eigen::Index n = F.rows();
  Eigen::MatrixXcd g = F.adjoint() * F;
  g -= Eigen::MatrixXcd::Identity(n, n);
  return max_abs(g);
}

// One substep on the real path: (Ar + i Ai) <- V diag(exp(-i E dt)) V^T
// (Ar + i Ai), with the real and imaginary parts kept in separate dense
// matrices so every product is an unstrided real GEMM (V is orthogonal).
void apply_real_substep(const Eigen::MatrixXd& V, const Eigen::VectorXd& E, double dt,
                        Eigen::MatrixXd& Ar, Eigen::MatrixXd& Ai, Eigen::MatrixXd& wr,
                        Eigen::MatrixXd& wi) {
  wr.noalias() = V.transpose() * Ar;
  wi.noalias() = V.transpose() * Ai;
  const Eigen::Index n = V.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = std::cos(E(i) * dt);
    const double s = -std::sin(E(i) * dt);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r = wr(i, j), m = wi(i, j);
      // (c + i s) * (r + i m)
      wr(i, j) = c * r - s * m;
      wi(i, j) = c * m + s * r;
    }
  }
  Ar.noalias() = V * wr;
  Ai.noalias() = V * wi;
}

} // namespace

void PeriodicHamiltonian::evaluate_real(double, Eigen::MatrixXd&) const {
  throw validation_error("PeriodicHamiltonian: evaluate_real called on a complex-valued Hamiltonian");
}

BoseChainHamiltonian::BoseChainHamiltonian(const FockBasis& basis, const ModelParams& params,
                                           const DisorderRealization& disorder)
    : basis_(std::make_shared<FockBasis>(basis)), params_(params), disorder_(disorder) {
  params_.validate();
  if (basis.particles() != params.N || basis.sites() != params.L) {
    throw validation_error("BoseChainHamiltonian: basis does not match params (N, L)");
  }
}

void BoseChainHamiltonian::evaluate(double t, Eigen::MatrixXcd& out) const {
  Eigen::MatrixXd real;
  hamiltonian_matrix_real(t, *basis_, params_, disorder_, real);
  out = real.cast<cd>();
}

void BoseChainHamiltonian::evaluate_real(double t, Eigen::MatrixXd& out) const {
  hamiltonian_matrix_real(t, *basis_, params_, disorder_, out);
}

void PropagatorSettings::validate() const {
  if (steps_per_period < 8 || steps_per_period % 2 != 0) {
    throw validation_error("PropagatorSettings: steps_per_period must be even and >= 8 (got " +
                           std::to_string(steps_per_period) + ")");
  }
  if (!(unitarity_tol > 0.0)) throw validation_error("PropagatorSettings: unitarity_tol must be > 0");
  if (!(convergence_tol > 0.0)) throw validation_error("PropagatorSettings: convergence_tol must be > 0");
}

Eigen::MatrixXcd one_period_propagator(const PeriodicHamiltonian& ham, int steps) {
  if (steps < 1) throw validation_error("one_period_propagator: steps must be >= 1");
  const Eigen::Index n = ham.dim();
  const double T = ham.period();
  const double dt = T / steps;

  if (ham.real_valued()) {
    // H(t) real symmetric: each substep exponential is complex symmetric,
    // so with a mirror-symmetric drive the second half-period is the
    // transpose of the first and F = A^T A with A the half-period product.
    const bool mirror = ham.mirror_symmetric() && steps % 2 == 0;
    const int accumulate_steps = mirror ? steps / 2 : steps;

    Eigen::MatrixXd Ar = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Ai = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd H(n, n), wr(n, n), wi(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    for (int k = 1; k <= accumulate_steps; ++k) {
      const double t_mid = (k - 0.5) * dt;
      ham.evaluate_real(t_mid, H);
      es.compute(H);
      apply_real_substep(es.eigenvectors(), es.eigenvalues(), dt, Ar, Ai, wr, wi);
    }
    Eigen::MatrixXcd A(n, n);
    A.real() = Ar;
    A.imag() = Ai;
    if (!mirror) return A;
    // F = A^T A, using the real parts: (Ar + i Ai)^T (Ar + i Ai).
    Eigen::MatrixXcd F(n, n);
    F.real() = Ar.transpose() * Ar - Ai.transpose() * Ai;
    F.imag() = Ar.transpose() * Ai + Ai.transpose() * Ar;
    return F;
  }

  Eigen::MatrixXcd F = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd H(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  for (int k = 1; k <= steps; ++k) {
    const double t_mid = (k - 0.5) * dt;
    ham.evaluate(t_mid, H);
    es.compute(H);
    const Eigen::VectorXcd phases =
        (es.eigenvalues().array().cast<cd>() * cd(0.0, -dt)).exp().matrix();
    F = es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * F);
  }
  return F;
}

Eigen::VectorXcd evolve_state(const Eigen::VectorXcd& psi0, double t0, double t1,
                              const ModelParams& params, const DisorderRealization& disorder,
                              const PropagatorSettings& settings) {
  settings.validate();
  params.validate();
  if (t1 <= t0) throw validation_error("evolve_state: t1 must exceed t0");
  const double norm = psi0.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    std::cerr << "evolve_state: input state norm " << norm << " deviates from 1; proceeding\n";
  }

  const FockBasis basis = FockBasis::enumerate(params.N, params.L);
  if (psi0.size() != static_cast<Eigen::Index>(basis.size())) {
    throw validation_error("evolve_state: state dimension does not match the (N, L) sector");
  }
  const double dt_target = params.period() / settings.steps_per_period;
  const int nsteps = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt_target - 1e-12)));
  const double dt = (t1 - t0) / nsteps;

  Eigen::VectorXcd psi = psi0;
  Eigen::MatrixXd H;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (int k = 1; k <= nsteps; ++k) {
    const double t_mid = t0 + (k - 0.5) * dt;
    hamiltonian_matrix_real(t_mid, basis, params, disorder, H);
    es.compute(H);
    const Eigen::MatrixXcd V = es.eigenvectors().cast<cd>();
    const Eigen::VectorXcd phases =
        (es.eigenvalues().array().cast<cd>() * cd(0.0, -dt)).exp().matrix();
    psi = V * (phases.array() * (V.adjoint() * psi).array()).matrix();
  }
  return psi;
}

Eigen::MatrixXcd floquet_operator(const ModelParams& params, const DisorderRealization& disorder,
                                  const PropagatorSettings& settings) {
  settings.validate();
  params.validate();
  const FockBasis basis = FockBasis::enumerate(params.N, params.L);
  const BoseChainHamiltonian ham(basis, params, disorder);
  Eigen::MatrixXcd F = one_period_propagator(ham, settings.steps_per_period);
  const double defect = unitarity_defect(F);
  if (defect > settings.unitarity_tol) {
    throw numeric_error("floquet_operator: unitarity defect " + std::to_string(defect) +
                        " exceeds tolerance " + std::to_string(settings.unitarity_tol));
  }
  return F;
}

double fold_to_zone(double energy, double omega) {
  double r = std::remainder(energy, omega); // [-omega/2, omega/2]
  if (r <= -0.5 * omega + 1e-15 * omega) r += omega;
  return r;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> quasienergy_spectrum(const Eigen::MatrixXcd& F,
                                                                  double omega,
                                                                  double unitarity_tol) {
  if (!(omega > 0.0)) throw validation_error("quasienergy_spectrum: omega must be > 0");
  const double defect = unitarity_defect(F);
  if (defect > unitarity_tol) {
    throw numeric_error("quasienergy_spectrum: input is not unitary (defect " +
                        std::to_string(defect) + ")");
  }
  const double T = 2.0 * pi / omega;
  const Eigen::Index n = F.rows();

  // Schur of a normal matrix: T is diagonal up to round-off and the Schur
  // vectors form an exactly unitary eigenbasis, stable under degeneracy.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(F, true);
  if (schur.info() != Eigen::Success) {
    throw numeric_error("quasienergy_spectrum: Schur decomposition failed");
  }

  std::vector<double> eps(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    // Eigenvalue e^{-i eps T}: the H_eff*T eigenphase is minus the argument.
    // Principal branch -eps*T in [-pi, pi); arguments within 1e-12 of +pi
    // flip to -pi so eps lands deterministically on +omega/2, keeping the
    // zone half-open at the lower edge.
    double theta = std::arg(schur.matrixT()(i, i));
    if (theta > pi - 1e-12) theta = -pi;
    eps[static_cast<std::size_t>(i)] = -theta / T;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eps[static_cast<std::size_t>(a)] < eps[static_cast<std::size_t>(b)];
  });

  Eigen::VectorXd eps_sorted(n);
  Eigen::MatrixXcd modes(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eps_sorted(i) = eps[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    modes.col(i) = schur.matrixU().col(order[static_cast<std::size_t>(i)]);
  }
  return {std::move(eps_sorted), std::move(modes)};
}

Eigen::MatrixXcd effective_hamiltonian(const Eigen::MatrixXcd& F, double period,
                                       double unitarity_tol) {
  if (!(period > 0.0)) throw validation_error("effective_hamiltonian: period must be > 0");
  const double omega = 2.0 * pi / period;
  auto [eps, modes] = quasienergy_spectrum(F, omega, unitarity_tol);
  Eigen::MatrixXcd h = modes * eps.cast<cd>().asDiagonal() * modes.adjoint();
  return 0.5 * (h + h.adjoint().eval());
}

FloquetResult floquet_analysis(const ModelParams& params, const DisorderRealization& disorder,
                               const PropagatorSettings& settings) {
  FloquetResult res;
  res.omega = params.omega;
  res.period = params.period();
  res.F = floquet_operator(params, disorder, settings);
  std::tie(res.quasienergies, res.modes) = quasienergy_spectrum(res.F, params.omega, settings.unitarity_tol);
  Eigen::MatrixXcd h = res.modes * res.quasienergies.cast<cd>().asDiagonal() * res.modes.adjoint();
  res.h_eff = 0.5 * (h + h.adjoint().eval());

  // Invariants checked on every run.
  for (Eigen::Index i = 0; i < res.quasienergies.size(); ++i) {
    const double e = res.quasienergies(i);
    if (e <= -0.5 * params.omega - 1e-12 || e > 0.5 * params.omega + 1e-12) {
      throw numeric_error("floquet_analysis: quasienergy outside the first Brillouin zone");
    }
  }
  const Eigen::Index n = res.F.rows();
  Eigen::MatrixXcd ortho = res.modes.adjoint() * res.modes;
  ortho -= Eigen::MatrixXcd::Identity(n, n);
  if (max_abs(ortho) > settings.unitarity_tol) {
    throw numeric_error("floquet_analysis: mode matrix lost orthonormality");
  }
  const Eigen::VectorXcd phases =
      (-I_UNIT * res.period * res.quasienergies.array()).exp().matrix().cast<cd>();
  Eigen::MatrixXcd rebuilt = res.modes * phases.asDiagonal() * res.modes.adjoint();
  if (max_abs(rebuilt - res.F) > settings.unitarity_tol) {
    throw numeric_error("floquet_analysis: exp(-i H_eff T) does not reconstruct F within tolerance");
  }
  return res;
}

double propagation_self_error(const PeriodicHamiltonian& ham, int steps) {
  const Eigen::MatrixXcd a = one_period_propagator(ham, steps);
  const Eigen::MatrixXcd b = one_period_propagator(ham, 2 * steps);
  return max_abs(a - b);
}

} // namespace eljx
