#include "eljx/jordan_wigner.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>

namespace eljx {

FermionChainHamiltonian::FermionChainHamiltonian(const ModelParams& params,
                                                 const DisorderRealization& disorder)
    : params_(params), disorder_(disorder) {
  params_.validate();
}

void FermionChainHamiltonian::evaluate_real(double t, Eigen::MatrixXd& out) const {
  const auto hj = onsite_profile(params_, disorder_);
  out.setZero(params_.L, params_.L);
  for (int j = 1; j <= params_.L; ++j) out(j - 1, j - 1) = hj[static_cast<std::size_t>(j - 1)];
  for (int b = 1; b < params_.L; ++b) {
    const double g = coupling_at(b, t, params_);
    out(b - 1, b) = g;
    out(b, b - 1) = g;
  }
}

void FermionChainHamiltonian::evaluate(double t, Eigen::MatrixXcd& out) const {
  Eigen::MatrixXd real;
  evaluate_real(t, real);
  out = real.cast<std::complex<double>>();
}

Eigen::MatrixXcd fermion_floquet_effective(const ModelParams& params,
                                           const DisorderRealization& disorder,
                                           const PropagatorSettings& settings) {
  settings.validate();
  const FermionChainHamiltonian ham(params, disorder);
  const Eigen::MatrixXcd F = one_period_propagator(ham, settings.steps_per_period);
  return effective_hamiltonian(F, params.period(), settings.unitarity_tol);
}

SpinCouplingTable spin_coupling_report(const Eigen::MatrixXcd& m, double floor) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw validation_error("spin_coupling_report: matrix must be square");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (herm > 1e-10 * scale) {
    throw validation_error("spin_coupling_report: matrix is not Hermitian");
  }

  SpinCouplingTable table;
  table.z_fields.resize(static_cast<std::size_t>(n));
  for (Eigen::Index l = 0; l < n; ++l) {
    table.z_fields[static_cast<std::size_t>(l)] = m(l, l).real();
  }
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index lt = l + 1; lt < n; ++lt) {
      // Hermiticity makes (l, lt) and (lt, l) carry the same magnitude, so
      // the upper triangle fixes the table regardless of which of m, m^dag
      // was passed.
      const std::complex<double> v = m(l, lt);
      const double mag = std::abs(v);
      if (mag <= floor) continue;
      SpinCoupling c;
      c.l = static_cast<int>(l) + 1;
      c.ltilde = static_cast<int>(lt) + 1;
      c.magnitude = mag;
      c.phase = std::arg(v);
      c.string_len = static_cast<int>(lt - l) - 1;
      table.couplings.push_back(c);
    }
  }
  return table;
}

void write_spin_table_csv(std::ostream& os, const SpinCouplingTable& table) {
  os << "l,ltilde,magnitude,phase,string_len\n";
  char buf[96];
  for (const SpinCoupling& c : table.couplings) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%d", c.l, c.ltilde, c.magnitude, c.phase,
                  c.string_len);
    os << buf << "\n";
  }
}

} // namespace eljx
