#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "eljx/floquet.hpp"
#include "eljx/model.hpp"

namespace eljx {

/// Quadratic spinless-fermion chain equivalent to the hardcore limit:
/// on-site h_l f^dag_l f_l plus hopping g_l(t) on the same bond schedule as
/// the boson chain. Site-indexed, dimension L.
class FermionChainHamiltonian final : public PeriodicHamiltonian {
public:
  FermionChainHamiltonian(const ModelParams& params, const DisorderRealization& disorder);

  Eigen::Index dim() const override { return params_.L; }
  double period() const override { return params_.period(); }
  void evaluate(double t, Eigen::MatrixXcd& out) const override;
  void evaluate_real(double t, Eigen::MatrixXd& out) const override;
  bool real_valued() const override { return true; }
  bool mirror_symmetric() const override { return true; }

private:
  ModelParams params_;
  DisorderRealization disorder_;
};

/// L x L Hermitian effective matrix of the driven fermion chain: one-period
/// propagator followed by the principal-branch logarithm, exactly as in the
/// many-body engine. Rows and columns are site indices 1..L.
Eigen::MatrixXcd fermion_floquet_effective(const ModelParams& params,
                                           const DisorderRealization& disorder,
                                           const PropagatorSettings& settings);

/// One XX+YY spin coupling induced between sites l < ltilde, carried by a
/// Jordan-Wigner Z-string over the ltilde - l - 1 sites in between.
struct SpinCoupling {
  int l = 0;      // 1-based site
  int ltilde = 0; // 1-based site, l < ltilde
  double magnitude = 0.0;
  double phase = 0.0; // arg of the matrix element
  int string_len = 0; // ltilde - l - 1
};

struct SpinCouplingTable {
  std::vector<SpinCoupling> couplings; // all pairs with |M_{l,lt}| > 0
  std::vector<double> z_fields;        // diagonal entries M_{l,l}, size L
};

/// Coupling bookkeeping of the effective spin Hamiltonian: pair couplings
/// with string lengths from the off-diagonal entries, Z fields from the
/// diagonal. The input must be Hermitian; entries below `floor` are dropped.
SpinCouplingTable spin_coupling_report(const Eigen::MatrixXcd& m, double floor = 0.0);

/// CSV rows l,ltilde,magnitude,phase,string_len (couplings only).
void write_spin_table_csv(std::ostream& os, const SpinCouplingTable& table);

} // namespace eljx
