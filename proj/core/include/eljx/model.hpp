#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "eljx/common.hpp"
#include "eljx/fock_basis.hpp"

namespace eljx {

/// Physical knobs of the driven boson chain. Energies are in units of g0
/// and times in 1/g0 (hbar = 1); with the default g0 = 1 the numbers are
/// used as given.
///
/// The chain of L = 2M sites splits into a disordered half (sites 1..M,
/// static bonds g0) and a driven half (bonds M..L-1 carry
/// g(t) = g0 + g1 cos(omega t); the bond j = M is the junction). On-site
/// energies follow h cos(2 pi j / M), plus a disorder shift on sites 1..M.
struct ModelParams {
  int L = 12;        // sites
  int M = 6;         // domain size, L = 2M
  int N = 2;         // particles
  double h = 1.0;    // on-site modulation amplitude
  double g0 = 1.0;   // static coupling
  double g1 = 0.9;   // drive amplitude
  double U = 3.5;    // on-site interaction
  double omega = 0.0; // drive angular frequency; must be set > 0
  double W = 1.0;    // disorder strength

  double period() const { return 2.0 * pi / omega; }

  /// Throws validation_error naming the violated constraint.
  void validate() const;
};

/// One seeded draw of on-site disorder, Delta_j ~ U[-W, W] for j = 1..M.
/// A pure function of (seed, W, M): Delta_j = W * (2 u_j - 1) with
/// u_j = uniform01(mix64(seed, j)), so draws are bitwise reproducible.
struct DisorderRealization {
  std::vector<double> delta;
  std::uint64_t seed = 0;

  static DisorderRealization draw(std::uint64_t seed, double W, int M);
};

/// Hamiltonian matrix in one particle-number sector at a fixed time.
struct HamiltonianMatrix {
  Eigen::MatrixXcd entries;
  double time = 0.0;
};

/// On-site energies h_j for j = 1..L (returned 0-based): the cosine profile
/// everywhere, plus the disorder shift on the first M sites only.
std::vector<double> onsite_profile(const ModelParams& params, const DisorderRealization& disorder);

/// Hopping amplitude on bond j (1..L-1, connecting sites j and j+1) at time t.
/// Bonds 1..M-1 are static; bonds M..L-1 are driven.
double coupling_at(int bond, double t, const ModelParams& params);

/// Dense matrix of the chain Hamiltonian at time t in the given basis.
/// Diagonal: sum_j [h_j n_j + (U/2) n_j (n_j - 1)]. Off-diagonal: single
/// hops j <-> j+1 with the bosonic factor sqrt(n_src) sqrt(n_dst + 1).
HamiltonianMatrix hamiltonian_matrix(double t, const FockBasis& basis, const ModelParams& params,
                                     const DisorderRealization& disorder);

/// Real-symmetric fast path used by the propagator; fills `out` in place.
void hamiltonian_matrix_real(double t, const FockBasis& basis, const ModelParams& params,
                             const DisorderRealization& disorder, Eigen::MatrixXd& out);

/// Single-particle Bragg branches (E_+, E_-) at site j = 1..M, as printed:
/// E_+-(j) = (h/2) cos(2 pi j / M) -+ 2 g0. Diagnostic only. Note the h/2
/// here differs from the h cos(...) on-site profile; the branch formula is
/// kept as published rather than harmonized.
std::pair<double, double> bragg_branches(int j, const ModelParams& params);

/// Sparse-style dump of nonzero entries: row l, col ltilde (1-based), re, im.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& m);

} // namespace eljx
