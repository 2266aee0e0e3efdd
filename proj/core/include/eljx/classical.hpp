#pragma once

#include <array>
#include <vector>

#include "eljx/common.hpp"
#include "eljx/model.hpp"

namespace eljx {

/// Classical phase-space point of the single-particle limit,
/// H(x, k, t) = h cos(2 pi x / M) + 2 g(t) cos k. Stored unwrapped;
/// wrap_point folds to x in [M/2, 3M/2), k in (-pi, pi].
struct PhasePoint {
  double x = 0.0;
  double k = 0.0;
};

PhasePoint wrap_point(PhasePoint p, int M);

/// Hamilton flow: (dx/dt, dk/dt) = (-2 g(t) sin k, (2 pi h / M) sin(2 pi x / M)).
std::array<double, 2> flow(const PhasePoint& p, double t, const ModelParams& params);

double classical_energy(const PhasePoint& p, double t, const ModelParams& params);

/// Small-oscillation frequency around the fixed point (x, k) = (M, 0):
/// Omega_0 = sqrt(8 pi^2 h g0) / M. Rejects non-positive h or g0.
double omega0(const ModelParams& params);

/// Adaptive Dormand-Prince 5(4) propagation of one trajectory. The default
/// tolerance keeps energy drift below 1e-8 relative over hundreds of
/// periods (the 2D system is cheap enough to run tight).
PhasePoint integrate_flow(PhasePoint p, double t0, double t1, const ModelParams& params,
                          double tol = 1e-12);

/// Stroboscopic samples at t_n = nT (n = 0..n_periods), wrapped, one series
/// per initial condition.
std::vector<std::vector<PhasePoint>> poincare_section(const std::vector<PhasePoint>& initial,
                                                      int n_periods, const ModelParams& params,
                                                      double tol = 1e-12);

/// One-period fundamental matrix of the linearization around (M, 0):
/// d(dx)/dt = -2 g(t) dk, d(dk)/dt = (4 pi^2 h / M^2) dx. Fixed-step RK4
/// with `steps` substeps, so charts are bitwise deterministic.
/// Returns {m11, m12, m21, m22}.
std::array<double, 4> monodromy_matrix(const ModelParams& params, int steps = 4096);

struct StabilityGrid {
  std::vector<double> omega_axis;
  std::vector<double> g1_axis;
  // Row-major over (omega index, g1 index).
  std::vector<double> trace;
  std::vector<double> det;
  std::vector<std::uint8_t> stable; // |trace| <= 2

  std::size_t idx(std::size_t iw, std::size_t ig) const { return iw * g1_axis.size() + ig; }
};

/// Sweep the (omega, g1) plane and classify the fixed point via the
/// monodromy trace. Grid points are independent; evaluation order is fixed.
StabilityGrid stability_chart(double omega_min, double omega_max, int n_omega, double g1_min,
                              double g1_max, int n_g1, const ModelParams& base, int steps = 4096);

} // namespace eljx
