#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "eljx/floquet.hpp"
#include "eljx/fock_basis.hpp"
#include "eljx/model.hpp"

namespace eljx {

/// State over the direct sum of particle-number sectors 0..max_sector.
/// Time evolution is block diagonal (particle number is conserved);
/// quadrature observables couple adjacent sectors.
struct DirectSumState {
  int L = 0;
  std::vector<Eigen::VectorXcd> sector; // sector[n] has dimension D_n

  int max_sector() const { return static_cast<int>(sector.size()) - 1; }
  double norm() const;
};

/// Pulse-prepared initial states. One site i gives (|0> + |1_i>)/sqrt(2);
/// two distinct sites i, j give the product of two pulses, amplitudes 1/2
/// on the vacuum, on |1_i>, on |1_j> and on |1_i 1_j>.
DirectSumState prepare_superposition(const std::vector<int>& sites, int L);

enum class Quadrature { X, P };

/// Site quadratures and their two-site products. The quadratures are scaled
/// as X_i = a^dag_i + a_i and P_i = i (a^dag_i - a_i); with this scale a
/// single-site preparation measured in X_i gives exactly
/// A_n = sum_lambda |C_lambda|^2 cos(eps_lambda n T), with unit total weight.
struct Observable {
  struct Factor {
    Quadrature q;
    int site; // 1-based
  };
  std::vector<Factor> factors; // one or two factors; two require distinct sites

  std::string label() const;

  static Observable X(int i) { return {{{Quadrature::X, i}}}; }
  static Observable P(int i) { return {{{Quadrature::P, i}}}; }
  static Observable XX(int i, int j) { return {{{Quadrature::X, i}, {Quadrature::X, j}}}; }
  static Observable PP(int i, int j) { return {{{Quadrature::P, i}, {Quadrature::P, j}}}; }
  static Observable PX(int i, int j) { return {{{Quadrature::P, i}, {Quadrature::X, j}}}; }
};

struct SignalTrace {
  std::vector<double> values; // A_n for n = 0..Q-1
  double period = 0.0;
  std::string label;
};

/// Caches the per-sector Floquet operators and bases so many traces over
/// one disorder realization share the expensive setup.
class SpectroscopyEmulator {
public:
  SpectroscopyEmulator(const ModelParams& params, const DisorderRealization& disorder,
                       const PropagatorSettings& settings, int max_sector);

  /// Stroboscopic expectation values of `obs` over Q periods starting at
  /// t = 0. Optional Gaussian read-out noise of width noise_sigma is added
  /// per sample, seeded deterministically.
  SignalTrace trace(const DirectSumState& initial, const Observable& obs, int Q,
                    double noise_sigma = 0.0, std::uint64_t noise_seed = 0) const;

  const FockBasis& sector_basis(int n) const;
  const Eigen::MatrixXcd& sector_floquet(int n) const;
  int max_sector() const { return static_cast<int>(bases_.size()) - 1; }
  double period() const { return params_.period(); }
  const ModelParams& params() const { return params_; }

  /// Direct-sum matrix of the observable (exact on sectors 0..max via
  /// normal ordering); exposed for tests.
  Eigen::MatrixXcd observable_matrix(const Observable& obs) const;

private:
  ModelParams params_;
  std::vector<FockBasis> bases_;
  std::vector<Eigen::MatrixXcd> floquet_;
  std::vector<Eigen::Index> offset_;
  Eigen::Index total_dim_ = 0;
};

/// Convenience wrapper building the emulator for one call.
SignalTrace stroboscopic_trace(const DirectSumState& initial, const Observable& obs, int Q,
                               const ModelParams& params, const DisorderRealization& disorder,
                               const PropagatorSettings& settings, double noise_sigma = 0.0,
                               std::uint64_t noise_seed = 0);

/// A_n = sum_j weights[j] cos(eps[j] n T): the analytic reconstruction of a
/// single-site quadrature trace from a known spectrum.
std::vector<double> cosine_sum_trace(const std::vector<double>& eps,
                                     const std::vector<double>& weights, int Q, double T);

struct PowerSpectrum {
  std::vector<double> power; // |A~_k|^2 for k = 0..Q-1
  double period = 0.0;
  bool averaged = false;

  int size() const { return static_cast<int>(power.size()); }
  double omega() const { return 2.0 * pi / period; }
  /// Bin energy 2 pi k / (Q T) folded into (-omega/2, omega/2].
  double bin_energy(int k) const;
};

/// Per-trace DFT A~_k = (1/Q) sum_n exp(+i 2 pi k n / Q) A_n followed by a
/// uniform average of |A~_k|^2 over the supplied traces. All traces must
/// share the same length and period.
PowerSpectrum power_spectrum(const std::vector<SignalTrace>& traces);

struct Peak {
  double eps = 0.0;    // refined location folded to the zone; >= 0 half
  double weight = 0.0; // cosine-amplitude estimate (2 |A~| scallop-corrected)
  double raw_power = 0.0;
  int bin = 0;
};

struct PeakSet {
  std::vector<Peak> peaks;

  /// 1 / sum w_hat^2 over normalized weights; the protocol-level
  /// participation-ratio estimate.
  double participation_estimate() const;
};

/// Local maxima of the power spectrum above `threshold`, scanned over the
/// positive-frequency half k = 1..Q/2 (traces are real, so the other half
/// mirrors it; a cosine cannot distinguish +eps from -eps). Peak positions
/// are refined by three-point parabolic interpolation on log power and the
/// amplitude is corrected for scalloping. Bin 0 (DC) is skipped unless
/// include_dc is set.
PeakSet extract_peaks(const PowerSpectrum& spectrum, double threshold, bool include_dc = false);

} // namespace eljx
