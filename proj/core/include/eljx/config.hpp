#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "eljx/floquet.hpp"
#include "eljx/model.hpp"

namespace eljx {

struct EnsembleSettings {
  int realizations = 100;
  std::uint64_t base_seed = 1;
  int workers = 0; // 0 = available parallelism; ELJX_WORKERS overrides
};

struct AnalysisToggles {
  bool pr = true;
  bool rstats = true;
  bool graph = true;
  bool classical = false;
  bool spectroscopy = false;
  bool jw = false;
};

struct SpectroscopySettings {
  int Q = 700;
  double threshold = 1e-8; // peak threshold on averaged power
  double noise_sigma = 0.0;
};

/// Fully resolved run configuration. Defaults reproduce the reference
/// operating point: L=12, M=6, N=2, h=g0, U=3.5 g0, g1=0.9 g0, W=g0,
/// omega = 2 Omega_0, cutoff 1e-2 g0, 100 disorder realizations.
struct RunConfig {
  ModelParams model;          // omega = 0 means "resonant", resolved below
  bool omega_resonant = true; // omega given as the 2*Omega0 shortcut
  PropagatorSettings propagator;
  EnsembleSettings ensemble;
  AnalysisToggles analysis;
  double cutoff = 1e-2;
  int histogram_bins = 20;
  SpectroscopySettings spectroscopy;
  std::string out_dir = "out";

  /// Expand the resonance shortcut and validate everything; throws
  /// validation_error with the offending key path.
  void resolve();
};

/// Parse the strict key/value format with [section] headers ('#' comments,
/// unknown sections or keys rejected, values type-checked). An empty file
/// yields the full default configuration. See write_example_config for the
/// annotated reference.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");

/// The annotated example accepted by parse_config_*.
void write_example_config(std::ostream& os);

/// Derived per-realization seed: mix64(base_seed, index).
std::uint64_t realization_seed(std::uint64_t base_seed, int index);

} // namespace eljx
