#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "eljx/classical.hpp"
#include "eljx/graph.hpp"
#include "eljx/observables.hpp"
#include "eljx/spectroscopy.hpp"

namespace eljx {

/// CSV writers for the run products. Every file starts with a versioned
/// comment line, then a header row; floats carry 17 significant digits.

void write_quasienergies_csv(std::ostream& os, const Eigen::VectorXd& eps);
void write_modes_csv(std::ostream& os, const Eigen::MatrixXcd& modes);
void write_heff_csv(std::ostream& os, const Eigen::MatrixXcd& h_eff, const char* name = "heff");
void write_pr_csv(std::ostream& os, const Eigen::VectorXd& pr, const char* value_name = "pr");
void write_degrees_csv(std::ostream& os, const std::vector<int>& degrees);
void write_pk_csv(std::ostream& os, const DegreeDistribution& dist);
void write_rstats_csv(std::ostream& os, const RHistogram& hist);
struct DensityRow {
  std::uint64_t seed;
  double W;
  int N;
  double density;
};
void write_density_csv(std::ostream& os, const std::vector<DensityRow>& rows);
void write_chart_csv(std::ostream& os, const StabilityGrid& grid);
void write_poincare_csv(std::ostream& os, const std::vector<std::vector<PhasePoint>>& orbits);
void write_trace_csv(std::ostream& os, const std::vector<SignalTrace>& traces);
void write_spectrum_csv(std::ostream& os, const PowerSpectrum& spec);
void write_peaks_csv(std::ostream& os, const PeakSet& peaks);

} // namespace eljx
