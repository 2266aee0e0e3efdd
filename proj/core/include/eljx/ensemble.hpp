#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eljx/config.hpp"
#include "eljx/floquet.hpp"
#include "eljx/graph.hpp"
#include "eljx/observables.hpp"

namespace eljx {

/// Per-realization scalars and vectors kept for aggregation.
struct RealizationStats {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  Eigen::VectorXd quasienergies;
  std::vector<double> r_values;
  Eigen::VectorXd pr;
  std::vector<int> degrees;
  double density = 0.0;
};

/// In-memory results of a disorder ensemble, aggregated in index order.
struct EnsembleData {
  RunConfig config;
  std::vector<RealizationStats> stats;
  FloquetResult first; // full Floquet result of realization 0
  bool have_first = false;

  RHistogram rhist;
  bool have_rhist = false;
  DegreeDistribution pk;
  bool have_pk = false;
  double mean_density = 0.0;
  Eigen::VectorXd mean_pr;
  int failures = 0;
};

/// Run the Floquet pipeline over all realizations on a worker pool
/// (config workers; ELJX_WORKERS env overrides; 0 = hardware concurrency)
/// and merge aggregates in fixed index order. Per-realization failures are
/// recorded, not fatal.
EnsembleData compute_ensemble(const RunConfig& config);

struct RunOutcome {
  std::filesystem::path directory;
  int failures = 0;
};

/// Deterministic tag of a resolved configuration (hash of its manifest
/// serialization plus the base seed).
std::string run_id(const RunConfig& config);

/// Full persistence pipeline: per-realization and aggregate CSVs per the
/// analysis toggles, then manifest.json last (a directory without a
/// manifest is an incomplete run).
RunOutcome run_ensemble(const RunConfig& config, const std::filesystem::path& out_dir);

} // namespace eljx
