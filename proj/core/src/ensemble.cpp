#include "eljx/ensemble.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "eljx/io.hpp"
#include "eljx/jordan_wigner.hpp"
#include "eljx/outputs.hpp"
#include "eljx/spectroscopy.hpp"

namespace eljx {

namespace {

using ordered_json = nlohmann::ordered_json;

int resolve_workers(const RunConfig& config) {
  if (const char* env = std::getenv("ELJX_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  if (config.ensemble.workers >= 1) return config.ensemble.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["model"] = {{"L", c.model.L},   {"M", c.model.M},   {"N", c.model.N},
                {"h", c.model.h},   {"g0", c.model.g0}, {"g1", c.model.g1},
                {"U", c.model.U},   {"omega", c.model.omega},
                {"omega_resonant", c.omega_resonant},   {"W", c.model.W}};
  j["propagator"] = {{"steps_per_period", c.propagator.steps_per_period},
                     {"unitarity_tol", c.propagator.unitarity_tol},
                     {"convergence_tol", c.propagator.convergence_tol}};
  j["ensemble"] = {{"realizations", c.ensemble.realizations},
                   {"base_seed", c.ensemble.base_seed},
                   {"workers", c.ensemble.workers}};
  j["analysis"] = {{"pr", c.analysis.pr},
                   {"rstats", c.analysis.rstats},
                   {"graph", c.analysis.graph},
                   {"classical", c.analysis.classical},
                   {"spectroscopy", c.analysis.spectroscopy},
                   {"jw", c.analysis.jw},
                   {"cutoff", c.cutoff},
                   {"histogram_bins", c.histogram_bins}};
  j["spectroscopy"] = {{"Q", c.spectroscopy.Q},
                       {"threshold", c.spectroscopy.threshold},
                       {"noise_sigma", c.spectroscopy.noise_sigma}};
  j["output"] = {{"directory", c.out_dir}};
  return j;
}

} // namespace

std::string run_id(const RunConfig& config) {
  const std::string blob = config_json(config).dump();
  return "run-" + to_hex(fnv1a64(blob)).substr(8);
}

EnsembleData compute_ensemble(const RunConfig& config) {
  EnsembleData data;
  data.config = config;
  const int R = config.ensemble.realizations;
  data.stats.resize(static_cast<std::size_t>(R));

  const int workers = std::min(resolve_workers(config), R);
  std::atomic<int> next{0};
  std::mutex first_mutex;

  const auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= R) return;
      RealizationStats& st = data.stats[static_cast<std::size_t>(i)];
      st.seed = realization_seed(config.ensemble.base_seed, i);
      try {
        const auto disorder = DisorderRealization::draw(st.seed, config.model.W, config.model.M);
        const FloquetResult fr = floquet_analysis(config.model, disorder, config.propagator);
        st.quasienergies = fr.quasienergies;
        if (config.analysis.rstats && fr.quasienergies.size() >= 3) {
          st.r_values = spacing_ratios(fr.quasienergies);
        }
        if (config.analysis.pr) {
          st.pr = participation_ratio(fr.modes, PRMode::PerConfiguration, 1e-8);
        }
        if (config.analysis.graph) {
          const AdjacencyMatrix adj = adjacency(fr.h_eff, config.cutoff);
          st.degrees = degrees(adj);
          st.density = graph_density(adj);
        }
        if (i == 0) {
          const std::scoped_lock lock(first_mutex);
          data.first = fr;
          data.have_first = true;
        }
        st.ok = true;
      } catch (const std::exception& e) {
        st.ok = false;
        st.error = e.what();
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Aggregation in fixed index order, independent of completion order.
  std::vector<std::vector<double>> r_sets;
  std::vector<std::vector<int>> degree_sets;
  double density_sum = 0.0;
  int density_count = 0;
  Eigen::VectorXd pr_sum;
  int pr_count = 0;
  for (const RealizationStats& st : data.stats) {
    if (!st.ok) {
      ++data.failures;
      continue;
    }
    if (!st.r_values.empty()) r_sets.push_back(st.r_values);
    if (!st.degrees.empty()) degree_sets.push_back(st.degrees);
    if (config.analysis.graph) {
      density_sum += st.density;
      ++density_count;
    }
    if (st.pr.size() > 0) {
      if (pr_sum.size() == 0) pr_sum = Eigen::VectorXd::Zero(st.pr.size());
      pr_sum += st.pr;
      ++pr_count;
    }
  }
  if (!r_sets.empty()) {
    data.rhist = r_histogram(r_sets, config.histogram_bins);
    data.have_rhist = true;
  }
  if (!degree_sets.empty()) {
    data.pk = degree_distribution_from_degrees(degree_sets);
    data.have_pk = true;
  }
  if (density_count > 0) data.mean_density = density_sum / density_count;
  if (pr_count > 0) data.mean_pr = pr_sum / pr_count;
  return data;
}

RunOutcome run_ensemble(const RunConfig& config, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  const auto t_start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);

  // Remove any stale manifest first: its presence marks a complete run.
  fs::remove(out_dir / "manifest.json");

  const EnsembleData data = compute_ensemble(config);
  std::vector<std::string> files;

  const auto emit = [&](const std::string& name, auto&& writer) {
    std::ostringstream os;
    writer(os);
    write_text_file(out_dir / name, os.str());
    files.push_back(name);
  };

  if (data.have_first) {
    emit("quasienergies.csv", [&](std::ostream& os) { write_quasienergies_csv(os, data.first.quasienergies); });
    emit("modes.csv", [&](std::ostream& os) { write_modes_csv(os, data.first.modes); });
    emit("heff.csv", [&](std::ostream& os) { write_heff_csv(os, data.first.h_eff); });
  }

  if (config.analysis.pr && data.have_first) {
    const Eigen::VectorXd pr0 = participation_ratio(data.first.modes);
    emit("pr.csv", [&](std::ostream& os) { write_pr_csv(os, pr0); });
    if (data.mean_pr.size() > 0) {
      emit("pr_mean.csv", [&](std::ostream& os) { write_pr_csv(os, data.mean_pr, "mean_pr"); });
    }
  }

  if (config.analysis.rstats && data.have_rhist) {
    emit("rstats.csv", [&](std::ostream& os) { write_rstats_csv(os, data.rhist); });
  }

  if (config.analysis.graph) {
    if (data.have_first) {
      const FockBasis basis = FockBasis::enumerate(config.model.N, config.model.L);
      const AdjacencyMatrix adj0 = adjacency(data.first.h_eff, config.cutoff);
      emit("degrees.csv", [&](std::ostream& os) { write_degrees_csv(os, degrees(adj0)); });
      emit("graph.dot", [&](std::ostream& os) {
        export_graph(adj0, data.first.h_eff, &basis, GraphFormat::Dot, os);
      });
      emit("graph.graphml", [&](std::ostream& os) {
        export_graph(adj0, data.first.h_eff, &basis, GraphFormat::GraphML, os);
      });
      emit("edges.csv", [&](std::ostream& os) {
        export_graph(adj0, data.first.h_eff, nullptr, GraphFormat::EdgeCsv, os);
      });
    }
    if (data.have_pk) {
      emit("pk.csv", [&](std::ostream& os) { write_pk_csv(os, data.pk); });
    }
    std::vector<DensityRow> rows;
    for (const RealizationStats& st : data.stats) {
      if (st.ok) rows.push_back({st.seed, config.model.W, config.model.N, st.density});
    }
    emit("density.csv", [&](std::ostream& os) { write_density_csv(os, rows); });
  }

  if (config.analysis.jw) {
    const auto disorder0 =
        DisorderRealization::draw(realization_seed(config.ensemble.base_seed, 0), config.model.W, config.model.M);
    const Eigen::MatrixXcd m = fermion_floquet_effective(config.model, disorder0, config.propagator);
    emit("fermion_heff.csv", [&](std::ostream& os) { write_heff_csv(os, m, "fermion_heff"); });
    const SpinCouplingTable table = spin_coupling_report(m);
    emit("spin_table.csv", [&](std::ostream& os) { write_spin_table_csv(os, table); });
    emit("zfields.csv", [&](std::ostream& os) {
      os << "# eljx v1 zfields\nl,z_field\n";
      for (std::size_t l = 0; l < table.z_fields.size(); ++l) {
        os << (l + 1) << "," << fmt17(table.z_fields[l]) << "\n";
      }
    });
  }

  if (config.analysis.classical) {
    const StabilityGrid grid = stability_chart(0.5 * config.model.g0, 6.0 * config.model.g0, 300,
                                               0.0, config.model.g0, 200, config.model);
    emit("chart.csv", [&](std::ostream& os) { write_chart_csv(os, grid); });
    std::vector<PhasePoint> inits;
    for (double dx : {0.05, 0.2, 0.5, 0.9, 1.4, 2.0}) {
      inits.push_back({static_cast<double>(config.model.M) + dx, 0.0});
    }
    inits.push_back({static_cast<double>(config.model.M), 0.5});
    inits.push_back({static_cast<double>(config.model.M), 1.5});
    const auto orbits = poincare_section(inits, 300, config.model);
    emit("poincare.csv", [&](std::ostream& os) { write_poincare_csv(os, orbits); });
  }

  if (config.analysis.spectroscopy) {
    const auto disorder0 =
        DisorderRealization::draw(realization_seed(config.ensemble.base_seed, 0), config.model.W, config.model.M);
    const SpectroscopyEmulator em(config.model, disorder0, config.propagator, 1);
    std::vector<SignalTrace> traces;
    for (int site = 1; site <= config.model.L; ++site) {
      const DirectSumState psi = prepare_superposition({site}, config.model.L);
      traces.push_back(em.trace(psi, Observable::X(site), config.spectroscopy.Q,
                                config.spectroscopy.noise_sigma,
                                mix64(config.ensemble.base_seed, 0xA5A5u + static_cast<unsigned>(site))));
    }
    emit("trace.csv", [&](std::ostream& os) { write_trace_csv(os, traces); });
    const PowerSpectrum spec = power_spectrum(traces);
    emit("spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(os, spec); });
    const PeakSet peaks = extract_peaks(spec, config.spectroscopy.threshold);
    emit("peaks.csv", [&](std::ostream& os) { write_peaks_csv(os, peaks); });
  }

  // Manifest last; written only when every product above landed.
  const auto t_end = std::chrono::steady_clock::now();
  ordered_json manifest;
  manifest["format"] = "eljx-manifest-v1";
  manifest["version"] = version_string();
  manifest["created_utc"] = utc_timestamp();
  manifest["wall_seconds"] = std::chrono::duration<double>(t_end - t_start).count();
  manifest["config"] = config_json(data.config);
  manifest["run_id"] = run_id(data.config);
  ordered_json seeds = ordered_json::array();
  ordered_json failures = ordered_json::array();
  for (std::size_t i = 0; i < data.stats.size(); ++i) {
    seeds.push_back(data.stats[i].seed);
    if (!data.stats[i].ok) {
      failures.push_back({{"index", i}, {"seed", data.stats[i].seed}, {"error", data.stats[i].error}});
    }
  }
  manifest["seeds"] = seeds;
  manifest["failures"] = failures;
  ordered_json checksums;
  for (const std::string& name : files) {
    checksums[name] = {{"fnv1a64", to_hex(fnv1a64_file(out_dir / name))},
                       {"bytes", fs::file_size(out_dir / name)}};
  }
  manifest["files"] = checksums;
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

  return {out_dir, data.failures};
}

} // namespace eljx
