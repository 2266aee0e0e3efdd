// eljx: Floquet analysis of a periodically driven interacting-boson chain
// with a disordered (localized) half coupled to a driven (ergodic) half.
//
// Exit codes: 0 success, 2 usage error, 3 validation error, 4 numerical
// tolerance failure, 1 anything else.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eljx/classical.hpp"
#include "eljx/common.hpp"
#include "eljx/config.hpp"
#include "eljx/ensemble.hpp"
#include "eljx/floquet.hpp"
#include "eljx/graph.hpp"
#include "eljx/io.hpp"
#include "eljx/jordan_wigner.hpp"
#include "eljx/observables.hpp"
#include "eljx/outputs.hpp"
#include "eljx/spectroscopy.hpp"

namespace fs = std::filesystem;
using namespace eljx;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double W = -1.0; // < 0 means "not set"
  int realizations = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "Run configuration file");
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--seed", o.seed, "Base seed (overrides the config)")->each([&](const std::string&) {
    o.seed_given = true;
  });
  cmd->add_option("--W", o.W, "Disorder strength override");
  cmd->add_option("--realizations", o.realizations, "Realization count override");
}

RunConfig load_config(const CommonOpts& o) {
  RunConfig cfg = o.config_path.empty() ? parse_config_text("") : parse_config_file(o.config_path);
  bool dirty = false;
  if (o.seed_given) {
    cfg.ensemble.base_seed = o.seed;
  }
  if (o.W >= 0.0) {
    cfg.model.W = o.W;
    dirty = true;
  }
  if (o.realizations > 0) {
    cfg.ensemble.realizations = o.realizations;
    dirty = true;
  }
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (dirty) cfg.resolve();
  return cfg;
}

fs::path out_dir_for(const RunConfig& cfg, const CommonOpts& o, const std::string& fallback_leaf) {
  if (!o.out_dir.empty()) return o.out_dir;
  return fs::path(cfg.out_dir) / fallback_leaf;
}

void write_file(const fs::path& dir, const std::string& name,
                const std::function<void(std::ostream&)>& writer) {
  fs::create_directories(dir);
  std::ostringstream os;
  writer(os);
  write_text_file(dir / name, os.str());
  std::cout << "wrote " << (dir / name).string() << "\n";
}

DisorderRealization first_disorder(const RunConfig& cfg) {
  return DisorderRealization::draw(realization_seed(cfg.ensemble.base_seed, 0), cfg.model.W,
                                   cfg.model.M);
}

int cmd_basis(const CommonOpts& o, int N, int L, const std::string& csv, bool list) {
  RunConfig cfg = load_config(o);
  const int n = N >= 0 ? N : cfg.model.N;
  const int l = L >= 1 ? L : cfg.model.L;
  std::cout << basis_dimension(n, l) << "\n";
  if (list || !csv.empty()) {
    const FockBasis basis = FockBasis::enumerate(n, l);
    if (list) basis.write_csv(std::cout);
    if (!csv.empty()) {
      std::ostringstream os;
      basis.write_csv(os);
      write_text_file(csv, os.str());
      std::cout << "wrote " << csv << "\n";
    }
  }
  return 0;
}

int cmd_floquet(const CommonOpts& o, double dump_time, bool dump_given) {
  RunConfig cfg = load_config(o);
  const auto disorder = first_disorder(cfg);
  const FloquetResult fr = floquet_analysis(cfg.model, disorder, cfg.propagator);
  const fs::path dir = out_dir_for(cfg, o, "floquet");
  write_file(dir, "quasienergies.csv", [&](std::ostream& os) { write_quasienergies_csv(os, fr.quasienergies); });
  write_file(dir, "modes.csv", [&](std::ostream& os) { write_modes_csv(os, fr.modes); });
  write_file(dir, "heff.csv", [&](std::ostream& os) { write_heff_csv(os, fr.h_eff); });
  if (dump_given) {
    const FockBasis basis = FockBasis::enumerate(cfg.model.N, cfg.model.L);
    const auto H = hamiltonian_matrix(dump_time, basis, cfg.model, disorder);
    write_file(dir, "hamiltonian.csv", [&](std::ostream& os) { write_matrix_csv(os, H.entries); });
  }
  std::cout << "D_N = " << fr.quasienergies.size() << ", omega = " << fmt17(fr.omega) << "\n";
  return 0;
}

int cmd_graph(const CommonOpts& o, double cutoff_override) {
  RunConfig cfg = load_config(o);
  if (cutoff_override >= 0.0) cfg.cutoff = cutoff_override;
  const auto disorder = first_disorder(cfg);
  const FloquetResult fr = floquet_analysis(cfg.model, disorder, cfg.propagator);
  const FockBasis basis = FockBasis::enumerate(cfg.model.N, cfg.model.L);
  const AdjacencyMatrix adj = adjacency(fr.h_eff, cfg.cutoff);
  const fs::path dir = out_dir_for(cfg, o, "graph");
  write_file(dir, "degrees.csv", [&](std::ostream& os) { write_degrees_csv(os, degrees(adj)); });
  write_file(dir, "graph.dot", [&](std::ostream& os) { export_graph(adj, fr.h_eff, &basis, GraphFormat::Dot, os); });
  write_file(dir, "graph.graphml",
             [&](std::ostream& os) { export_graph(adj, fr.h_eff, &basis, GraphFormat::GraphML, os); });
  write_file(dir, "edges.csv",
             [&](std::ostream& os) { export_graph(adj, fr.h_eff, nullptr, GraphFormat::EdgeCsv, os); });
  std::cout << "density = " << fmt17(graph_density(adj)) << " (|V| = " << adj.nodes
            << ", |E| = " << edge_count(adj) << ", C = " << fmt17(cfg.cutoff) << ")\n";
  return 0;
}

int cmd_levels(const CommonOpts& o) {
  RunConfig cfg = load_config(o);
  cfg.analysis = {};
  cfg.analysis.rstats = true;
  cfg.analysis.pr = false;
  cfg.analysis.graph = false;
  const EnsembleData data = compute_ensemble(cfg);
  if (!data.have_rhist) throw numeric_error("levels: no spacing ratios were produced");
  const fs::path dir = out_dir_for(cfg, o, "levels");
  write_file(dir, "rstats.csv", [&](std::ostream& os) { write_rstats_csv(os, data.rhist); });
  std::cout << "mean r = " << fmt17(data.rhist.mean_r) << " +- " << fmt17(data.rhist.stderr_r)
            << " over " << data.rhist.samples << " ratios (" << cfg.ensemble.realizations
            << " realizations)\n"
            << "GOE surmise mean " << fmt17(goe_mean_r()) << ", Poisson mean "
            << fmt17(poisson_mean_r()) << "\n";
  return data.failures == 0 ? 0 : 4;
}

int cmd_pr(const CommonOpts& o) {
  RunConfig cfg = load_config(o);
  cfg.analysis = {};
  cfg.analysis.pr = true;
  cfg.analysis.rstats = false;
  cfg.analysis.graph = false;
  const EnsembleData data = compute_ensemble(cfg);
  if (!data.have_first) throw numeric_error("pr: realization 0 failed");
  const fs::path dir = out_dir_for(cfg, o, "pr");
  write_file(dir, "pr.csv",
             [&](std::ostream& os) { write_pr_csv(os, participation_ratio(data.first.modes)); });
  if (data.mean_pr.size() > 0) {
    write_file(dir, "pr_mean.csv", [&](std::ostream& os) { write_pr_csv(os, data.mean_pr, "mean_pr"); });
  }
  return data.failures == 0 ? 0 : 4;
}

int cmd_classical(const CommonOpts& o, bool chart, bool poincare, double omega_min, double omega_max,
                  int n_omega, double g1_min, double g1_max, int n_g1, int periods) {
  RunConfig cfg = load_config(o);
  const fs::path dir = out_dir_for(cfg, o, "classical");
  if (!chart && !poincare) chart = true;
  if (chart) {
    const StabilityGrid grid = stability_chart(omega_min, omega_max, n_omega, g1_min, g1_max, n_g1,
                                               cfg.model);
    write_file(dir, "chart.csv", [&](std::ostream& os) { write_chart_csv(os, grid); });
  }
  if (poincare) {
    std::vector<PhasePoint> inits;
    for (double dx : {0.05, 0.2, 0.5, 0.9, 1.4, 2.0}) {
      inits.push_back({static_cast<double>(cfg.model.M) + dx, 0.0});
    }
    inits.push_back({static_cast<double>(cfg.model.M), 0.5});
    inits.push_back({static_cast<double>(cfg.model.M), 1.5});
    const auto orbits = poincare_section(inits, periods, cfg.model);
    write_file(dir, "poincare.csv", [&](std::ostream& os) { write_poincare_csv(os, orbits); });
  }
  std::cout << "Omega0 = " << fmt17(omega0(cfg.model)) << ", 2*Omega0 = "
            << fmt17(2.0 * omega0(cfg.model)) << "\n";
  return 0;
}

int cmd_spectroscopy(const CommonOpts& o, int Q, double noise, double threshold,
                     std::vector<int> sites) {
  RunConfig cfg = load_config(o);
  if (Q > 0) cfg.spectroscopy.Q = Q;
  if (noise >= 0.0) cfg.spectroscopy.noise_sigma = noise;
  if (threshold > 0.0) cfg.spectroscopy.threshold = threshold;
  const auto disorder = first_disorder(cfg);
  const fs::path dir = out_dir_for(cfg, o, "spectroscopy");

  std::vector<SignalTrace> traces;
  if (sites.empty()) {
    // One single-site preparation per lattice site, measured in X_i.
    const SpectroscopyEmulator em(cfg.model, disorder, cfg.propagator, 1);
    for (int site = 1; site <= cfg.model.L; ++site) {
      const DirectSumState psi = prepare_superposition({site}, cfg.model.L);
      traces.push_back(em.trace(psi, Observable::X(site), cfg.spectroscopy.Q,
                                cfg.spectroscopy.noise_sigma,
                                mix64(cfg.ensemble.base_seed, 0xA5A5u + static_cast<unsigned>(site))));
    }
  } else {
    const SpectroscopyEmulator em(cfg.model, disorder, cfg.propagator,
                                  static_cast<int>(sites.size()));
    const DirectSumState psi = prepare_superposition(sites, cfg.model.L);
    const Observable obs = sites.size() == 1 ? Observable::X(sites[0])
                                             : Observable::XX(sites[0], sites[1]);
    traces.push_back(em.trace(psi, obs, cfg.spectroscopy.Q, cfg.spectroscopy.noise_sigma,
                              mix64(cfg.ensemble.base_seed, 0xA5A5u)));
  }
  write_file(dir, "trace.csv", [&](std::ostream& os) { write_trace_csv(os, traces); });
  const PowerSpectrum spec = power_spectrum(traces);
  write_file(dir, "spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(os, spec); });
  const PeakSet peaks = extract_peaks(spec, cfg.spectroscopy.threshold);
  write_file(dir, "peaks.csv", [&](std::ostream& os) { write_peaks_csv(os, peaks); });
  std::cout << peaks.peaks.size() << " peaks above threshold " << fmt17(cfg.spectroscopy.threshold)
            << "; protocol PR estimate = " << fmt17(peaks.participation_estimate()) << "\n";
  return 0;
}

int cmd_jw(const CommonOpts& o) {
  RunConfig cfg = load_config(o);
  const auto disorder = first_disorder(cfg);
  const Eigen::MatrixXcd m = fermion_floquet_effective(cfg.model, disorder, cfg.propagator);
  const SpinCouplingTable table = spin_coupling_report(m);
  const fs::path dir = out_dir_for(cfg, o, "jw");
  write_file(dir, "fermion_heff.csv", [&](std::ostream& os) { write_heff_csv(os, m, "fermion_heff"); });
  write_file(dir, "spin_table.csv", [&](std::ostream& os) { write_spin_table_csv(os, table); });
  write_file(dir, "zfields.csv", [&](std::ostream& os) {
    os << "# eljx v1 zfields\nl,z_field\n";
    for (std::size_t l = 0; l < table.z_fields.size(); ++l) {
      os << (l + 1) << "," << fmt17(table.z_fields[l]) << "\n";
    }
  });
  std::cout << table.couplings.size() << " pair couplings, " << table.z_fields.size()
            << " Z fields\n";
  return 0;
}

int cmd_ensemble(const CommonOpts& o) {
  RunConfig cfg = load_config(o);
  const fs::path dir = o.out_dir.empty() ? fs::path(cfg.out_dir) / run_id(cfg) : fs::path(o.out_dir);
  const RunOutcome outcome = run_ensemble(cfg, dir);
  std::cout << "run " << run_id(cfg) << " -> " << outcome.directory.string() << "\n";
  if (outcome.failures > 0) {
    std::cerr << outcome.failures << " realization(s) failed; see manifest.json\n";
    return 4;
  }
  return 0;
}

int cmd_reproduce_fig1(const CommonOpts& o) {
  RunConfig cfg = load_config(o);
  const fs::path dir = out_dir_for(cfg, o, "fig1");
  const StabilityGrid grid =
      stability_chart(0.5 * cfg.model.g0, 6.0 * cfg.model.g0, 300, 0.0, cfg.model.g0, 200, cfg.model);
  write_file(dir, "chart.csv", [&](std::ostream& os) { write_chart_csv(os, grid); });

  std::vector<PhasePoint> inits;
  for (double dx : {0.05, 0.2, 0.5, 0.9, 1.4, 2.0}) {
    inits.push_back({static_cast<double>(cfg.model.M) + dx, 0.0});
  }
  inits.push_back({static_cast<double>(cfg.model.M), 0.5});
  inits.push_back({static_cast<double>(cfg.model.M), 1.5});

  ModelParams stable = cfg.model;
  stable.omega = 5.0 * cfg.model.g0;
  stable.g1 = 0.9 * cfg.model.g0;
  write_file(dir, "poincare_stable.csv", [&](std::ostream& os) {
    write_poincare_csv(os, poincare_section(inits, 300, stable));
  });
  ModelParams unstable = cfg.model;
  unstable.omega = 2.0 * omega0(cfg.model);
  unstable.g1 = 0.9 * cfg.model.g0;
  write_file(dir, "poincare_unstable.csv", [&](std::ostream& os) {
    write_poincare_csv(os, poincare_section(inits, 300, unstable));
  });
  std::cout << "Omega0 = " << fmt17(omega0(cfg.model)) << "\n";
  return 0;
}

int run_w_pair(RunConfig cfg, const fs::path& dir) {
  int failures = 0;
  for (double W : {1.0, 10.0}) {
    RunConfig sub = cfg;
    sub.model.W = W * cfg.model.g0;
    sub.resolve();
    const std::string leaf = W < 5.0 ? "W1" : "W10";
    const RunOutcome out = run_ensemble(sub, dir / leaf);
    failures += out.failures;
    std::cout << "W = " << fmt17(sub.model.W) << " -> " << out.directory.string() << "\n";
  }
  return failures;
}

int cmd_reproduce_fig2(const CommonOpts& o) {
  RunConfig cfg = load_config(o);
  cfg.analysis = {};
  cfg.analysis.graph = true;
  cfg.analysis.pr = false;
  cfg.analysis.rstats = false;
  const fs::path dir = out_dir_for(cfg, o, "fig2");
  return run_w_pair(cfg, dir) == 0 ? 0 : 4;
}

int cmd_reproduce_fig3(const CommonOpts& o) {
  RunConfig cfg = load_config(o);
  cfg.analysis = {};
  cfg.analysis.pr = true;
  cfg.analysis.rstats = true;
  cfg.analysis.graph = false;
  const fs::path dir = out_dir_for(cfg, o, "fig3");
  return run_w_pair(cfg, dir) == 0 ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet diagnostics for a driven boson chain with an ergodic-localized junction"};
  app.set_version_flag("--version", std::string("eljx ") + version_string());
  app.require_subcommand(1);

  CommonOpts basis_o;
  int basis_N = -1, basis_L = 0;
  std::string basis_csv;
  bool basis_list = false;
  auto* basis_cmd = app.add_subcommand("basis", "Enumerate the N-particle configuration basis");
  add_common(basis_cmd, basis_o);
  basis_cmd->add_option("--N", basis_N, "Particle count");
  basis_cmd->add_option("--L", basis_L, "Site count");
  basis_cmd->add_option("--csv", basis_csv, "Dump the listing to a CSV file");
  basis_cmd->add_flag("--list", basis_list, "Print the listing");

  CommonOpts floquet_o;
  double dump_time = 0.0;
  auto* floquet_cmd = app.add_subcommand("floquet", "One-period propagator, quasienergies, H_eff");
  add_common(floquet_cmd, floquet_o);
  auto* dump_opt = floquet_cmd->add_option("--dump-hamiltonian", dump_time,
                                           "Also dump H(t) at the given time");

  CommonOpts graph_o;
  double cutoff_override = -1.0;
  auto* graph_cmd = app.add_subcommand("graph", "Adjacency, degrees, density, graph exports");
  add_common(graph_cmd, graph_o);
  graph_cmd->add_option("--cutoff", cutoff_override, "Adjacency cutoff on |H_eff|");

  CommonOpts levels_o;
  auto* levels_cmd = app.add_subcommand("levels", "Ensemble level statistics (r ratios)");
  add_common(levels_cmd, levels_o);

  CommonOpts pr_o;
  auto* pr_cmd = app.add_subcommand("pr", "Participation ratios (single + ensemble mean)");
  add_common(pr_cmd, pr_o);

  CommonOpts classical_o;
  bool chart = false, poincare = false;
  double omega_min = 0.5, omega_max = 6.0, g1_min = 0.0, g1_max = 1.0;
  int n_omega = 300, n_g1 = 200, periods = 300;
  auto* classical_cmd = app.add_subcommand("classical", "Stability chart and Poincare sections");
  add_common(classical_cmd, classical_o);
  classical_cmd->add_flag("--chart", chart, "Write the stability chart");
  classical_cmd->add_flag("--poincare", poincare, "Write stroboscopic sections");
  classical_cmd->add_option("--omega-min", omega_min);
  classical_cmd->add_option("--omega-max", omega_max);
  classical_cmd->add_option("--n-omega", n_omega);
  classical_cmd->add_option("--g1-min", g1_min);
  classical_cmd->add_option("--g1-max", g1_max);
  classical_cmd->add_option("--n-g1", n_g1);
  classical_cmd->add_option("--periods", periods);

  CommonOpts spec_o;
  int spec_Q = 0;
  double spec_noise = -1.0, spec_threshold = 0.0;
  std::vector<int> spec_sites;
  auto* spec_cmd = app.add_subcommand("spectroscopy", "Pulse, evolve, DFT, recover quasienergies");
  add_common(spec_cmd, spec_o);
  spec_cmd->add_option("--Q", spec_Q, "Stroboscopic samples per trace");
  spec_cmd->add_option("--noise-sigma", spec_noise, "Gaussian read-out noise");
  spec_cmd->add_option("--threshold", spec_threshold, "Peak threshold on averaged power");
  spec_cmd->add_option("--sites", spec_sites, "Pulse sites (one or two)")->expected(1, 2);

  CommonOpts jw_o;
  auto* jw_cmd = app.add_subcommand("jw", "Hardcore/fermion channel: effective matrix, spin table");
  add_common(jw_cmd, jw_o);

  CommonOpts ens_o;
  auto* ens_cmd = app.add_subcommand("ensemble", "Full disorder-ensemble pipeline with manifest");
  add_common(ens_cmd, ens_o);

  CommonOpts fig1_o, fig2_o, fig3_o;
  auto* fig1_cmd = app.add_subcommand("reproduce-fig1", "Stability chart + the two Poincare insets");
  add_common(fig1_cmd, fig1_o);
  auto* fig2_cmd = app.add_subcommand("reproduce-fig2", "Graph representation at W = g0 and 10 g0");
  add_common(fig2_cmd, fig2_o);
  auto* fig3_cmd = app.add_subcommand("reproduce-fig3", "Localization + level statistics at both W");
  add_common(fig3_cmd, fig3_o);

  auto* example_cmd = app.add_subcommand("example-config", "Print the annotated configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (basis_cmd->parsed()) return cmd_basis(basis_o, basis_N, basis_L, basis_csv, basis_list);
    if (floquet_cmd->parsed()) return cmd_floquet(floquet_o, dump_time, dump_opt->count() > 0);
    if (graph_cmd->parsed()) return cmd_graph(graph_o, cutoff_override);
    if (levels_cmd->parsed()) return cmd_levels(levels_o);
    if (pr_cmd->parsed()) return cmd_pr(pr_o);
    if (classical_cmd->parsed()) {
      return cmd_classical(classical_o, chart, poincare, omega_min, omega_max, n_omega, g1_min,
                           g1_max, n_g1, periods);
    }
    if (spec_cmd->parsed()) return cmd_spectroscopy(spec_o, spec_Q, spec_noise, spec_threshold, spec_sites);
    if (jw_cmd->parsed()) return cmd_jw(jw_o);
    if (ens_cmd->parsed()) return cmd_ensemble(ens_o);
    if (fig1_cmd->parsed()) return cmd_reproduce_fig1(fig1_o);
    if (fig2_cmd->parsed()) return cmd_reproduce_fig2(fig2_o);
    if (fig3_cmd->parsed()) return cmd_reproduce_fig3(fig3_o);
    if (example_cmd->parsed()) {
      write_example_config(std::cout);
      return 0;
    }
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
