#include "eljx/outputs.hpp"

#include <ostream>

#include "eljx/io.hpp"

namespace eljx {

namespace {

void banner(std::ostream& os, const char* name) { os << "# eljx v1 " << name << "\n"; }

} // namespace

void write_quasienergies_csv(std::ostream& os, const Eigen::VectorXd& eps) {
  banner(os, "quasienergies");
  os << "mu,eps\n";
  for (Eigen::Index i = 0; i < eps.size(); ++i) {
    os << (i + 1) << "," << fmt17(eps(i)) << "\n";
  }
}

void write_modes_csv(std::ostream& os, const Eigen::MatrixXcd& modes) {
  banner(os, "modes");
  os << "mu,l,re,im,abs2\n";
  for (Eigen::Index mu = 0; mu < modes.cols(); ++mu) {
    for (Eigen::Index l = 0; l < modes.rows(); ++l) {
      const std::complex<double> c = modes(l, mu);
      os << (mu + 1) << "," << (l + 1) << "," << fmt17(c.real()) << "," << fmt17(c.imag()) << ","
         << fmt17(std::norm(c)) << "\n";
    }
  }
}

void write_heff_csv(std::ostream& os, const Eigen::MatrixXcd& h_eff, const char* name) {
  banner(os, name);
  os << "l,ltilde,re,im\n";
  for (Eigen::Index r = 0; r < h_eff.rows(); ++r) {
    for (Eigen::Index c = 0; c < h_eff.cols(); ++c) {
      os << (r + 1) << "," << (c + 1) << "," << fmt17(h_eff(r, c).real()) << ","
         << fmt17(h_eff(r, c).imag()) << "\n";
    }
  }
}

void write_pr_csv(std::ostream& os, const Eigen::VectorXd& pr, const char* value_name) {
  banner(os, "pr");
  os << "l," << value_name << "\n";
  for (Eigen::Index i = 0; i < pr.size(); ++i) {
    os << (i + 1) << "," << fmt17(pr(i)) << "\n";
  }
}

void write_degrees_csv(std::ostream& os, const std::vector<int>& degrees) {
  banner(os, "degrees");
  os << "l,degree\n";
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    os << (i + 1) << "," << degrees[i] << "\n";
  }
}

void write_pk_csv(std::ostream& os, const DegreeDistribution& dist) {
  banner(os, "pk");
  os << "degree,count,probability\n";
  for (std::size_t k = 0; k < dist.pk.size(); ++k) {
    os << k << "," << dist.counts[k] << "," << fmt17(dist.pk[k]) << "\n";
  }
}

void write_rstats_csv(std::ostream& os, const RHistogram& hist) {
  banner(os, "rstats");
  os << "bin_center,density,p_goe,p_poisson\n";
  for (std::size_t b = 0; b < hist.centers.size(); ++b) {
    const double r = hist.centers[b];
    os << fmt17(r) << "," << fmt17(hist.density[b]) << "," << fmt17(goe_surmise(r)) << ","
       << fmt17(poisson_surmise(r)) << "\n";
  }
}

void write_density_csv(std::ostream& os, const std::vector<DensityRow>& rows) {
  banner(os, "density");
  os << "seed,W,N,density\n";
  for (const DensityRow& row : rows) {
    os << row.seed << "," << fmt17(row.W) << "," << row.N << "," << fmt17(row.density) << "\n";
  }
}

void write_chart_csv(std::ostream& os, const StabilityGrid& grid) {
  banner(os, "chart");
  os << "omega,g1,trace,stable\n";
  for (std::size_t iw = 0; iw < grid.omega_axis.size(); ++iw) {
    for (std::size_t ig = 0; ig < grid.g1_axis.size(); ++ig) {
      const std::size_t at = grid.idx(iw, ig);
      os << fmt17(grid.omega_axis[iw]) << "," << fmt17(grid.g1_axis[ig]) << ","
         << fmt17(grid.trace[at]) << "," << static_cast<int>(grid.stable[at]) << "\n";
    }
  }
}

void write_poincare_csv(std::ostream& os, const std::vector<std::vector<PhasePoint>>& orbits) {
  banner(os, "poincare");
  os << "orbit,n,x,k\n";
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    for (std::size_t n = 0; n < orbits[o].size(); ++n) {
      os << o << "," << n << "," << fmt17(orbits[o][n].x) << "," << fmt17(orbits[o][n].k) << "\n";
    }
  }
}

void write_trace_csv(std::ostream& os, const std::vector<SignalTrace>& traces) {
  banner(os, "trace");
  os << "l,n,value\n";
  for (std::size_t l = 0; l < traces.size(); ++l) {
    for (std::size_t n = 0; n < traces[l].values.size(); ++n) {
      os << (l + 1) << "," << n << "," << fmt17(traces[l].values[n]) << "\n";
    }
  }
}

void write_spectrum_csv(std::ostream& os, const PowerSpectrum& spec) {
  banner(os, "spectrum");
  os << "k,eps,power\n";
  for (int k = 0; k < spec.size(); ++k) {
    os << k << "," << fmt17(spec.bin_energy(k)) << "," << fmt17(spec.power[static_cast<std::size_t>(k)])
       << "\n";
  }
}

void write_peaks_csv(std::ostream& os, const PeakSet& peaks) {
  banner(os, "peaks");
  os << "eps,weight\n";
  for (const Peak& p : peaks.peaks) {
    os << fmt17(p.eps) << "," << fmt17(p.weight) << "\n";
  }
}

} // namespace eljx
