#include "eljx/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eljx {

Eigen::VectorXd participation_ratio(const Eigen::MatrixXcd& modes, PRMode mode,
                                    double unitarity_tol) {
  const Eigen::Index n = modes.rows();
  if (n != modes.cols() || n == 0) throw validation_error("participation_ratio: square nonempty matrix required");
  Eigen::MatrixXcd g = modes.adjoint() * modes;
  g -= Eigen::MatrixXcd::Identity(n, n);
  if (g.cwiseAbs().maxCoeff() > unitarity_tol) {
    throw validation_error("participation_ratio: mode matrix is not unitary within tolerance");
  }

  const Eigen::ArrayXXd p2 = modes.array().abs2();
  const Eigen::ArrayXXd p4 = p2 * p2;
  Eigen::VectorXd pr(n);
  if (mode == PRMode::PerConfiguration) {
    // sum over mu (columns) for each configuration row l
    pr = (1.0 / p4.rowwise().sum()).matrix();
  } else {
    pr = (1.0 / p4.colwise().sum()).matrix().transpose();
  }
  return pr;
}

std::vector<double> spacing_ratios(const Eigen::VectorXd& sorted_levels) {
  const Eigen::Index n = sorted_levels.size();
  if (n < 3) throw validation_error("spacing_ratios: need at least 3 levels (got " + std::to_string(n) + ")");
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (sorted_levels(i + 1) < sorted_levels(i)) {
      throw validation_error("spacing_ratios: levels must be sorted ascending");
    }
  }
  std::vector<double> r;
  r.reserve(static_cast<std::size_t>(n - 2));
  for (Eigen::Index mu = 1; mu + 1 <= n - 1; ++mu) {
    const double a = sorted_levels(mu) - sorted_levels(mu - 1);
    const double b = sorted_levels(mu + 1) - sorted_levels(mu);
    if (a == 0.0 && b == 0.0) continue; // degenerate cluster: 0/0, skipped
    r.push_back(std::min(a, b) / std::max(a, b));
  }
  return r;
}

double goe_surmise(double r) {
  if (r < 0.0 || r > 1.0) throw validation_error("goe_surmise: r must lie in [0, 1]");
  const double q = 1.0 + r + r * r;
  return 6.75 * (r + r * r) / (q * q * std::sqrt(q));
}

double poisson_surmise(double r) {
  if (r < 0.0 || r > 1.0) throw validation_error("poisson_surmise: r must lie in [0, 1]");
  return 2.0 / ((1.0 + r) * (1.0 + r));
}

double goe_mean_r() { return 4.0 - 2.0 * std::sqrt(3.0); }
double poisson_mean_r() { return 2.0 * std::log(2.0) - 1.0; }

RHistogram r_histogram(const std::vector<std::vector<double>>& ensemble, int bins) {
  if (ensemble.empty()) throw validation_error("r_histogram: empty ensemble");
  if (bins < 1) throw validation_error("r_histogram: bins must be >= 1");

  RHistogram h;
  h.bins = bins;
  h.centers.resize(static_cast<std::size_t>(bins));
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = 1.0 / bins;
  for (int b = 0; b < bins; ++b) h.centers[static_cast<std::size_t>(b)] = (b + 0.5) * width;

  double sum = 0.0, sumsq = 0.0;
  for (const auto& run : ensemble) {
    for (double r : run) {
      if (r < 0.0 || r > 1.0) throw validation_error("r_histogram: r value outside [0, 1]");
      int b = std::min(bins - 1, static_cast<int>(r / width));
      h.counts[static_cast<std::size_t>(b)] += 1;
      sum += r;
      sumsq += r * r;
      h.samples += 1;
    }
  }
  if (h.samples == 0) throw validation_error("r_histogram: ensemble holds no r values");

  h.density.resize(static_cast<std::size_t>(bins));
  const auto total = static_cast<double>(h.samples);
  for (int b = 0; b < bins; ++b) {
    h.density[static_cast<std::size_t>(b)] = static_cast<double>(h.counts[static_cast<std::size_t>(b)]) / (total * width);
  }
  h.mean_r = sum / total;
  const double var = std::max(0.0, sumsq / total - h.mean_r * h.mean_r);
  h.stderr_r = h.samples > 1 ? std::sqrt(var / (total - 1.0)) : 0.0;
  return h;
}

} // namespace eljx
