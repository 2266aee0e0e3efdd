#pragma once

#include <Eigen/Core>
#include <vector>

#include "eljx/common.hpp"

namespace eljx {

enum class PRMode {
  PerConfiguration, // PR(l) = 1 / sum_mu |c_{mu,l}|^4  (default)
  PerState          // PR(mu) = 1 / sum_l |c_{mu,l}|^4
};

/// Participation ratios from an eigenvector matrix with c_{mu,l} = modes(l, mu).
/// Both conventions are well defined because rows and columns of a unitary
/// matrix are normalized; the input is rejected if it is not unitary.
Eigen::VectorXd participation_ratio(const Eigen::MatrixXcd& modes,
                                    PRMode mode = PRMode::PerConfiguration,
                                    double unitarity_tol = 1e-8);

/// Consecutive-spacing ratios r_mu = min(s_mu, s_{mu-1}) / max(s_mu, s_{mu-1})
/// from a sorted spectrum. A zero spacing next to a finite one gives r = 0;
/// a pair of zero spacings is skipped (0/0). Needs at least 3 levels.
std::vector<double> spacing_ratios(const Eigen::VectorXd& sorted_levels);

/// Wigner-like GOE surmise for the r-ratio density on [0, 1].
double goe_surmise(double r);

/// Poisson r-ratio density on [0, 1].
double poisson_surmise(double r);

/// Exact means of the two surmises: 4 - 2 sqrt(3) and 2 ln 2 - 1.
double goe_mean_r();
double poisson_mean_r();

struct RHistogram {
  std::vector<double> centers;
  std::vector<std::size_t> counts;
  std::vector<double> density; // normalized so sum(density) * bin_width = 1
  double mean_r = 0.0;
  double stderr_r = 0.0;
  std::size_t samples = 0;
  int bins = 0;
};

/// Density-normalized histogram of pooled r values over an ensemble of
/// realizations, plus the sample mean and its standard error.
RHistogram r_histogram(const std::vector<std::vector<double>>& ensemble, int bins = 20);

} // namespace eljx
