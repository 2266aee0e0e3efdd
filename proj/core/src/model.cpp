#include "eljx/model.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace eljx {

namespace {

void fail(const std::string& msg) { throw validation_error(msg); }

} // namespace

void ModelParams::validate() const {
  if (M < 2) fail("ModelParams: M must be >= 2 (got " + std::to_string(M) + ")");
  if (L != 2 * M) fail("ModelParams: L must equal 2M (got L=" + std::to_string(L) + ", M=" + std::to_string(M) + ")");
  if (N < 0) fail("ModelParams: N must be >= 0 (got " + std::to_string(N) + ")");
  if (!(g0 > 0.0)) fail("ModelParams: g0 must be > 0 (got " + std::to_string(g0) + ")");
  if (g1 < 0.0) fail("ModelParams: g1 must be >= 0 (got " + std::to_string(g1) + ")");
  if (W < 0.0) fail("ModelParams: W must be >= 0 (got " + std::to_string(W) + ")");
  if (!(omega > 0.0)) fail("ModelParams: omega must be > 0 (got " + std::to_string(omega) + ")");
}

DisorderRealization DisorderRealization::draw(std::uint64_t seed, double W, int M) {
  if (M < 1) fail("DisorderRealization: M must be >= 1");
  if (W < 0.0) fail("DisorderRealization: W must be >= 0");
  DisorderRealization d;
  d.seed = seed;
  d.delta.resize(static_cast<std::size_t>(M));
  for (int j = 1; j <= M; ++j) {
    const double u = uniform01(mix64(seed, static_cast<std::uint64_t>(j)));
    d.delta[static_cast<std::size_t>(j - 1)] = W * (2.0 * u - 1.0);
  }
  return d;
}

std::vector<double> onsite_profile(const ModelParams& params, const DisorderRealization& disorder) {
  if (disorder.delta.size() != static_cast<std::size_t>(params.M)) {
    fail("onsite_profile: disorder realization has " + std::to_string(disorder.delta.size()) +
         " sites, expected M=" + std::to_string(params.M));
  }
  std::vector<double> hj(static_cast<std::size_t>(params.L));
  for (int j = 1; j <= params.L; ++j) {
    double v = params.h * std::cos(2.0 * pi * j / params.M);
    if (j <= params.M) v += disorder.delta[static_cast<std::size_t>(j - 1)];
    hj[static_cast<std::size_t>(j - 1)] = v;
  }
  return hj;
}

double coupling_at(int bond, double t, const ModelParams& params) {
  if (bond < 1 || bond >= params.L) {
    fail("coupling_at: bond index " + std::to_string(bond) + " out of range 1.." + std::to_string(params.L - 1));
  }
  if (bond < params.M) return params.g0;
  return params.g0 + params.g1 * std::cos(params.omega * t);
}

void hamiltonian_matrix_real(double t, const FockBasis& basis, const ModelParams& params,
                             const DisorderRealization& disorder, Eigen::MatrixXd& out) {
  if (basis.particles() != params.N || basis.sites() != params.L) {
    fail("hamiltonian_matrix: basis is (N=" + std::to_string(basis.particles()) + ", L=" +
         std::to_string(basis.sites()) + "), params want (N=" + std::to_string(params.N) +
         ", L=" + std::to_string(params.L) + ")");
  }
  const auto hj = onsite_profile(params, disorder);
  std::vector<double> g(static_cast<std::size_t>(params.L));
  for (int b = 1; b < params.L; ++b) g[static_cast<std::size_t>(b)] = coupling_at(b, t, params);

  const auto dim = static_cast<Eigen::Index>(basis.size());
  out.setZero(dim, dim);

  Occupation hopped;
  for (std::size_t row = 0; row < basis.size(); ++row) {
    const Occupation& n = basis.state(row);
    double diag = 0.0;
    for (int j = 0; j < params.L; ++j) {
      const double nj = n[static_cast<std::size_t>(j)];
      diag += hj[static_cast<std::size_t>(j)] * nj + 0.5 * params.U * nj * (nj - 1.0);
    }
    out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(row)) = diag;

    // Hop j+1 -> j for each bond; the reverse direction is the transpose.
    for (int b = 1; b < params.L; ++b) {
      const int src = b;     // site j+1, 0-based index b
      const int dst = b - 1; // site j, 0-based index b-1
      if (n[static_cast<std::size_t>(src)] == 0) continue;
      hopped = n;
      hopped[static_cast<std::size_t>(src)] -= 1;
      hopped[static_cast<std::size_t>(dst)] += 1;
      const std::size_t col = basis.index_of(hopped);
      const double amp = g[static_cast<std::size_t>(b)] *
                         std::sqrt(static_cast<double>(n[static_cast<std::size_t>(src)])) *
                         std::sqrt(static_cast<double>(n[static_cast<std::size_t>(dst)] + 1));
      out(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row)) = amp;
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amp;
    }
  }
}

HamiltonianMatrix hamiltonian_matrix(double t, const FockBasis& basis, const ModelParams& params,
                                     const DisorderRealization& disorder) {
  Eigen::MatrixXd real;
  hamiltonian_matrix_real(t, basis, params, disorder, real);
  HamiltonianMatrix h;
  h.entries = real.cast<std::complex<double>>();
  h.time = t;
  return h;
}

std::pair<double, double> bragg_branches(int j, const ModelParams& params) {
  const double base = 0.5 * params.h * std::cos(2.0 * pi * j / params.M);
  return {base - 2.0 * params.g0, base + 2.0 * params.g0};
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& m) {
  os << "l,ltilde,re,im\n";
  char buf[128];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const std::complex<double> v = m(r, c);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g", static_cast<long long>(r + 1),
                    static_cast<long long>(c + 1), v.real(), v.imag());
      os << buf << "\n";
    }
  }
}

} // namespace eljx
