#include "eljx/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eljx {

namespace {

double drive(double t, const ModelParams& p) { return p.g0 + p.g1 * std::cos(p.omega * t); }

void check_classical_params(const ModelParams& p) {
  if (!(p.h > 0.0)) throw validation_error("classical: h must be > 0 (got " + std::to_string(p.h) + ")");
  if (!(p.g0 > 0.0)) throw validation_error("classical: g0 must be > 0 (got " + std::to_string(p.g0) + ")");
  if (p.M < 2) throw validation_error("classical: M must be >= 2");
}

struct Deriv {
  const ModelParams* params;
  std::array<double, 2> operator()(double t, const std::array<double, 2>& y) const {
    const double g = drive(t, *params);
    return {-2.0 * g * std::sin(y[1]), (2.0 * pi * params->h / params->M) * std::sin(2.0 * pi * y[0] / params->M)};
  }
};

// Dormand-Prince 5(4) with PI-free step control and FSAL reuse.
template <typename Rhs>
std::array<double, 2> dopri5(std::array<double, 2> y, double t0, double t1, const Rhs& f,
                             double tol) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  double t = t0;
  double h = std::min(1e-2, t1 - t0);
  std::array<double, 2> k1 = f(t, y);
  int rejected_in_a_row = 0;

  while (t < t1) {
    h = std::min(h, t1 - t);
    const auto step = [&](double frac, const std::array<double, 2>& incr) {
      return f(t + frac * h, {y[0] + h * incr[0], y[1] + h * incr[1]});
    };
    const auto k2 = step(c2, {a21 * k1[0], a21 * k1[1]});
    const auto k3 = step(c3, {a31 * k1[0] + a32 * k2[0], a31 * k1[1] + a32 * k2[1]});
    const auto k4 = step(c4, {a41 * k1[0] + a42 * k2[0] + a43 * k3[0], a41 * k1[1] + a42 * k2[1] + a43 * k3[1]});
    const auto k5 = step(c5, {a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0],
                              a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]});
    const auto k6 = step(1.0, {a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0],
                               a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]});
    std::array<double, 2> y1 = {
        y[0] + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
        y[1] + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1])};
    const auto k7 = f(t + h, y1);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y1[i])));
      err = std::max(err, std::abs(e) / scale);
    }

    if (err <= 1.0) {
      t += h;
      y = y1;
      k1 = k7; // FSAL
      rejected_in_a_row = 0;
      h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 1.0, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
      if (++rejected_in_a_row > 60) {
        throw numeric_error("classical integrator: step size collapsed at t = " + std::to_string(t));
      }
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t1))) {
      throw numeric_error("classical integrator: step underflow at t = " + std::to_string(t));
    }
  }
  return y;
}

} // namespace

PhasePoint wrap_point(PhasePoint p, int M) {
  const double m = static_cast<double>(M);
  double x = std::fmod(p.x - 0.5 * m, m);
  if (x < 0.0) x += m;
  p.x = x + 0.5 * m;
  double k = std::fmod(p.k + pi, 2.0 * pi);
  if (k <= 0.0) k += 2.0 * pi;
  p.k = k - pi;
  return p;
}

std::array<double, 2> flow(const PhasePoint& p, double t, const ModelParams& params) {
  check_classical_params(params);
  const Deriv f{&params};
  return f(t, {p.x, p.k});
}

double classical_energy(const PhasePoint& p, double t, const ModelParams& params) {
  return params.h * std::cos(2.0 * pi * p.x / params.M) + 2.0 * drive(t, params) * std::cos(p.k);
}

double omega0(const ModelParams& params) {
  check_classical_params(params);
  return std::sqrt(8.0 * pi * pi * params.h * params.g0) / params.M;
}

PhasePoint integrate_flow(PhasePoint p, double t0, double t1, const ModelParams& params,
                          double tol) {
  check_classical_params(params);
  if (!(params.omega > 0.0)) throw validation_error("classical: omega must be > 0");
  if (t1 == t0) return p;
  const Deriv f{&params};
  if (t1 > t0) {
    auto y = dopri5({p.x, p.k}, t0, t1, f, tol);
    return {y[0], y[1]};
  }
  // Backward integration via time reflection s = -t (flips both derivatives).
  const auto frev = [&f](double s, const std::array<double, 2>& y) -> std::array<double, 2> {
    const auto d = f(-s, y);
    return {-d[0], -d[1]};
  };
  auto y = dopri5({p.x, p.k}, -t0, -t1, frev, tol);
  return {y[0], y[1]};
}

std::vector<std::vector<PhasePoint>> poincare_section(const std::vector<PhasePoint>& initial,
                                                      int n_periods, const ModelParams& params,
                                                      double tol) {
  check_classical_params(params);
  if (!(params.omega > 0.0)) throw validation_error("poincare_section: omega must be > 0");
  if (n_periods < 1) throw validation_error("poincare_section: n_periods must be >= 1");
  const double T = params.period();
  std::vector<std::vector<PhasePoint>> out;
  out.reserve(initial.size());
  for (const PhasePoint& start : initial) {
    std::vector<PhasePoint> samples;
    samples.reserve(static_cast<std::size_t>(n_periods) + 1);
    samples.push_back(wrap_point(start, params.M));
    PhasePoint p = start;
    for (int n = 1; n <= n_periods; ++n) {
      p = integrate_flow(p, (n - 1) * T, n * T, params, tol);
      samples.push_back(wrap_point(p, params.M));
    }
    out.push_back(std::move(samples));
  }
  return out;
}

std::array<double, 4> monodromy_matrix(const ModelParams& params, int steps) {
  check_classical_params(params);
  if (!(params.omega > 0.0)) throw validation_error("monodromy_matrix: omega must be > 0");
  if (steps < 16) throw validation_error("monodromy_matrix: steps must be >= 16");
  const double T = params.period();
  const double dt = T / steps;
  const double c21 = 4.0 * pi * pi * params.h / (params.M * static_cast<double>(params.M));

  // u' = J(t) u with J = [[0, -2 g(t)], [c21, 0]]; propagate the 2x2
  // fundamental matrix with classic RK4.
  std::array<double, 4> u = {1.0, 0.0, 0.0, 1.0};
  const auto rhs = [&](double t, const std::array<double, 4>& m) -> std::array<double, 4> {
    const double g2 = -2.0 * drive(t, params);
    return {g2 * m[2], g2 * m[3], c21 * m[0], c21 * m[1]};
  };
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    const auto add = [](const std::array<double, 4>& a, const std::array<double, 4>& b, double w) {
      return std::array<double, 4>{a[0] + w * b[0], a[1] + w * b[1], a[2] + w * b[2], a[3] + w * b[3]};
    };
    const auto k1 = rhs(t, u);
    const auto k2 = rhs(t + 0.5 * dt, add(u, k1, 0.5 * dt));
    const auto k3 = rhs(t + 0.5 * dt, add(u, k2, 0.5 * dt));
    const auto k4 = rhs(t + dt, add(u, k3, dt));
    for (int i = 0; i < 4; ++i) {
      u[static_cast<std::size_t>(i)] += dt / 6.0 *
          (k1[static_cast<std::size_t>(i)] + 2.0 * k2[static_cast<std::size_t>(i)] +
           2.0 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
    }
  }
  return u;
}

StabilityGrid stability_chart(double omega_min, double omega_max, int n_omega, double g1_min,
                              double g1_max, int n_g1, const ModelParams& base, int steps) {
  check_classical_params(base);
  if (!(omega_min > 0.0) || omega_max < omega_min) throw validation_error("stability_chart: bad omega range");
  if (g1_min < 0.0 || g1_max < g1_min) throw validation_error("stability_chart: bad g1 range");
  if (n_omega < 1 || n_g1 < 1) throw validation_error("stability_chart: grid sizes must be >= 1");

  StabilityGrid grid;
  grid.omega_axis.resize(static_cast<std::size_t>(n_omega));
  grid.g1_axis.resize(static_cast<std::size_t>(n_g1));
  for (int i = 0; i < n_omega; ++i) {
    grid.omega_axis[static_cast<std::size_t>(i)] =
        n_omega == 1 ? omega_min : omega_min + (omega_max - omega_min) * i / (n_omega - 1.0);
  }
  for (int j = 0; j < n_g1; ++j) {
    grid.g1_axis[static_cast<std::size_t>(j)] =
        n_g1 == 1 ? g1_min : g1_min + (g1_max - g1_min) * j / (n_g1 - 1.0);
  }
  const std::size_t total = grid.omega_axis.size() * grid.g1_axis.size();
  grid.trace.resize(total);
  grid.det.resize(total);
  grid.stable.resize(total);

  ModelParams p = base;
  for (std::size_t iw = 0; iw < grid.omega_axis.size(); ++iw) {
    p.omega = grid.omega_axis[iw];
    for (std::size_t ig = 0; ig < grid.g1_axis.size(); ++ig) {
      p.g1 = grid.g1_axis[ig];
      const auto m = monodromy_matrix(p, steps);
      const double tr = m[0] + m[3];
      const double det = m[0] * m[3] - m[1] * m[2];
      const std::size_t at = grid.idx(iw, ig);
      grid.trace[at] = tr;
      grid.det[at] = det;
      grid.stable[at] = std::abs(tr) <= 2.0 ? 1 : 0;
    }
  }
  return grid;
}

} // namespace eljx
