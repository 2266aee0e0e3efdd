#include <doctest.h>

#include <cmath>

#include "eljx/spectroscopy.hpp"
#include "test_helpers.hpp"

using namespace eljx;

namespace {

ModelParams paper_point(int N, double W) {
  ModelParams p;
  p.N = N;
  p.W = W;
  p.omega = 2.9619219587722443;
  return p;
}

} // namespace

TEST_CASE("prepared superpositions carry the printed amplitudes") {
  const int L = 12;
  SUBCASE("single pulse") {
    const DirectSumState psi = prepare_superposition({4}, L);
    REQUIRE(psi.max_sector() == 1);
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(std::abs(psi.sector[0](0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    const FockBasis one = FockBasis::enumerate(1, L);
    Occupation occ(12, 0);
    occ[3] = 1;
    const auto idx = static_cast<Eigen::Index>(one.index_of(occ));
    CHECK(std::abs(psi.sector[1](idx)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(psi.sector[1].cwiseAbs().sum() == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("two pulses") {
    const DirectSumState psi = prepare_superposition({3, 9}, L);
    REQUIRE(psi.max_sector() == 2);
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(std::abs(psi.sector[0](0)) == doctest::Approx(0.5));
    const FockBasis one = FockBasis::enumerate(1, L);
    const FockBasis two = FockBasis::enumerate(2, L);
    Occupation a(12, 0), b(12, 0), ab(12, 0);
    a[2] = 1;
    b[8] = 1;
    ab[2] = 1;
    ab[8] = 1;
    CHECK(std::abs(psi.sector[1](static_cast<Eigen::Index>(one.index_of(a)))) == doctest::Approx(0.5));
    CHECK(std::abs(psi.sector[1](static_cast<Eigen::Index>(one.index_of(b)))) == doctest::Approx(0.5));
    CHECK(std::abs(psi.sector[2](static_cast<Eigen::Index>(two.index_of(ab)))) == doctest::Approx(0.5));
  }
  SUBCASE("bad pulse sets are rejected") {
    CHECK_THROWS_AS(prepare_superposition({5, 5}, L), validation_error);
    CHECK_THROWS_AS(prepare_superposition({0}, L), validation_error);
    CHECK_THROWS_AS(prepare_superposition({}, L), validation_error);
  }
}

TEST_CASE("sector norms are conserved under stroboscopic evolution") {
  ModelParams p = paper_point(1, 2.0);
  const auto d = DisorderRealization::draw(6, p.W, p.M);
  PropagatorSettings s;
  s.steps_per_period = 64;
  const SpectroscopyEmulator em(p, d, s, 2);
  const DirectSumState psi0 = prepare_superposition({2, 7}, p.L);

  Eigen::VectorXcd s1 = psi0.sector[1];
  Eigen::VectorXcd s2 = psi0.sector[2];
  const double n1 = s1.norm(), n2 = s2.norm();
  for (int n = 0; n < 25; ++n) {
    s1 = em.sector_floquet(1) * s1;
    s2 = em.sector_floquet(2) * s2;
  }
  CHECK(s1.norm() == doctest::Approx(n1).epsilon(1e-10));
  CHECK(s2.norm() == doctest::Approx(n2).epsilon(1e-10));
}

TEST_CASE("trivial traces: constant for H = 0-like dynamics, cosine for one term") {
  // One-term cosine from the reconstruction path.
  const auto one_term = cosine_sum_trace({0.8}, {1.0}, 64, 2.0);
  for (int n = 0; n < 64; ++n) {
    CHECK(one_term[static_cast<std::size_t>(n)] == doctest::Approx(std::cos(0.8 * n * 2.0)));
  }
}

TEST_CASE("X trace equals the cosine sum over the directly computed spectrum") {
  ModelParams p = paper_point(1, 1.0);
  const auto d = DisorderRealization::draw(12321, p.W, p.M);
  PropagatorSettings s;
  const int site = 3;
  const int Q = 300;

  const SpectroscopyEmulator em(p, d, s, 1);
  const DirectSumState psi0 = prepare_superposition({site}, p.L);
  const SignalTrace tr = em.trace(psi0, Observable::X(site), Q);

  // Independent path: quasienergies and overlaps from the Floquet engine.
  const auto [eps, modes] = quasienergy_spectrum(em.sector_floquet(1), p.omega);
  const FockBasis& basis = em.sector_basis(1);
  Occupation occ(static_cast<std::size_t>(p.L), 0);
  occ[site - 1] = 1;
  const auto row = static_cast<Eigen::Index>(basis.index_of(occ));
  std::vector<double> ev, wv;
  for (Eigen::Index mu = 0; mu < eps.size(); ++mu) {
    ev.push_back(eps(mu));
    wv.push_back(std::norm(modes(row, mu)));
  }
  const auto recon = cosine_sum_trace(ev, wv, Q, p.period());
  double max_diff = 0.0;
  for (int n = 0; n < Q; ++n) {
    max_diff = std::max(max_diff, std::abs(recon[static_cast<std::size_t>(n)] -
                                           tr.values[static_cast<std::size_t>(n)]));
  }
  CHECK(max_diff < 1e-8);
  CHECK(tr.values[0] == doctest::Approx(1.0)); // sum of weights at n = 0
}

TEST_CASE("P trace and two-site correlators stay real and bounded") {
  ModelParams p = paper_point(2, 3.0);
  const auto d = DisorderRealization::draw(5150, p.W, p.M);
  PropagatorSettings s;
  s.steps_per_period = 64;
  const SpectroscopyEmulator em(p, d, s, 2);
  const DirectSumState psi = prepare_superposition({2, 9}, p.L);
  for (const Observable& obs :
       {Observable::P(2), Observable::XX(2, 9), Observable::PP(2, 9), Observable::PX(2, 9)}) {
    const Eigen::MatrixXcd O = em.observable_matrix(obs);
    CHECK((O - O.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    const SignalTrace tr = em.trace(psi, obs, 40);
    for (double v : tr.values) {
      CHECK(std::isfinite(v));
      CHECK(std::abs(v) < 10.0);
    }
  }
  CHECK_THROWS_AS(em.observable_matrix(Observable::XX(2, 2)), validation_error);
}

TEST_CASE("power spectrum: DC line, commensurate cosine, Parseval") {
  const double T = 2.0;
  SUBCASE("constant trace concentrates at k = 0") {
    SignalTrace tr;
    tr.period = T;
    tr.values.assign(128, 0.7);
    const PowerSpectrum spec = power_spectrum({tr});
    CHECK(spec.power[0] == doctest::Approx(0.49));
    for (int k = 1; k < spec.size(); ++k) CHECK(spec.power[static_cast<std::size_t>(k)] < 1e-24);
  }
  SUBCASE("bin-centered cosine gives two clean peaks") {
    const int Q = 128, kstar = 9;
    SignalTrace tr;
    tr.period = T;
    tr.values.resize(Q);
    for (int n = 0; n < Q; ++n) {
      tr.values[static_cast<std::size_t>(n)] = std::cos(2.0 * pi * kstar * n / Q);
    }
    const PowerSpectrum spec = power_spectrum({tr});
    CHECK(spec.power[kstar] == doctest::Approx(0.25));
    CHECK(spec.power[Q - kstar] == doctest::Approx(0.25));
    for (int k = 0; k < Q; ++k) {
      if (k != kstar && k != Q - kstar) CHECK(spec.power[static_cast<std::size_t>(k)] < 1e-20);
    }
  }
  SUBCASE("Parseval under the 1/Q convention") {
    std::mt19937 rng(4);
    std::normal_distribution<double> nd;
    SignalTrace tr;
    tr.period = T;
    tr.values.resize(200);
    double sum_t = 0.0;
    for (double& v : tr.values) {
      v = nd(rng);
      sum_t += v * v;
    }
    const PowerSpectrum spec = power_spectrum({tr});
    double sum_f = 0.0;
    for (double pwr : spec.power) sum_f += pwr;
    CHECK(std::abs(sum_f - sum_t / 200.0) < 1e-10 * sum_t);
  }
  SUBCASE("ragged lengths are rejected") {
    SignalTrace a, b;
    a.period = b.period = T;
    a.values.assign(64, 0.0);
    b.values.assign(65, 0.0);
    CHECK_THROWS_AS(power_spectrum({a, b}), validation_error);
  }
}

TEST_CASE("peak extraction on synthetic spectra") {
  const double T = 2.0;
  const int Q = 512;
  SUBCASE("single bin-centered cosine: one peak of weight one") {
    SignalTrace tr;
    tr.period = T;
    tr.values.resize(Q);
    const int kstar = 40;
    for (int n = 0; n < Q; ++n) {
      tr.values[static_cast<std::size_t>(n)] = std::cos(2.0 * pi * kstar * n / Q);
    }
    const PowerSpectrum spec = power_spectrum({tr});
    const PeakSet peaks = extract_peaks(spec, 1e-6);
    REQUIRE(peaks.peaks.size() == 1);
    CHECK(peaks.peaks[0].bin == kstar);
    CHECK(peaks.peaks[0].weight == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(peaks.peaks[0].eps == doctest::Approx(2.0 * pi * kstar / (Q * T)));
    CHECK(peaks.participation_estimate() == doctest::Approx(1.0));
  }
  SUBCASE("off-bin frequency recovered within half a bin, weight corrected") {
    const double bin = 2.0 * pi / (Q * T);
    const double eps_true = (57.37) * bin;
    const auto values = cosine_sum_trace({eps_true}, {0.8}, Q, T);
    SignalTrace tr;
    tr.period = T;
    tr.values = values;
    const PowerSpectrum spec = power_spectrum({tr});
    const PeakSet peaks = extract_peaks(spec, 1e-6);
    REQUIRE(!peaks.peaks.empty());
    const Peak& main = peaks.peaks.front();
    CHECK(std::abs(main.eps - eps_true) < 0.5 * bin);
    CHECK(main.weight == doctest::Approx(0.8).epsilon(0.05));
  }
  SUBCASE("two close lines merge at small Q and resolve at large Q") {
    const double e1 = 0.50, e2 = 0.55;
    const auto count_peaks = [&](int q) {
      SignalTrace tr;
      tr.period = T;
      tr.values = cosine_sum_trace({e1, e2}, {0.5, 0.5}, q, T);
      const PowerSpectrum spec = power_spectrum({tr});
      std::size_t found = 0;
      for (const Peak& p : extract_peaks(spec, 1e-4).peaks) {
        if (p.eps > 0.3 && p.eps < 0.8) ++found;
      }
      return found;
    };
    CHECK(count_peaks(36) == 1);   // bin width 2 pi / 72 = 0.087 > separation
    CHECK(count_peaks(700) == 2);  // bin width 0.0045 << separation
  }
  SUBCASE("DC handling") {
    SignalTrace tr;
    tr.period = T;
    tr.values = cosine_sum_trace({0.9}, {0.6}, Q, T);
    for (double& v : tr.values) v += 2.0; // vacuum-like DC line
    const PowerSpectrum spec = power_spectrum({tr});
    CHECK(extract_peaks(spec, 1e-6, false).peaks.size() == 1);
    const PeakSet with_dc = extract_peaks(spec, 1e-6, true);
    REQUIRE(with_dc.peaks.size() == 2);
    CHECK(with_dc.peaks.front().bin == 0);
    CHECK(with_dc.peaks.front().weight == doctest::Approx(2.0).epsilon(1e-3));
  }
}

TEST_CASE("noise knob adds reproducible perturbation") {
  ModelParams p = paper_point(1, 1.0);
  const auto d = DisorderRealization::draw(8, p.W, p.M);
  PropagatorSettings s;
  s.steps_per_period = 64;
  const SpectroscopyEmulator em(p, d, s, 1);
  const DirectSumState psi = prepare_superposition({5}, p.L);
  const SignalTrace clean = em.trace(psi, Observable::X(5), 50);
  const SignalTrace noisy1 = em.trace(psi, Observable::X(5), 50, 0.05, 777);
  const SignalTrace noisy2 = em.trace(psi, Observable::X(5), 50, 0.05, 777);
  CHECK(noisy1.values == noisy2.values);
  double dev = 0.0;
  for (std::size_t n = 0; n < clean.values.size(); ++n) {
    dev = std::max(dev, std::abs(noisy1.values[n] - clean.values[n]));
  }
  CHECK(dev > 0.0);
  CHECK(dev < 0.5);
}
