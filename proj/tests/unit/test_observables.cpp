#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "eljx/observables.hpp"
#include "test_helpers.hpp"

using namespace eljx;

TEST_CASE("participation ratio of the identity and of a flat unitary") {
  const Eigen::Index n = 16;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::VectorXd pr_id = participation_ratio(id);
  for (Eigen::Index i = 0; i < n; ++i) CHECK(pr_id(i) == doctest::Approx(1.0));

  // Unitary DFT matrix: every |c|^2 = 1/n.
  Eigen::MatrixXcd dft(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double phase = 2.0 * pi * static_cast<double>(r) * static_cast<double>(c) / static_cast<double>(n);
      dft(r, c) = std::complex<double>(std::cos(phase), std::sin(phase)) / std::sqrt(static_cast<double>(n));
    }
  }
  for (const PRMode mode : {PRMode::PerConfiguration, PRMode::PerState}) {
    const Eigen::VectorXd pr = participation_ratio(dft, mode);
    for (Eigen::Index i = 0; i < n; ++i) CHECK(pr(i) == doctest::Approx(static_cast<double>(n)));
  }
}

TEST_CASE("participation ratio bounds and phase invariance on random unitaries") {
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    const Eigen::Index n = 24;
    const Eigen::MatrixXcd u = testing::random_unitary(n, seed);
    const Eigen::VectorXd pr = participation_ratio(u);
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(pr(i) >= 1.0 - 1e-12);
      CHECK(pr(i) <= static_cast<double>(n) + 1e-9);
    }
    // Per-mode phases leave PR untouched.
    std::mt19937 rng(seed + 100);
    std::uniform_real_distribution<double> ud(0.0, 2.0 * pi);
    Eigen::MatrixXcd v = u;
    for (Eigen::Index c = 0; c < n; ++c) {
      v.col(c) *= std::exp(std::complex<double>(0.0, ud(rng)));
    }
    const Eigen::VectorXd pr2 = participation_ratio(v);
    CHECK((pr - pr2).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("participation ratio rejects non-unitary input") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  m(2, 2) = 0.5;
  CHECK_THROWS_AS(participation_ratio(m), validation_error);
}

TEST_CASE("spacing ratios: even grid, degeneracies, short input") {
  Eigen::VectorXd even(6);
  even << 0, 1, 2, 3, 4, 5;
  const auto r = spacing_ratios(even);
  REQUIRE(r.size() == 4);
  for (double v : r) CHECK(v == doctest::Approx(1.0));

  Eigen::VectorXd degen(4);
  degen << 0.0, 1.0, 1.0, 3.0; // zero spacing between finite gaps
  const auto rd = spacing_ratios(degen);
  REQUIRE(rd.size() == 2);
  CHECK(rd[0] == doctest::Approx(0.0));
  CHECK(rd[1] == doctest::Approx(0.0));

  Eigen::VectorXd twin(5);
  twin << 0.0, 1.0, 1.0, 1.0, 2.0; // both-zero pair is skipped
  const auto rt = spacing_ratios(twin);
  REQUIRE(rt.size() == 2);

  Eigen::VectorXd two(2);
  two << 0.0, 1.0;
  CHECK_THROWS_AS(spacing_ratios(two), validation_error);
}

TEST_CASE("spacing ratios are invariant under affine rescaling") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Eigen::VectorXd levels(40);
  for (Eigen::Index i = 0; i < levels.size(); ++i) levels(i) = ud(rng);
  std::sort(levels.data(), levels.data() + levels.size());
  const auto base = spacing_ratios(levels);
  const Eigen::VectorXd scaled = (2.7 * levels.array() - 0.9).matrix();
  const auto again = spacing_ratios(scaled);
  REQUIRE(base.size() == again.size());
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(base[i] == doctest::Approx(again[i]));
}

TEST_CASE("reference surmises: endpoints, normalization, means by quadrature") {
  CHECK(poisson_surmise(0.0) == doctest::Approx(2.0));
  CHECK(goe_surmise(0.0) == doctest::Approx(0.0));
  CHECK(poisson_surmise(1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(goe_surmise(-0.1), validation_error);
  CHECK_THROWS_AS(poisson_surmise(1.1), validation_error);

  const double int_goe = testing::simpson([](double r) { return goe_surmise(r); }, 0.0, 1.0, 20000);
  const double int_poisson =
      testing::simpson([](double r) { return poisson_surmise(r); }, 0.0, 1.0, 20000);
  CHECK(std::abs(int_goe - 1.0) < 1e-8);
  CHECK(std::abs(int_poisson - 1.0) < 1e-8);

  // Mean-r oracles, frozen: 2 ln 2 - 1 and 4 - 2 sqrt(3).
  const double mean_poisson =
      testing::simpson([](double r) { return r * poisson_surmise(r); }, 0.0, 1.0, 20000);
  const double mean_goe = testing::simpson([](double r) { return r * goe_surmise(r); }, 0.0, 1.0, 20000);
  CHECK(std::abs(mean_poisson - 0.38629436111989062) < 1e-10);
  CHECK(std::abs(mean_goe - 0.53589838486224541) < 1e-8);
  CHECK(poisson_mean_r() == doctest::Approx(0.38629436111989062));
  CHECK(goe_mean_r() == doctest::Approx(0.53589838486224541));
}

TEST_CASE("uniform (Poisson) levels reproduce the quadrature mean r") {
  std::mt19937_64 rng(20240521);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const int n = 100000;
  Eigen::VectorXd levels(n);
  for (int i = 0; i < n; ++i) levels(i) = ud(rng);
  std::sort(levels.data(), levels.data() + n);
  const auto r = spacing_ratios(levels);
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  CHECK(std::abs(mean - poisson_mean_r()) < 0.002);
}

TEST_CASE("r histogram: point mass, density normalization, errors") {
  const std::vector<std::vector<double>> all_equal{{1.0, 1.0, 1.0, 1.0}};
  const RHistogram h = r_histogram(all_equal, 20);
  CHECK(h.samples == 4);
  CHECK(h.counts.back() == 4);
  for (std::size_t b = 0; b + 1 < h.counts.size(); ++b) CHECK(h.counts[b] == 0);
  CHECK(h.mean_r == doctest::Approx(1.0));

  CHECK_THROWS_AS(r_histogram({}, 20), validation_error);
  const std::vector<std::vector<double>> empty_runs{{}, {}};
  CHECK_THROWS_AS(r_histogram(empty_runs, 20), validation_error);
}

TEST_CASE("synthetic Poisson ensemble lands within 3 sigma of the surmise per bin") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  std::vector<std::vector<double>> ensemble;
  for (int run = 0; run < 60; ++run) {
    Eigen::VectorXd levels(400);
    for (Eigen::Index i = 0; i < levels.size(); ++i) levels(i) = ud(rng);
    std::sort(levels.data(), levels.data() + levels.size());
    ensemble.push_back(spacing_ratios(levels));
  }
  const RHistogram h = r_histogram(ensemble, 20);
  const double width = 1.0 / h.bins;
  const auto total = static_cast<double>(h.samples);
  for (std::size_t b = 0; b < h.centers.size(); ++b) {
    const double p = testing::simpson([&](double r) { return poisson_surmise(r); },
                                      h.centers[b] - 0.5 * width, h.centers[b] + 0.5 * width, 200);
    const double expected = p * total;
    const double sigma = std::sqrt(std::max(1.0, expected * (1.0 - p)));
    CHECK(std::abs(static_cast<double>(h.counts[b]) - expected) <= 3.0 * sigma + 1.0);
  }
  CHECK(h.stderr_r < 0.01);
}
