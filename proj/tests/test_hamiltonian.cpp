#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nhosc/eigensolver.hpp"
#include "nhosc/hamiltonian.hpp"
#include "oracles.hpp"

using namespace nhosc;
using doctest::Approx;

namespace {

const TransformParams kTableOne{3.0, 0.0, 1.0, 5.0};
const TransformParams kTableTwo{0.0, 3.0, 5.0, 1.0};

// Random parameters in the RealSpectrum regime.
TransformParams draw_real_regime(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0), amp(0.3, 3.0);
  for (;;) {
    TransformParams p{coef(rng), coef(rng), amp(rng), amp(rng)};
    if (std::abs(1.0 + p.l_coef * p.r_coef) < 0.2) continue;
    if (classify_regime(p).regime == Regime::RealSpectrum) return p;
  }
}

}  // namespace

TEST_CASE("HamiltonianSpec validates") {
  CHECK_THROWS_AS(HamiltonianSpec({1.0, -1.0, 1.0, 1.0}, {10, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(HamiltonianSpec(kTableOne, {1, 1.0, 1.0}), Error);
  CHECK(HamiltonianSpec({3.0, 4.0, 1.0, 1.0}, {10, 1.0, 1.0}).norm_c() == Approx(1.0 / 13.0));
}

TEST_CASE("build_hamiltonian") {
  SUBCASE("Hermitian oscillator p^2 + x^2") {
    const auto h = build_hamiltonian(HamiltonianSpec({0, 0, 1, 1}, {20, 1.0, 1.0}));
    CHECK(h.is_real());
    const auto spec = eigenvalues(h);
    for (std::size_t n = 0; n < 10; ++n) CHECK(spec.values[n].real() == Approx(2.0 * n + 1.0));
  }
  SUBCASE("table1 matrix is exactly real") {
    const auto h = build_hamiltonian(HamiltonianSpec(kTableOne, {100, 4.0, 1.0}));
    CHECK(h.is_real());
    CHECK(h.max_abs_imag() == 0.0);
    CHECK(h.entries().trace().imag() == 0.0);
  }
  SUBCASE("real for random real parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
      const TransformParams p{u(rng), u(rng), u(rng), u(rng)};
      if (1.0 + p.l_coef * p.r_coef == 0.0) continue;
      const auto h = build_hamiltonian(HamiltonianSpec(p, {12, std::abs(u(rng)) + 0.1, 1.0}));
      CHECK(h.max_abs_imag() <= 1e-14 * h.entries().frobenius_norm());
    }
  }
  SUBCASE("Hermitian limit is symmetric") {
    const auto h = build_hamiltonian(HamiltonianSpec({0, 0, 1.3, 0.7}, {15, 2.0, 1.0}));
    CHECK(h.entries() == h.entries().transpose());
  }
}

TEST_CASE("expansion a p^2 + b x^2 + i c (xp + px) reproduces H") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    const TransformParams p = draw_real_regime(rng);
    const BasisSpec b{14, 1.7, 1.0};
    const auto r = classify_regime(p);
    const auto x = position_matrix(b).entries();
    const auto mom = momentum_matrix(b).entries();
    const auto expanded = (mom * mom) * complex(r.coef_p2) + (x * x) * complex(r.coef_x2) +
                          (x * mom + mom * x) * complex(0.0, r.coef_cross);
    const auto h = build_hamiltonian(HamiltonianSpec(p, b)).entries();
    CHECK((h - expanded).max_abs() <= 1e-12 * h.max_abs());
  }
}

TEST_CASE("diagonal_expectation") {
  CHECK(diagonal_expectation(HamiltonianSpec({0, 0, 1, 1}, {10, 1.0, 1.0}), 0, 1.0) == Approx(1.0));

  const HamiltonianSpec t1(kTableOne, {100, 4.0, 1.0});
  CHECK(diagonal_expectation(t1, 0, 4.0) == Approx(4.0).epsilon(1e-14));

  SUBCASE("matches the matrix diagonal and the closed form") {
    const auto r = classify_regime(kTableOne);
    for (double w : {0.5, 2.0, 4.0, 7.5}) {
      const auto h = build_hamiltonian(t1.with_freq(w));
      for (std::size_t n : {0u, 3u, 10u, 50u}) {
        const double closed = r.coef_p2 * (n + 0.5) * w + r.coef_x2 * (n + 0.5) / w;
        CHECK(diagonal_expectation(t1, n, w) == Approx(h(n, n).real()).epsilon(1e-13));
        CHECK(diagonal_expectation(t1, n, w) == Approx(closed).epsilon(1e-13));
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(diagonal_expectation(t1, 100, 4.0), Error);
    CHECK_THROWS_AS(diagonal_expectation(t1, 0, 0.0), Error);
  }
}

TEST_CASE("variational_frequency") {
  const auto t1 = variational_frequency(kTableOne);
  REQUIRE(t1.defined());
  CHECK(*t1.w_v == 4.0);
  CHECK(t1.numerator == 16.0);
  CHECK(t1.denominator == 1.0);

  const auto t2 = variational_frequency(kTableTwo);
  REQUIRE(t2.defined());
  CHECK(*t2.w_v == 0.25);

  CHECK(*variational_frequency({0, 0, 1, 1}).w_v == 1.0);

  CHECK_FALSE(variational_frequency({2, 0, 1, 1}).defined());   // numerator < 0
  CHECK_FALSE(variational_frequency({0, 1, 1, 1}).defined());   // denominator == 0
}

TEST_CASE("numerical minimization of <n|H|n>_w recovers w_v") {
  std::mt19937_64 rng(3);
  std::vector<TransformParams> cases{kTableOne, kTableTwo};
  for (int k = 0; k < 8; ++k) cases.push_back(draw_real_regime(rng));
  for (const auto& p : cases) {
    const auto v = variational_frequency(p);
    REQUIRE(v.defined());
    const HamiltonianSpec spec(p, {40, 1.0, 1.0});
    std::vector<double> minimizers;
    for (std::size_t n : {0u, 3u, 10u}) {
      const double w = oracle::golden_section_minimize(
          [&](double trial) { return diagonal_expectation(spec, n, trial); }, 1e-3, 50.0);
      CHECK(std::abs(w - *v.w_v) <= 1e-6);
      minimizers.push_back(w);
    }
    CHECK(std::abs(minimizers[0] - minimizers[1]) <= 1e-6);
    CHECK(std::abs(minimizers[0] - minimizers[2]) <= 1e-6);
  }
}

TEST_CASE("classify_regime") {
  const auto t1 = classify_regime(kTableOne);
  CHECK(t1.coef_p2 == 1.0);
  CHECK(t1.coef_x2 == 16.0);
  CHECK(t1.coef_cross == 3.0);
  CHECK(t1.ab_plus_c2 == Approx(25.0));
  CHECK(t1.regime == Regime::RealSpectrum);

  const auto broken = classify_regime({2, 0, 1, 1});
  CHECK(broken.coef_x2 == -3.0);
  CHECK(broken.regime == Regime::Broken);

  const auto plain = classify_regime({0, 0, 1, 1});
  CHECK(plain.coef_p2 == 1.0);
  CHECK(plain.coef_x2 == 1.0);
  CHECK(plain.coef_cross == 0.0);
  CHECK(plain.regime == Regime::RealSpectrum);

  CHECK_THROWS_AS(classify_regime({1, -1, 1, 1}), Error);
}

TEST_CASE("identity ab + c^2 = (AB)^2 over random draws") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int checked = 0;
  while (checked < 1000) {
    const TransformParams p{u(rng), u(rng), u(rng), u(rng)};
    if (std::abs(1.0 + p.l_coef * p.r_coef) < 1e-3) continue;
    const auto r = classify_regime(p);
    const double ab2 = std::pow(p.a_coef * p.b_coef, 2);
    const double magnitude = std::abs(r.coef_p2 * r.coef_x2) + r.coef_cross * r.coef_cross + ab2;
    CHECK(std::abs(r.ab_plus_c2 - ab2) <= 1e-12 * magnitude);
    if (r.regime == Regime::RealSpectrum) {
      REQUIRE(variational_frequency(p).defined());
      CHECK(*variational_frequency(p).w_v == Approx(std::sqrt(r.coef_x2 / r.coef_p2)).epsilon(1e-13));
    }
    ++checked;
  }
}

TEST_CASE("analytic_level") {
  CHECK(analytic_level(kTableOne, 0) == 5.0);
  CHECK(analytic_level(kTableOne, 44) == 445.0);
  CHECK(analytic_level({0, 0, 1, 1}, 2) == 5.0);
  CHECK_THROWS_AS(analytic_level({2, 0, 1, 1}, 0), Error);
}

TEST_CASE("(2n+1)AB is validated by the Hermitian-equivalent oscillator") {
  // a p^2 + (b + c^2/a) x^2 is the similarity-equivalent Hermitian form.
  std::mt19937_64 rng(99);
  for (int k = 0; k < 10; ++k) {
    const TransformParams p = draw_real_regime(rng);
    const auto r = classify_regime(p);
    const double natural = std::sqrt((r.coef_x2 + r.coef_cross * r.coef_cross / r.coef_p2) / r.coef_p2);
    // Deliberately mismatched basis so the matrix is not already diagonal.
    const BasisSpec b{40, 1.5 * natural, 1.0};
    const auto x = position_matrix(b).entries();
    const auto mom = momentum_matrix(b).entries();
    const auto herm = (mom * mom) * complex(r.coef_p2) +
                      (x * x) * complex(r.coef_x2 + r.coef_cross * r.coef_cross / r.coef_p2);
    Eigen::MatrixXd m(40, 40);
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j) m(i, j) = herm(i, j).real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    for (int n = 0; n <= 10; ++n) {
      CHECK(std::abs(es.eigenvalues()(n) - analytic_level(p, n)) <= 1e-8 * analytic_level(p, n));
    }
  }
}
