#include <cmath>

#include "doctest.h"
#include "nhosc/operator_basis.hpp"
#include "oracles.hpp"

using namespace nhosc;
using doctest::Approx;

TEST_CASE("ladder_weights") {
  const auto three = ladder_weights(3);
  REQUIRE(three.size() == 2);
  CHECK(three[0] == 1.0);
  CHECK(three[1] == Approx(1.41421356).epsilon(1e-9));

  CHECK(ladder_weights(2) == std::vector<double>{1.0});

  const auto hundred = ladder_weights(100);
  REQUIRE(hundred.size() == 99);
  CHECK(hundred.back() == Approx(9.94987437).epsilon(1e-9));

  CHECK_THROWS_AS(ladder_weights(1), Error);
  CHECK_THROWS_AS(ladder_weights(0), Error);
}

TEST_CASE("basis validation") {
  CHECK_THROWS_AS(position_matrix({1, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(position_matrix({4, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(position_matrix({4, -1.0, 1.0}), Error);
  CHECK_THROWS_AS(momentum_matrix({4, 1.0, 0.0}), Error);
}

TEST_CASE("position_matrix entries") {
  const auto x2 = position_matrix({2, 1.0, 1.0});
  CHECK(x2.is_real());
  CHECK(x2(0, 0) == complex(0.0));
  CHECK(x2(0, 1).real() == Approx(0.70710678).epsilon(1e-9));
  CHECK(x2(1, 0).real() == Approx(0.70710678).epsilon(1e-9));

  const auto x2w4 = position_matrix({2, 4.0, 1.0});
  CHECK(x2w4(0, 1).real() == Approx(0.35355339).epsilon(1e-9));

  const auto x3 = position_matrix({3, 1.0, 1.0});
  CHECK(x3(0, 1).real() == Approx(0.70710678).epsilon(1e-9));
  CHECK(x3(1, 2).real() == Approx(1.0).epsilon(1e-15));
  CHECK(x3(0, 2) == complex(0.0));
  CHECK(x3.entries() == x3.entries().transpose());
}

TEST_CASE("momentum_matrix entries") {
  const auto p2 = momentum_matrix({2, 1.0, 1.0});
  CHECK_FALSE(p2.is_real());
  CHECK(p2(0, 1).real() == 0.0);
  CHECK(p2(0, 1).imag() == Approx(-0.70710678).epsilon(1e-9));
  CHECK(p2(1, 0).imag() == Approx(0.70710678).epsilon(1e-9));

  const auto p2w4 = momentum_matrix({2, 4.0, 1.0});
  CHECK(p2w4(1, 0).imag() == Approx(1.41421356).epsilon(1e-9));

  for (double w : {0.25, 1.0, 4.0}) {
    const auto p = momentum_matrix({7, w, 1.5});
    const auto& e = p.entries();
    CHECK(e.transpose() == e * complex(-1.0));
    // conj(transpose(p)) == p
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) CHECK(std::conj(e(j, i)) == e(i, j));
  }
}

TEST_CASE("transformed operators") {
  const BasisSpec b2{2, 4.0, 1.0};
  SUBCASE("L = 0 and R = 0 are identities") {
    CHECK(transformed_momentum(b2, {0.0, 0.0, 1.0, 1.0}).entries() == momentum_matrix(b2).entries());
    CHECK(transformed_position(b2, {0.0, 0.0, 1.0, 1.0}).entries() == position_matrix(b2).entries());
  }
  SUBCASE("y = p + iLx") {
    const auto y = transformed_momentum(b2, {3.0, 0.0, 1.0, 1.0});
    CHECK(y(1, 0).real() == 0.0);
    CHECK(y(1, 0).imag() == Approx(std::sqrt(2.0) + 3.0 / std::sqrt(8.0)).epsilon(1e-14));
  }
  SUBCASE("z = x + iRp") {
    const auto z = transformed_position({2, 1.0, 1.0}, {0.0, 3.0, 1.0, 1.0});
    CHECK(z.is_real());
    CHECK(z(0, 1).real() == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(z(1, 0).real() == Approx(-std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("realness pattern for arbitrary real coefficients") {
    for (double c : {-2.5, 0.3, 3.0, 7.0}) {
      const BasisSpec b{9, 0.7, 1.2};
      const auto y = transformed_momentum(b, {c, 0.0, 1.0, 1.0});
      const auto z = transformed_position(b, {0.0, c, 1.0, 1.0});
      CHECK(z.is_real());
      for (const complex& v : y.entries().data()) CHECK(v.real() == 0.0);
    }
  }
}

TEST_CASE("commutator basics") {
  const BasisSpec b{5, 1.0, 1.0};
  const auto x = position_matrix(b);
  const OperatorMatrix id(ComplexMatrix::identity(5));
  CHECK(commutator(id, x).entries().max_abs() == 0.0);
  CHECK_THROWS_AS(commutator(x, position_matrix({4, 1.0, 1.0})), Error);

  // [x, p] at N = 3 is i diag(1, 1, -2).
  const auto xp = commutator(position_matrix({3, 1.0, 1.0}), momentum_matrix({3, 1.0, 1.0}));
  const complex expected[3] = {{0, 1}, {0, 1}, {0, -2}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const complex want = i == j ? expected[i] : complex(0.0);
      CHECK(std::abs(xp(i, j) - want) < 1e-14);
    }
  }
}

TEST_CASE("truncated [x, p] closed form i (I - N E_last)") {
  for (std::size_t n = 2; n <= 10; ++n) {
    const BasisSpec b{n, 1.0, 1.0};
    const auto x = position_matrix(b).entries();
    const auto p = momentum_matrix(b).entries();
    const auto xp = oracle::naive_multiply(x, p);
    const auto px = oracle::naive_multiply(p, x);
    const auto lib = commutator(position_matrix(b), momentum_matrix(b));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        complex want = 0.0;
        if (i == j) want = complex(0.0, i + 1 == n ? 1.0 - static_cast<double>(n) : 1.0);
        CHECK(std::abs(xp[i * n + j] - px[i * n + j] - want) < 1e-13);
        CHECK(std::abs(lib(i, j) - want) < 1e-13);
      }
    }
  }
}

TEST_CASE("matrix products agree with triple-loop oracle for N <= 6") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const BasisSpec b{n, 0.8, 1.3};
    const TransformParams prm{1.7, -0.6, 1.1, 2.3};
    const auto y = transformed_momentum(b, prm).entries();
    const auto z = transformed_position(b, prm).entries();
    const auto lib = z * y;
    const auto ref = oracle::naive_multiply(z, y);
    for (std::size_t k = 0; k < n * n; ++k) CHECK(std::abs(lib.data()[k] - ref[k]) < 1e-13);
  }
}

TEST_CASE("normalized commutator check") {
  SUBCASE("L = 3, R = 4, N = 100") {
    const auto d = normalized_commutator_check({100, 1.0, 1.0}, {3.0, 4.0, 1.0, 1.0});
    CHECK(d.n_dim == 100);
    CHECK(d.max_diag_deviation <= 1e-12);
    CHECK(d.max_offdiag <= 1e-12);
    CHECK(std::abs(d.last_diagonal - complex(-99.0)) <= 1e-10);
  }
  SUBCASE("L = R = 0 reduces to [x, p] / i") {
    const auto d = normalized_commutator_check({12, 1.0, 1.0}, {0.0, 0.0, 1.0, 1.0});
    CHECK(d.max_diag_deviation <= 1e-13);
    CHECK(d.last_diagonal.real() == Approx(-11.0));
  }
  SUBCASE("singular normalization") {
    CHECK_THROWS_AS(normalized_commutator_check({10, 1.0, 1.0}, {1.0, -1.0, 1.0, 1.0}), Error);
    try {
      normalized_commutator_check({10, 1.0, 1.0}, {2.0, -0.5, 1.0, 1.0});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularNormalization);
    }
  }
}

TEST_CASE("commutator defect is independent of w; scales as s^2") {
  const TransformParams prm{3.0, 4.0, 1.0, 1.0};
  const auto ref = normalized_commutator_check({30, 1.0, 1.0}, prm);
  for (double w : {0.25, 1.0, 4.0}) {
    for (double s : {1.0, 2.0}) {
      const auto d = normalized_commutator_check({30, w, s}, prm);
      const double s2 = s * s;
      // [x, p] = i s^2 (I - N E_last); the normalized check divides by i only.
      const auto scaled = commutator(transformed_position({30, w, s}, prm),
                                     transformed_momentum({30, w, s}, prm));
      double dev = 0.0;
      for (std::size_t k = 0; k + 1 < 30; ++k)
        dev = std::max(dev, std::abs(scaled(k, k) / complex(0.0, 13.0 * s2) - 1.0));
      CHECK(dev <= 1e-12);
      CHECK(std::abs(d.last_diagonal / s2 - ref.last_diagonal) <= 1e-10);
      CHECK(d.max_offdiag <= 1e-12 * s2);
    }
  }
}

TEST_CASE("bilinearity: zy - yz = (1 + LR)(xp - px)") {
  const BasisSpec b{15, 1.3, 1.0};
  const auto xp = commutator(position_matrix(b), momentum_matrix(b)).entries();
  for (const auto& [l, r] : {std::pair{3.0, 4.0}, {-0.4, 2.0}, {0.0, 5.0}, {2.5, 0.0}}) {
    const TransformParams prm{l, r, 1.0, 1.0};
    const auto zy = commutator(transformed_position(b, prm), transformed_momentum(b, prm)).entries();
    const auto want = xp * complex(1.0 + l * r);
    for (std::size_t k = 0; k < zy.data().size(); ++k) CHECK(std::abs(zy.data()[k] - want.data()[k]) < 1e-12);
  }
}
