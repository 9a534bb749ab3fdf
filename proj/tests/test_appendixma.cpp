#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "perarfima/appendixma.hpp"
#include "perarfima/fracdiff.hpp"

using namespace perarfima;

TEST_CASE("constant order reduces to the standard integration coefficients") {
  const double d = 0.3;
  const MaTable rec = ma_recursion({d, d, d, d}, 30);
  const MaTable orc = ma_oracle({d, d, d, d}, 30);
  const auto psi = psi_coeffs(d, 30).coeffs;
  for (int t = 1; t <= 4; ++t) {
    for (long j = 0; j <= 30; ++j) {
      CHECK(rec.at(t, j) == doctest::Approx(psi[j]).epsilon(1e-12));
      CHECK(orc.at(t, j) == doctest::Approx(psi[j]).epsilon(1e-12));
    }
  }
  // leading terms d, d(d+1)/2, d(d+1)(d+2)/6
  CHECK(rec.at(1, 1) == doctest::Approx(d).epsilon(1e-14));
  CHECK(rec.at(1, 2) == doctest::Approx(d * (d + 1.0) / 2.0).epsilon(1e-14));
  CHECK(rec.at(1, 3) == doctest::Approx(d * (d + 1.0) * (d + 2.0) / 6.0).epsilon(1e-14));
}

TEST_CASE("zero orders give a trivial table") {
  const MaTable rec = ma_recursion({0.0, 0.0}, 12);
  for (int t = 1; t <= 2; ++t) {
    CHECK(rec.at(t, 0) == 1.0);
    for (long j = 1; j <= 12; ++j) CHECK(rec.at(t, j) == 0.0);
  }
}

TEST_CASE("first coefficient is the local order") {
  const std::vector<double> d{0.05, 0.45, 0.2};
  const MaTable rec = ma_recursion(d, 4);
  for (int t = 1; t <= 3; ++t) CHECK(rec.at(t, 1) == doctest::Approx(d[t - 1]).epsilon(1e-14));
}

TEST_CASE("recursion matches the operator-inversion oracle") {
  const std::vector<double> d{0.1, 0.3};
  const MaTable rec = ma_recursion(d, 30);
  const MaTable orc = ma_oracle(d, 30);
  for (int t = 1; t <= 2; ++t)
    for (long j = 0; j <= 30; ++j) CHECK(std::abs(rec.at(t, j) - orc.at(t, j)) < 1e-10);
}

TEST_CASE("composition sums: counts and values") {
  const std::vector<double> d{0.1, 0.3};
  CHECK(ma_composition_sum(d, 5, 1).composition_count == 16);
  for (long j = 1; j <= 12; ++j) CHECK(ma_composition_sum(d, j, 2).composition_count == (1L << (j - 1)));

  CHECK(ma_composition_sum(d, 1, 1).value == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(ma_composition_sum(d, 1, 2).value == doctest::Approx(0.3).epsilon(1e-14));

  const MaTable rec = ma_recursion(d, 10);
  for (int t = 1; t <= 2; ++t)
    CHECK(std::abs(ma_composition_sum(d, 10, t).value - rec.at(t, 10)) < 1e-10);

  CHECK_THROWS_AS(ma_composition_sum(d, 15, 1), std::invalid_argument);
}

TEST_CASE("distinct orders genuinely vary over the period") {
  const MaTable t = ma_recursion({0.4, 0.0}, 10);
  bool differs = false;
  for (long j = 1; j <= 10; ++j) differs = differs || std::abs(t.at(1, j) - t.at(2, j)) > 1e-6;
  CHECK(differs);
}

TEST_CASE("tables depend on the orders only through their periodic extension") {
  const MaTable two = ma_recursion({0.15, 0.35}, 25);
  const MaTable four = ma_recursion({0.15, 0.35, 0.15, 0.35}, 25);
  for (long j = 0; j <= 25; ++j) {
    CHECK(four.at(1, j) == doctest::Approx(two.at(1, j)).epsilon(1e-14));
    CHECK(four.at(3, j) == doctest::Approx(two.at(1, j)).epsilon(1e-14));
    CHECK(four.at(2, j) == doctest::Approx(two.at(2, j)).epsilon(1e-14));
    CHECK(four.at(4, j) == doctest::Approx(two.at(2, j)).epsilon(1e-14));
  }
}

TEST_CASE("triple agreement across periods and random orders") {
  std::mt19937 eng(31);
  std::uniform_real_distribution<double> u(0.0, 0.45);
  for (int S : {1, 2, 4}) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> d(S);
      for (double& x : d) x = u(eng);
      const MaTable rec = ma_recursion(d, 20);
      const MaTable orc = ma_oracle(d, 20);
      for (int t = 1; t <= S; ++t) {
        for (long j = 0; j <= 20; ++j) CHECK(std::abs(rec.at(t, j) - orc.at(t, j)) < 1e-10);
        for (long j = 1; j <= 8; ++j) CHECK(std::abs(rec.at(t, j) - ma_composition_sum(d, j, t).value) < 1e-10);
      }
    }
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(ma_recursion({}, 5), std::invalid_argument);
  CHECK_THROWS_AS(ma_recursion({0.1}, -1), std::invalid_argument);
  CHECK_THROWS_AS(ma_composition_sum({0.1}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ma_composition_sum({0.1}, 3, 2), std::invalid_argument);
}
