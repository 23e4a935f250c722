#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "betatail/moments.hpp"

namespace {

using betatail::ExactBeta;
using betatail::make_rational;
using betatail::Rational;
using betatail::RealBeta;
namespace mom = betatail::moments;

ExactBeta q(long a_num, long a_den, long b_num, long b_den) {
  return betatail::make_beta(make_rational(a_num, a_den), make_rational(b_num, b_den));
}
ExactBeta q(long a, long b) { return q(a, 1, b, 1); }

std::vector<ExactBeta> grid() {
  return {q(1, 1), q(2, 3), q(1, 2, 1, 2), q(2, 98), q(7, 1, 11, 3), q(98, 2), q(5, 5), q(3, 10, 4, 1)};
}

TEST(Rational, ToDoubleRoundsToNearest) {
  EXPECT_EQ(betatail::to_double(make_rational(1, 25)), 0.04);
  EXPECT_EQ(betatail::to_double(make_rational(-2, 875)), -2.0 / 875.0);
  EXPECT_EQ(betatail::to_double(make_rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(betatail::to_double(Rational(0)), 0.0);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> n(-1000000007, 1000000007);
  std::uniform_int_distribution<long> d(1, 999999937);
  for (int i = 0; i < 10000; ++i) {
    const long a = n(rng);
    const long b = d(rng);
    // IEEE division of exactly representable operands is correctly rounded.
    EXPECT_EQ(betatail::to_double(make_rational(a, b)), static_cast<double>(a) / static_cast<double>(b));
  }
  // Round-trips any double exactly.
  for (double x : {0.1, 1e-300, 123456.789, 5e-324 * 1e10}) EXPECT_EQ(betatail::to_double(Rational(x)), x);
}

TEST(BetaParams, RejectsNonPositiveShapes) {
  EXPECT_THROW(betatail::make_beta(Rational(0), Rational(1)), std::domain_error);
  EXPECT_THROW(betatail::make_beta(1.0, -2.0), std::domain_error);
  EXPECT_EQ(betatail::reflect(q(2, 3)).alpha, Rational(3));
}

TEST(RawMoment, Examples) {
  EXPECT_EQ(mom::raw_moment(q(2, 3), 0), Rational(1));
  EXPECT_EQ(mom::raw_moment(q(2, 3), 1), make_rational(2, 5));
  EXPECT_EQ(mom::raw_moment(q(2, 3), 3), make_rational(4, 35));
}

TEST(CentralMomentsRecursive, Examples) {
  const auto table = mom::central_moments_recursive(q(2, 3), 3);
  EXPECT_EQ(table.central(0), Rational(1));
  EXPECT_EQ(table.central(1), Rational(0));
  EXPECT_EQ(table.central(2), make_rational(1, 25));
  EXPECT_EQ(table.central(3), make_rational(2, 875));
  const auto symmetric = mom::central_moments_recursive(q(7, 3, 7, 3), 15);
  for (std::uint32_t d = 1; d <= 15; d += 2) EXPECT_EQ(symmetric.central(d), Rational(0));
}

TEST(CentralMomentsRecursive, OrderCap) {
  EXPECT_THROW(mom::central_moments_recursive(q(2, 3), 10001), std::invalid_argument);
  EXPECT_EQ(mom::central_moments_recursive(q(2, 3), 0).max_order(), 0u);
}

TEST(CentralMomentsRecursive, NormalizedTable) {
  const auto table = mom::central_moments_recursive(q(7, 1, 11, 3), 20);
  for (std::uint32_t d = 0; d <= 20; ++d) {
    EXPECT_EQ(table.normalized(d) * betatail::factorial(d), table.central(d));
  }
}

TEST(Oracles, Examples) {
  EXPECT_EQ(mom::central_moment_binomial_oracle(q(2, 3), 2), make_rational(1, 25));
  EXPECT_EQ(mom::central_moment_binomial_oracle(q(9, 4), 1), Rational(0));
  EXPECT_EQ(mom::central_moment_binomial_oracle(q(1, 1), 2), make_rational(1, 12));
  EXPECT_EQ(mom::central_moment_hypergeom_oracle(q(2, 3), 2), make_rational(1, 25));
  EXPECT_EQ(mom::central_moment_hypergeom_oracle(q(9, 4), 0), Rational(1));
  EXPECT_LT(mom::central_moment_hypergeom_oracle(q(3, 1), 3), 0);
}

TEST(Oracles, ThreeRoutesAgreeExactly) {
  for (const auto& p : grid()) {
    const auto table = mom::central_moments_recursive(p, 20);
    for (std::uint32_t d = 0; d <= 20; ++d) {
      EXPECT_EQ(table.central(d), mom::central_moment_binomial_oracle(p, d)) << d;
      EXPECT_EQ(table.central(d), mom::central_moment_hypergeom_oracle(p, d)) << d;
    }
  }
}

TEST(Properties, SignsAndBoundedness) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> num(1, 60);
  std::uniform_int_distribution<long> den(1, 7);
  for (int i = 0; i < 60; ++i) {
    const auto p = q(num(rng), den(rng), num(rng), den(rng));
    const int expected = betatail::sign(Rational(p.beta - p.alpha));
    const auto table = mom::central_moments_recursive(p, 21);
    for (std::uint32_t d = 3; d <= 21; d += 2) EXPECT_EQ(betatail::sign(table.central(d)), expected);
    for (std::uint32_t d = 0; d <= 21; d += 2) EXPECT_GE(table.central(d), 0);
    for (const auto& mu : table.central()) EXPECT_LE(abs(mu), 1);
  }
}

TEST(Properties, ScaledRecursion) {
  for (const auto& p : grid()) {
    const auto table = mom::central_moments_recursive(p, 20);
    const Rational s = p.alpha + p.beta;
    for (std::uint32_t d = 2; d <= 20; ++d) {
      const Rational lhs = d * (s + d - 1) * table.normalized(d);
      const Rational rhs = (d - 1) * (p.beta - p.alpha) / s * table.normalized(d - 1) +
                           p.alpha * p.beta / (s * s) * table.normalized(d - 2);
      EXPECT_EQ(lhs, rhs) << d;
    }
  }
}

// Rearranged as p(d) mu_d = q(d) mu_{d-1} + r(d) mu_{d-2}:
//   p(d) = (a+b)^2 (a+b+d-1), q(d) = (d-1)(b-a)(a+b), r(d) = (d-1) a b.
// Each coefficient must have constant first differences in d and reproduce
// the table.
TEST(Properties, PRecursiveForm) {
  for (const auto& p : grid()) {
    const Rational s = p.alpha + p.beta;
    auto pc = [&](std::uint32_t d) { return Rational(s * s * (s + d - 1)); };
    auto qc = [&](std::uint32_t d) { return Rational((d - 1) * (p.beta - p.alpha) * s); };
    auto rc = [&](std::uint32_t d) { return Rational((d - 1) * p.alpha * p.beta); };
    const auto table = mom::central_moments_recursive(p, 20);
    for (std::uint32_t d = 2; d <= 19; ++d) {
      EXPECT_EQ(pc(d) * table.central(d), qc(d) * table.central(d - 1) + rc(d) * table.central(d - 2));
      if (d + 2 <= 20) {
        EXPECT_EQ(pc(d + 1) - pc(d), pc(d + 2) - pc(d + 1));
        EXPECT_EQ(qc(d + 1) - qc(d), qc(d + 2) - qc(d + 1));
        EXPECT_EQ(rc(d + 1) - rc(d), rc(d + 2) - rc(d + 1));
      }
    }
  }
}

TEST(Properties, VarianceAndScaleIdentities) {
  for (const auto& p : grid()) {
    const auto table = mom::central_moments_recursive(p, 3);
    const Rational s = p.alpha + p.beta;
    EXPECT_EQ(table.central(2), p.alpha * p.beta / (s * s * (s + 1)));
    EXPECT_EQ(Rational(table.central(3) / table.central(2)), 2 * (p.beta - p.alpha) / (s * (s + 2)));
  }
}

TEST(StandardizedMoment, TableRows) {
  EXPECT_NEAR(mom::standardized_moment(q(4, 4), 3), 0.0, 1e-15);
  EXPECT_NEAR(mom::standardized_moment(q(2, 3), 3), 2.0 / 7.0, 1e-12 * 2.0 / 7.0);
  EXPECT_NEAR(mom::standardized_moment(q(1, 1), 4), 9.0 / 5.0, 1e-12 * 9.0 / 5.0);
  // Fifth standardized moment row at alpha = 2, beta = 5.
  const double a = 2, b = 5, s = a + b;
  const double row5 = 4 * (b - a) * std::pow(s + 1, 1.5) * (3 * a * b * (s + 2) + 2 * a * b * (s + 3) + 6 * (a - b) * (a - b)) /
                      (std::pow(a * b, 1.5) * (s + 2) * (s + 3) * (s + 4));
  EXPECT_NEAR(mom::standardized_moment(q(2, 5), 5), row5, 1e-12 * row5);
  EXPECT_THROW(mom::standardized_moment(q(2, 5), 1), std::invalid_argument);
}

TEST(RealPath, TracksExactPath) {
  for (const auto& p : grid()) {
    const auto exact = mom::central_moments_recursive(p, 40);
    const auto real = mom::central_moments_recursive(betatail::to_real(p), 40);
    for (std::uint32_t d = 0; d <= 40; ++d) {
      const double want = betatail::to_double(exact.central(d));
      EXPECT_NEAR(real.central(d), want, 1e-13 * std::abs(want) + 1e-300) << d;
    }
  }
}

}  // namespace
