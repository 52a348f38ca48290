#include <gtest/gtest.h>

#include <random>

#include "belyi/errors.hpp"
#include "belyi/newton.hpp"
#include "test_util.hpp"

using namespace belyi;

namespace {

BigComplex q(long num, long den, Bits prec) {
  return BigComplex(BigReal(mpq_class(num, den), prec), BigReal::zero(prec));
}

// a normalized solution for the passport (3^2|2^2 1^2|5 1):
// (z^2 - 5/9)^3 - (z^2 - z + 1/9)^2 (z^2 + 2z + 10/9) = 2/9 (z - 5/6)
NumericAnsatz sextic(long digits) {
  Bits prec = digits_to_bits(digits);
  NumericAnsatz a;
  a.P3 = {q(-5, 9, prec), q(0, 1, prec), q(1, 1, prec)};
  a.P1 = {q(1, 1, prec)};
  a.Q2 = {q(1, 9, prec), q(-1, 1, prec), q(1, 1, prec)};
  a.Q1 = {q(10, 9, prec), q(2, 1, prec), q(1, 1, prec)};
  a.R = {q(-5, 6, prec), q(1, 1, prec)};
  a.c = q(2, 9, prec);
  return a;
}

const Passport kSextic = Passport::parse("(3^2|2^2 1^2|5 1)");

void perturb(NumericAnsatz& a, const UnknownLayout& L, double eps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-eps, eps);
  for (const auto& s : L.slots) a.poly(s.poly)[static_cast<std::size_t>(s.index)] += BigComplex(u(rng), u(rng));
  a.c += BigComplex(u(rng), u(rng));
}

}  // namespace

TEST(Polynomials, MultiplyAndRoots) {
  Bits prec = digits_to_bits(30);
  CPoly p = poly_from_roots({q(1, 1, prec), q(-2, 1, prec)}, prec);  // z^2 + z - 2
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[0].re().to_double(), -2, 1e-25);
  EXPECT_NEAR(p[1].re().to_double(), 1, 1e-25);
  CPoly sq = poly_mul(p, p);
  EXPECT_EQ(sq.size(), 5u);
  EXPECT_NEAR(sq[0].re().to_double(), 4, 1e-25);
  CPoly zero = poly_sub(sq, sq);
  for (const auto& c : zero) EXPECT_TRUE(c.is_zero());
}

TEST(Layout, SquareForEveryFixture) {
  for (const auto& label : fixtures::orbit_labels()) {
    Passport p = passport(fixtures::load_fixture(label));
    UnknownLayout L = unknown_layout(p);
    EXPECT_EQ(L.unknowns(), L.n) << label;
    EXPECT_EQ(L.n, p.n()) << label;
  }
}

TEST(Layout, RejectsNonTreePassport) {
  EXPECT_THROW(unknown_layout(Passport::parse("(3^2|2^3|3 3)")), InvalidDessin);
}

TEST(Residual, VanishesOnAnExactSolution) {
  NumericAnsatz a = sextic(60);
  for (const auto& f : residual_vector(a, 6)) EXPECT_LT(abs(f).to_double(), 1e-55);
  EXPECT_LT(relative_residual(a, 6).to_double(), 1e-55);
}

TEST(Residual, DetectsAWrongConstant) {
  NumericAnsatz a = sextic(60);
  a.c = q(1, 4, digits_to_bits(60));
  EXPECT_GT(relative_residual(a, 6).to_double(), 1e-3);
}

TEST(Jacobian, MatchesFiniteDifferences) {
  const long digits = 60;
  std::mt19937_64 rng(5);
  NumericAnsatz a = sextic(digits);
  UnknownLayout L = unknown_layout(kSextic);
  perturb(a, L, 0.1, rng);  // away from the solution, so no term is special
  ComplexMatrix J = jacobian(a, L);
  ASSERT_EQ(J.rows(), static_cast<std::size_t>(L.n));
  ASSERT_EQ(J.cols(), static_cast<std::size_t>(L.unknowns()));
  const BigReal h = pow10(-20, a.prec());
  auto f0 = residual_vector(a, L.n);
  for (std::size_t col = 0; col < J.cols(); ++col) {
    NumericAnsatz b = a;
    if (col < L.slots.size())
      b.poly(L.slots[col].poly)[static_cast<std::size_t>(L.slots[col].index)] += BigComplex(h);
    else
      b.c += BigComplex(h);
    auto f1 = residual_vector(b, L.n);
    for (std::size_t row = 0; row < J.rows(); ++row) {
      BigComplex fd = (f1[row] - f0[row]) / h;
      EXPECT_LT(abs(fd - J(row, col)).to_double(), 1e-15) << row << "," << col;
    }
  }
}

TEST(Newton, ConvergesFromAPerturbedStart) {
  std::mt19937_64 rng(9);
  NumericAnsatz exact = sextic(200);
  NumericAnsatz start = sextic(40);
  perturb(start, unknown_layout(kSextic), 1e-6, rng);
  NewtonConfig cfg;
  cfg.start_digits = 40;
  cfg.target_digits = 150;
  NewtonResult r = newton_solve(start, kSextic, cfg);
  EXPECT_LT(r.log10_residual, -150);
  EXPECT_GE(r.digits, 150);
  for (int k = 0; k < 5; ++k)
    for (std::size_t i = 0; i < exact.poly(k).size(); ++i)
      EXPECT_LT(abs(r.ansatz.poly(k)[i] - exact.poly(k)[i]).log10_abs(), -140);
}

TEST(Newton, ExactStartNeedsNoSteps) {
  NewtonConfig cfg;
  cfg.start_digits = 60;
  cfg.target_digits = 60;
  NewtonResult r = newton_solve(sextic(60), kSextic, cfg);
  EXPECT_TRUE(r.log.empty());
}

TEST(Newton, LogIsMonotoneWhenUndamped) {
  std::mt19937_64 rng(13);
  NumericAnsatz start = sextic(40);
  perturb(start, unknown_layout(kSextic), 1e-4, rng);
  NewtonConfig cfg;
  cfg.start_digits = 40;
  cfg.target_digits = 200;
  NewtonResult r = newton_solve(start, kSextic, cfg);
  ASSERT_GE(r.log.size(), 3u);
  for (std::size_t i = 1; i < r.log.size(); ++i) {
    EXPECT_LT(r.log[i].log10_residual, r.log[i - 1].log10_residual);
    EXPECT_GE(r.log[i].digits, r.log[i - 1].digits);
  }
}

TEST(Newton, GivesUpOnANonsenseStart) {
  NumericAnsatz a = sextic(30);
  a.c = BigComplex(0.0);
  for (auto& x : a.Q1) x = BigComplex(1e6, 1e6);
  NewtonConfig cfg;
  cfg.start_digits = 30;
  cfg.target_digits = 60;
  cfg.max_iterations = 5;
  EXPECT_THROW(newton_solve(a, kSextic, cfg), NewtonFailure);
}
