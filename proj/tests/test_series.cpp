#include <gtest/gtest.h>

#include <cmath>

#include "belyi/series.hpp"
#include "test_util.hpp"

using namespace belyi;

namespace {

using Series = std::vector<mpz_class>;

Series mul(const Series& a, const Series& b, std::size_t K) {
  Series c(K, 0);
  for (std::size_t i = 0; i < K && i < a.size(); ++i)
    for (std::size_t j = 0; i + j < K && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// coefficients of q j(q) = E4^3 / prod (1 - q^n)^24, from the Eisenstein
// series E4 = 1 + 240 sum sigma_3(n) q^n; entry k is the q^(k-1) coefficient of j
Series j_oracle(std::size_t K) {
  Series e4(K, 0);
  e4[0] = 1;
  for (std::size_t n = 1; n < K; ++n) {
    mpz_class s3 = 0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) s3 += mpz_class(static_cast<unsigned long>(d * d * d));
    e4[n] = 240 * s3;
  }
  Series num = mul(mul(e4, e4, K), e4, K);
  // 1 / prod (1 - q^n)^24 = prod (1 + q^n + q^2n + ...)^24
  Series inv(K, 0);
  inv[0] = 1;
  for (std::size_t n = 1; n < K; ++n) {
    Series geo(K, 0);
    for (std::size_t k = 0; k < K; k += n) geo[k] = 1;
    for (int r = 0; r < 24; ++r) inv = mul(inv, geo, K);
  }
  return mul(num, inv, K);
}

TruncatedSeries trivial_series(int N, long digits) {
  Dessin d = parse_dessin("n=1; a=(); b=()");
  FundamentalDomain dom = coset_domain(d);
  return solve_modular_function(dom, passport(d), N, 3, digits);
}

}  // namespace

TEST(EisensteinOracle, KnownCoefficients) {
  Series j = j_oracle(5);
  EXPECT_EQ(j[0], 1);
  EXPECT_EQ(j[1], 744);
  EXPECT_EQ(j[2], 196884);
  EXPECT_EQ(j[3], 21493760);
  EXPECT_EQ(j[4], mpz_class("864299970"));
}

// the oracle evaluated at q = e^{-4 pi}, i.e. tau = 2i
TEST(EisensteinOracle, ValueAtTwoI) {
  Series j = j_oracle(12);
  double q = std::exp(-4 * M_PI), sum = 0, qk = 1 / q;
  for (const auto& c : j) {
    sum += c.get_d() * qk;
    qk *= q;
  }
  EXPECT_NEAR(sum, 287496.0, 1e-6);
}

TEST(Series, TrivialDessinReproducesJ) {
  TruncatedSeries s = trivial_series(24, 60);
  Series j = j_oracle(8);
  for (int k = -1; k <= 5; ++k) {
    double want = j[static_cast<std::size_t>(k + 1)].get_d() / 1728.0;
    double got = s.c(k).re().to_double();
    EXPECT_NEAR(got, want, 1e-10 * std::max(1.0, std::fabs(want))) << "c_" << k;
    EXPECT_LT(std::fabs(s.c(k).im().to_double()), 1e-10 * std::max(1.0, std::fabs(want)));
  }
}

TEST(Series, TrivialDessinValueAtTwoI) {
  TruncatedSeries s = trivial_series(24, 60);
  Bits prec = digits_to_bits(60);
  BigComplex tau(BigReal::zero(prec), BigReal(2.0, prec));
  bool outside = true;
  BigComplex v = evaluate_series(s, tau, &outside);
  EXPECT_FALSE(outside);
  EXPECT_NEAR(v.re().to_double(), 287496.0 / 1728.0, 1e-8);
  EXPECT_NEAR(v.im().to_double(), 0.0, 1e-8);
}

TEST(Series, ZetaIsPeriodic) {
  Bits prec = digits_to_bits(40);
  BigComplex tau(BigReal(0.3, prec), BigReal(0.8, prec));
  for (int m : {1, 5, 7}) {
    BigComplex shifted = tau + BigComplex(BigReal(static_cast<long>(m), prec), BigReal::zero(prec));
    EXPECT_LT(abs(zeta_of(tau, m) - zeta_of(shifted, m)).to_double(), 1e-35);
  }
}

TEST(Series, SamplesArePairedInsideTheDisc) {
  Dessin d = fixtures::load_fixture("9.2");
  FundamentalDomain dom = coset_domain(d);
  Bits prec = digits_to_bits(40);
  auto pts = sample_arcs(dom, 3, prec);
  ASSERT_FALSE(pts.empty());
  for (const auto& s : pts) {
    EXPECT_LT(abs(zeta_of(s.tau, dom.width)).to_double(), 1.0);
    EXPECT_LT(abs(s.M.apply(s.tau) - s.partner).to_double(), 1e-30);
    EXPECT_TRUE(membership_check(s.M, d));
  }
}

TEST(Series, MorePointsThanUnknowns) {
  Dessin d = fixtures::load_fixture("12.13");
  FundamentalDomain dom = coset_domain(d);
  for (int N : {48, 96, 192}) {
    int k = effective_points(dom, N, 3);
    auto pts = sample_arcs(dom, k, digits_to_bits(30));
    EXPECT_GE(static_cast<int>(pts.size()), 2 * (N + 2));
  }
}

// the modular function is invariant under the pairings, so the pasting
// residual at held-out points shrinks as the truncation grows
TEST(Series, PastingResidualShrinks) {
  Dessin d = fixtures::load_fixture("6.1");
  FundamentalDomain dom = coset_domain(d);
  double prev = 1e300;
  for (int N : {24, 48, 96}) {
    TruncatedSeries s = solve_modular_function(dom, passport(d), N, 3, 80);
    double r = pasting_residual(dom, s, 3).to_double();
    EXPECT_LT(r, prev) << N;
    prev = r;
  }
  EXPECT_LT(prev, 1e-8);
}

TEST(Series, VertexClassesMatchThePassport) {
  Dessin d = fixtures::load_fixture("6.1");
  FundamentalDomain dom = coset_domain(d);
  TruncatedSeries s = solve_modular_function(dom, passport(d), 48, 3, 80);
  VertexEstimates est = vertex_estimates(dom, s);
  Passport p = passport(d);
  EXPECT_EQ(static_cast<int>(est.black.size()), p.p3() + p.p1());
  EXPECT_EQ(static_cast<int>(est.white.size()), p.q2() + p.q1());
  EXPECT_LT(est.max_spread, 1e-6);
}
