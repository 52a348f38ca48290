#include <gtest/gtest.h>

#include <random>

#include "belyi/errors.hpp"
#include "belyi/field.hpp"

using namespace belyi;

namespace {

FieldPtr make_field(std::vector<long> minpoly) {
  std::vector<mpz_class> m(minpoly.begin(), minpoly.end());
  return std::make_shared<const NumberField>(m);
}

FieldElement random_element(const FieldPtr& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  std::vector<mpq_class> c;
  for (int i = 0; i < K->degree(); ++i) {
    mpq_class x(num(rng), den(rng));
    x.canonicalize();
    c.push_back(x);
  }
  return FieldElement(K, c);
}

FieldPolynomial poly(const FieldPtr& K, std::vector<long> coeffs) {
  std::vector<FieldElement> c;
  for (long x : coeffs) c.emplace_back(K, mpq_class(x));
  return FieldPolynomial(K, c);
}

}  // namespace

class FieldAxioms : public ::testing::TestWithParam<std::vector<long>> {};

TEST_P(FieldAxioms, RingLawsAndInverses) {
  FieldPtr K = make_field(GetParam());
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    FieldElement x = random_element(K, rng), y = random_element(K, rng), z = random_element(K, rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ(x - x, FieldElement(K, mpq_class(0)));
    if (!x.is_zero()) {
      EXPECT_EQ(x * x.inverse(), FieldElement(K, mpq_class(1)));
    }
  }
}

TEST_P(FieldAxioms, GeneratorSatisfiesTheMinimalPolynomial) {
  FieldPtr K = make_field(GetParam());
  FieldElement a = FieldElement::generator(K), acc(K, mpq_class(0));
  for (std::size_t k = K->minpoly().size(); k-- > 0;) acc = acc * a + FieldElement(K, mpq_class(K->minpoly()[k]));
  EXPECT_TRUE(acc.is_zero());
}

// x^2 + 3, x^2 - x + 6, x^3 - 3x + 1, x^4 + 13x^2 + 13
INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::vector<long>{3, 0, 1}, std::vector<long>{6, -1, 1},
                                           std::vector<long>{1, -3, 0, 1}, std::vector<long>{13, 0, 13, 0, 1}));

TEST(NumberField, EmbeddingIsARoot) {
  auto K = std::make_shared<const NumberField>(std::vector<mpz_class>{-2, 0, 1}, BigComplex(1.41, 0.0));
  BigComplex r = K->embedding(digits_to_bits(80));
  EXPECT_LT(abs(r * r - BigComplex(2.0)).log10_abs(), -75);
  EXPECT_EQ(K->to_string(), "a^2 - 2");
  EXPECT_EQ(NumberField::rationals()->degree(), 1);
}

TEST(FieldElement, ComplexValueFollowsTheEmbedding) {
  auto K = std::make_shared<const NumberField>(std::vector<mpz_class>{1, -1, 1}, BigComplex(0.5, 0.8));
  FieldElement x(K, {mpq_class(1, 2), mpq_class(3)});  // 1/2 + 3a
  BigComplex v = x.to_complex(digits_to_bits(40));
  EXPECT_NEAR(v.re().to_double(), 2.0, 1e-30);
  EXPECT_NEAR(v.im().to_double(), 1.5 * std::sqrt(3.0), 1e-14);
}

TEST(FieldElement, ZeroHasNoInverse) {
  FieldPtr K = make_field({3, 0, 1});
  EXPECT_THROW(FieldElement(K, mpq_class(0)).inverse(), VerificationFailure);
}

TEST(FieldPolynomial, DivisionIdentity) {
  FieldPtr K = make_field({6, -1, 1});
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldElement> a, b;
    for (int i = 0; i < 6; ++i) a.push_back(random_element(K, rng));
    for (int i = 0; i < 3; ++i) b.push_back(random_element(K, rng));
    b.push_back(FieldElement(K, mpq_class(1)));
    FieldPolynomial p(K, a), d(K, b);
    auto [qq, r] = p.divmod(d);
    EXPECT_EQ(qq * d + r, p);
    EXPECT_LT(r.degree(), d.degree());
  }
}

TEST(FieldPolynomial, GcdOfProducts) {
  FieldPtr Q = NumberField::rationals();
  FieldPolynomial f = poly(Q, {-1, 1}), g = poly(Q, {2, 0, 1}), h = poly(Q, {5, 1});
  EXPECT_EQ(gcd(f * g, g * h), g);
  EXPECT_EQ(gcd(f, h).degree(), 0);
}

TEST(FieldPolynomial, ComposeAffine) {
  FieldPtr Q = NumberField::rationals();
  FieldPolynomial p = poly(Q, {0, 0, 1});  // z^2
  FieldPolynomial c = p.compose_affine(FieldElement(Q, mpq_class(2)), FieldElement(Q, mpq_class(1)));
  EXPECT_EQ(c, poly(Q, {1, 4, 4}));
  EXPECT_EQ(p.derivative(), poly(Q, {0, 2}));
  EXPECT_EQ(poly(Q, {1, 1}).pow(3), poly(Q, {1, 3, 3, 1}));
}

TEST(Yun, RecoversMultiplicities) {
  FieldPtr K = make_field({3, 0, 1});
  FieldElement a = FieldElement::generator(K);
  FieldPolynomial f = FieldPolynomial::linear(FieldElement(K, mpq_class(1)), a);           // z + a
  FieldPolynomial g = FieldPolynomial::linear(FieldElement(K, mpq_class(1)), -a + a * a);  // z - a - 3
  FieldPolynomial h = poly(K, {1, 0, 1});
  FieldPolynomial p = f * g.pow(2) * h.pow(3) * FieldPolynomial::constant(FieldElement(K, mpq_class(7)));
  auto parts = squarefree_decomposition(p);
  FieldPolynomial rebuilt = FieldPolynomial::constant(p.leading());
  std::vector<int> mult;
  for (const auto& [q, m] : parts) {
    rebuilt = rebuilt * q.pow(m);
    mult.push_back(m);
    EXPECT_EQ(gcd(q, q.derivative()).degree(), 0);
  }
  EXPECT_EQ(rebuilt, p);
  EXPECT_EQ(mult, (std::vector<int>{1, 2, 3}));
}
