#include <gtest/gtest.h>

#include "belyi/errors.hpp"
#include "belyi/exact.hpp"
#include "belyi/linalg.hpp"
#include "belyi/recognition.hpp"
#include "test_util.hpp"

using namespace belyi;

namespace {

std::vector<CatalogEntry> catalog() {
  static const std::vector<CatalogEntry> c = load_catalog(fixtures::data_dir() / "catalog");
  return c;
}

const CatalogEntry& entry(const std::string& label) {
  static const std::vector<CatalogEntry> c = catalog();
  for (const auto& e : c)
    if (e.orbit == label) return e;
  throw std::runtime_error("no catalog entry " + label);
}

ExactAnsatz compose(const ExactAnsatz& x, const FieldElement& A, const FieldElement& B) {
  ExactAnsatz y = x;
  for (FieldPolynomial* p : {&y.P3, &y.P1, &y.Q2, &y.Q1, &y.R}) *p = p->compose_affine(A, B);
  return y;
}

}  // namespace

TEST(Catalog, LoadsEveryOrbitInOrder) {
  auto c = catalog();
  ASSERT_EQ(c.size(), fixtures::orbit_labels().size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].orbit, fixtures::orbit_labels()[i]);
}

TEST(Catalog, EveryEntryIsCertified) {
  for (const auto& chk : run_catalog(catalog())) {
    EXPECT_TRUE(chk.identity.ok()) << chk.orbit << ": " << chk.identity.detail;
    EXPECT_TRUE(chk.passport_ok) << chk.orbit << ": " << chk.symbolic;
  }
}

TEST(Catalog, FormatParseRoundTrip) {
  for (const auto& e : catalog()) {
    std::string text = format_catalog_entry(e);
    CatalogEntry back = parse_catalog_entry(text);
    EXPECT_EQ(format_catalog_entry(back), text) << e.orbit;
    EXPECT_EQ(back.passport, e.passport);
    EXPECT_EQ(back.ansatz.c, e.ansatz.c);
    EXPECT_TRUE(back.ansatz.field->same_as(*e.ansatz.field));
  }
}

TEST(Catalog, RejectsMalformedText) {
  EXPECT_THROW(parse_catalog_entry("not a catalog\n"), ParseError);
  EXPECT_THROW(parse_catalog_entry("belyi-catalog 1\norbit=x\nminpoly=0 1\n"), ParseError);
}

TEST(Identity, SexticByHand) {
  // (z^2 + 10z + 5)^3 - (z^2 + 4z - 1)^2 (z^2 + 22z + 125) = 1728 z
  FieldPtr Q = NumberField::rationals();
  auto P = [&](std::vector<long> c) {
    std::vector<FieldElement> v;
    for (long x : c) v.emplace_back(Q, mpq_class(x));
    return FieldPolynomial(Q, v);
  };
  ExactAnsatz a{Q, P({5, 10, 1}), P({1}), P({-1, 4, 1}), P({125, 22, 1}), P({0, 1}), FieldElement(Q, mpq_class(1728))};
  IdentityReport r = identity_check(a);
  EXPECT_TRUE(r.ok()) << r.detail;
  EXPECT_EQ(symbolic_passport(a).to_string(), "(3^2|2^2 1^2|5 1)");
  a.c = FieldElement(Q, mpq_class(1727));
  EXPECT_FALSE(identity_check(a).identity);
}

TEST(Identity, DetectsRepeatedRoots) {
  ExactAnsatz a = entry("6.1").ansatz;
  a.Q1 = a.Q1 * a.Q1;
  EXPECT_FALSE(identity_check(a).ok());
}

TEST(SymbolicPassport, MatchesEveryCatalogPassport) {
  for (const auto& e : catalog()) EXPECT_EQ(symbolic_passport(e.ansatz).to_string(), e.passport) << e.orbit;
}

TEST(AffineMatch, Reflexive) {
  for (const auto& label : {"6.1", "7.1", "20.1"}) {
    const ExactAnsatz& x = entry(label).ansatz;
    AffineMatch m = affine_match(x, x);
    EXPECT_TRUE(m.found) << label << ": " << m.detail;
  }
}

TEST(AffineMatch, InverseMapOnTheOtherSide) {
  const ExactAnsatz& x = entry("7.2").ansatz;
  FieldPtr K = x.field;
  FieldElement A0(K, {mpq_class(2), mpq_class(1)}), B0(K, {mpq_class(-3, 4), mpq_class(0)});
  ExactAnsatz y = compose(x, A0, B0);  // y(z) = x(A0 z + B0)
  ASSERT_TRUE(identity_check(y).ok());
  AffineMatch xy = affine_match(y, x);
  ASSERT_TRUE(xy.found) << xy.detail;
  AffineMatch yx = affine_match(x, y);
  ASSERT_TRUE(yx.found) << yx.detail;
  // composing the two maps gives the identity
  EXPECT_EQ(xy.A * yx.A, FieldElement(xy.field, mpq_class(1)));
  EXPECT_EQ(xy.A * yx.B + xy.B, FieldElement(xy.field, mpq_class(0)));
}

TEST(AffineMatch, DistinguishesDifferentOrbits) {
  AffineMatch m = affine_match(entry("12.4").ansatz, entry("12.5").ansatz);
  EXPECT_FALSE(m.found);
  AffineMatch n = affine_match(entry("24.1").ansatz, entry("24.2").ansatz);
  EXPECT_FALSE(n.found);
}

TEST(AffineMatch, ConjugateEmbedding) {
  const CatalogEntry& e = entry("11.1");
  const FieldPtr& K = e.ansatz.field;
  ASSERT_EQ(K->degree(), 2);
  // the same entry over the field tied to each complex root in turn
  Bits prec = digits_to_bits(60);
  std::vector<BigComplex> mp;
  for (const auto& c : K->minpoly()) mp.emplace_back(BigReal(c, prec), BigReal::zero(prec));
  std::vector<ExactAnsatz> tied;
  for (const auto& root : polynomial_roots(mp)) {
    auto L = std::make_shared<const NumberField>(K->minpoly(), root);
    auto move = [&](const FieldPolynomial& p) {
      std::vector<FieldElement> v;
      for (const auto& x : p.coeffs()) v.emplace_back(L, x.coords());
      return FieldPolynomial(L, v);
    };
    const ExactAnsatz& x = e.ansatz;
    tied.push_back({L, move(x.P3), move(x.P1), move(x.Q2), move(x.Q1), move(x.R), FieldElement(L, x.c.coords())});
  }
  ASSERT_EQ(tied.size(), 2u);
  AffineMatch m = affine_match(tied[0], tied[1]);
  EXPECT_TRUE(m.found) << m.detail;
}

TEST(Pretty, Display) {
  FieldPtr Q = NumberField::rationals();
  FieldPolynomial p(Q, {FieldElement(Q, mpq_class(-5, 9)), FieldElement(Q, mpq_class(0)), FieldElement(Q, mpq_class(1))});
  EXPECT_EQ(pretty(p), "z^2 - 5/9");
}

TEST(Exactify, RecoversTheSexticFromDigits) {
  Bits prec = digits_to_bits(120);
  auto q = [&](long n, long d) { return BigComplex(BigReal(mpq_class(n, d), prec), BigReal::zero(prec)); };
  NumericAnsatz a;
  a.P3 = {q(-5, 9), q(0, 1), q(1, 1)};
  a.P1 = {q(1, 1)};
  a.Q2 = {q(1, 9), q(-1, 1), q(1, 1)};
  a.Q1 = {q(10, 9), q(2, 1), q(1, 1)};
  a.R = {q(-5, 6), q(1, 1)};
  a.c = q(2, 9);
  Passport p = Passport::parse("(3^2|2^2 1^2|5 1)");
  ExactAnsatz e = exactify(a, p, 4, 100);
  EXPECT_EQ(e.field->degree(), 1);
  EXPECT_TRUE(identity_check(e).ok());
  EXPECT_EQ(e.c, FieldElement(e.field, mpq_class(2, 9)));
  EXPECT_TRUE(affine_match(e, entry("6.1").ansatz).found);
}
