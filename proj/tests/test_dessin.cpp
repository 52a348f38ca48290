#include <gtest/gtest.h>

#include <random>
#include <set>

#include "belyi/dessin.hpp"
#include "belyi/errors.hpp"
#include "test_util.hpp"

using namespace belyi;

namespace {

// closure of the generators by breadth-first multiplication; small groups only
std::size_t brute_force_order(const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation::identity(gens.front().degree())};
  std::vector<Permutation> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        Permutation h = then(g, s);
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

Dessin conjugate(const Dessin& d, const Permutation& h) {
  Permutation hi = h.inverse();
  return Dessin(then(then(hi, d.a), h), then(then(hi, d.b), h));
}

}  // namespace

TEST(Permutation, CycleParsingRoundTrip) {
  Permutation p = Permutation::from_cycles(7, "(1 2 3)(4 5)");
  EXPECT_EQ(p.to_string(), "(1 2 3)(4 5)");
  EXPECT_EQ(p.cycle_type(), (std::vector<int>{3, 2, 1, 1}));
  EXPECT_EQ(p.order(), 6);
  EXPECT_EQ(Permutation::identity(3).to_string(), "()");
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<int>{0, 0, 1}), Error);
  EXPECT_THROW(Permutation::from_cycles(3, "(1 2)(2 3)"), Error);
  EXPECT_THROW(Permutation::from_cycles(3, "(1 4)"), Error);
}

TEST(Permutation, ThenAppliesLeftFirst) {
  Permutation p = Permutation::from_cycles(3, "(1 2)");
  Permutation q = Permutation::from_cycles(3, "(2 3)");
  // 1 -> 2 under p, then 2 -> 3 under q
  EXPECT_EQ(then(p, q)(0), 2);
  EXPECT_TRUE(then(p, p.inverse()).is_identity());
  EXPECT_EQ(power(Permutation::from_cycles(5, "(1 2 3 4 5)"), 5), Permutation::identity(5));
}

TEST(Passport, ParseAndFormat) {
  Passport p = Passport::parse("(3^2|2^2 1^2|5 1)");
  EXPECT_EQ(p.n(), 6);
  EXPECT_EQ(p.p3(), 2);
  EXPECT_EQ(p.q1(), 2);
  EXPECT_EQ(p.r(), 1);
  EXPECT_EQ(p.pole(), 5);
  EXPECT_EQ(p.to_string(), "(3^2|2^2 1^2|5 1)");
  EXPECT_THROW(Passport::parse("(3^2|2^2"), ParseError);
}

TEST(Passport, TrivialDessinHasPoleOne) {
  Passport p = Passport::parse("(1|1|1)");
  EXPECT_EQ(p.r(), 0);
  EXPECT_EQ(p.pole(), 1);
}

TEST(Dessin, ParsesTextFormat) {
  Dessin d = parse_dessin("# comment\nn=6\na=(1 2 3)(4 5 6)\nb=(3 4)(5 6)\n");
  EXPECT_EQ(d.n, 6);
  EXPECT_EQ(d.to_line(), "n=6; a=(1 2 3)(4 5 6); b=(3 4)(5 6)");
  EXPECT_EQ(parse_dessin(d.to_string()).to_line(), d.to_line());
  DessinFile f = parse_dessin_file(format_dessin_file(d, "6.1"));
  EXPECT_EQ(f.orbit, "6.1");
}

TEST(Dessin, RejectsIntransitivePair) {
  EXPECT_THROW(parse_dessin("n=4; a=(1 2); b=(3 4)"), InvalidDessin);
}

TEST(Dessin, ShapePredicates) {
  Dessin tree = parse_dessin("n=6; a=(1 2 3)(4 5 6); b=(3 4)(5 6)");
  EXPECT_TRUE(is_23_type(tree));
  EXPECT_TRUE(is_weighted_tree(tree));
  EXPECT_EQ(genus(tree), 0);
  Dessin square = parse_dessin("n=4; a=(1 2 3 4); b=()");
  EXPECT_FALSE(is_23_type(square));
  // one vertex of each colour, three edges, one face
  Dessin torus = parse_dessin("n=3; a=(1 2 3); b=(1 2 3)");
  EXPECT_EQ(genus(torus), 1);
}

TEST(StabilizerChain, MatchesBruteForceOnSmallGroups) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + trial % 5;
    std::vector<Permutation> gens = {random_permutation(n, rng), random_permutation(n, rng)};
    StabilizerChain chain(gens);
    EXPECT_EQ(chain.order(), mpz_class(std::to_string(brute_force_order(gens))));
  }
}

TEST(StabilizerChain, MembershipAgreesWithGroup) {
  std::vector<Permutation> gens = {Permutation::from_cycles(5, "(1 2 3)"), Permutation::from_cycles(5, "(3 4 5)")};
  StabilizerChain A5(gens);
  EXPECT_EQ(A5.order(), 60);
  EXPECT_TRUE(A5.contains(Permutation::from_cycles(5, "(1 2)(3 4)")));
  EXPECT_FALSE(A5.contains(Permutation::from_cycles(5, "(1 2)")));
}

TEST(Primitivity, KnownCases) {
  // the dihedral group of the square preserves the block system {1,3},{2,4}
  std::vector<Permutation> d4 = {Permutation::from_cycles(4, "(1 2 3 4)"), Permutation::from_cycles(4, "(1 3)")};
  EXPECT_FALSE(is_primitive(d4));
  std::vector<Permutation> s4 = {Permutation::from_cycles(4, "(1 2 3 4)"), Permutation::from_cycles(4, "(1 2)")};
  EXPECT_TRUE(is_primitive(s4));
  // prime degree transitive groups are primitive
  std::vector<Permutation> c5 = {Permutation::from_cycles(5, "(1 2 3 4 5)")};
  EXPECT_TRUE(is_primitive(c5));
}

TEST(CanonicalForm, InvariantUnderRelabeling) {
  std::mt19937_64 rng(11);
  for (const auto& label : {"6.1", "9.2", "12.13"}) {
    Dessin d = fixtures::load_fixture(label);
    Dessin c = canonical_form(d);
    for (int k = 0; k < 5; ++k) {
      Dessin e = conjugate(d, random_permutation(d.n, rng));
      EXPECT_EQ(canonical_form(e).to_line(), c.to_line()) << label;
      EXPECT_EQ(passport(e), passport(d));
    }
  }
}

TEST(Realizations, ClassesAreDistinctAndHaveThePassport) {
  Passport p = Passport::parse("(3^3 1^2|2^4 1^3|11)");
  RealizationFilters f;
  auto all = realizations_of_passport(p, f);
  ASSERT_FALSE(all.empty());
  std::set<std::string> lines;
  for (const auto& d : all) {
    EXPECT_EQ(passport(d), p);
    EXPECT_EQ(genus(d), 0);
    EXPECT_EQ(canonical_form(d).to_line(), d.to_line());
    lines.insert(d.to_line());
  }
  EXPECT_EQ(lines.size(), all.size());
}

TEST(Realizations, FiltersByOrder) {
  Passport p = Passport::parse("(3^2 1|2^2 1^3|7)");
  RealizationFilters f;
  f.order = mpz_class(168);
  for (const auto& d : realizations_of_passport(p, f)) EXPECT_EQ(group_order(d), 168);
}

// Euler: vertices plus faces exceed edges by two on the sphere
TEST(Invariants, EulerCountOnEveryFixture) {
  for (const auto& label : fixtures::orbit_labels()) {
    Dessin d = fixtures::load_fixture(label);
    Passport p = passport(d);
    int faces = static_cast<int>(p.lambda2.size());
    EXPECT_EQ(p.p3() + p.p1() + p.q2() + p.q1() + faces, d.n + 2) << label;
    EXPECT_EQ(genus(d), 0) << label;
  }
}

TEST(Invariants, EulerCountOnRandomTrees) {
  Passport p = Passport::parse("(3^3 1|2^5|8 1^2)");
  RealizationFilters f;
  for (const auto& d : realizations_of_passport(p, f)) {
    Passport q = passport(d);
    EXPECT_EQ(q.p3() + q.p1() + q.q2() + q.q1() + static_cast<int>(q.lambda2.size()), d.n + 2);
  }
}
