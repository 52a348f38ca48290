// Acceptance checks; one PASS/FAIL line per criterion.  The stretch
// criterion is reported but does not affect the exit status.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "belyi/errors.hpp"
#include "belyi/linalg.hpp"
#include "belyi/pipeline.hpp"
#include "belyi/recognition.hpp"
#include "belyi/series.hpp"
#include "test_util.hpp"

using namespace belyi;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Report {
  int failures = 0;
  void line(int id, bool ok, const std::string& what, bool counts = true) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
    if (!ok && counts) ++failures;
  }
};

const CatalogEntry& catalog_entry(const std::string& label) {
  static const std::vector<CatalogEntry> cat = load_catalog(fixtures::data_dir() / "catalog");
  for (const auto& e : cat)
    if (e.orbit == label) return e;
  throw Error("no catalog entry for " + label);
}

// --- group orders from the names ------------------------------------------

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long gcd_l(long a, long b) { return b ? gcd_l(b, a % b) : a; }

// q = p^e
void prime_power(long q, long& p, int& e) {
  for (p = 2; q % p; ++p) {
  }
  e = 0;
  for (long x = q; x > 1; x /= p) ++e;
}

// |GL_n(q)|
mpz_class gl_order(int n, long q) {
  mpz_class r = 1;
  for (int i = 0; i < n; ++i) r *= mpz_class(ipow(q, n)) - mpz_class(ipow(q, i));
  return r;
}

// Orders of the classical groups from their standard formulas, plus the
// two Mathieu groups by value.
mpz_class order_from_name(const std::string& name) {
  if (name == "M12") return 95040;
  if (name == "M24") return mpz_class("244823040");
  std::smatch m;
  static const std::regex re(R"((PSL|PGL|PGammaL|AGL)(\d)\((\d+)\))");
  if (!std::regex_match(name, m, re)) throw Error("unknown group name " + name);
  const std::string kind = m[1];
  const int n = std::stoi(m[2]);
  const long q = std::stol(m[3]);
  if (kind == "AGL") return mpz_class(ipow(q, n)) * gl_order(n, q);
  mpz_class pgl = gl_order(n, q) / (q - 1);
  if (kind == "PGL") return pgl;
  if (kind == "PSL") return pgl / gcd_l(n, q - 1);
  long p;
  int e;
  prime_power(q, p, e);
  return pgl * e;  // PGammaL: field automorphisms on top of PGL
}

// --- criteria -------------------------------------------------------------

void criterion1(Report& rep) {
  auto t0 = Clock::now();
  std::vector<CatalogEntry> cat = load_catalog(fixtures::data_dir() / "catalog");
  int ok = 0;
  std::string bad;
  for (const auto& chk : run_catalog(cat)) {
    if (chk.identity.ok() && chk.passport_ok)
      ++ok;
    else
      bad += " " + chk.orbit;
  }
  // the degree-6 identity written out by hand as well
  FieldPtr Q = NumberField::rationals();
  auto P = [&](std::vector<long> c) {
    std::vector<FieldElement> v;
    for (long x : c) v.emplace_back(Q, mpq_class(x));
    return FieldPolynomial(Q, v);
  };
  ExactAnsatz hand{Q, P({5, 10, 1}), P({1}), P({-1, 4, 1}), P({125, 22, 1}), P({0, 1}), FieldElement(Q, mpq_class(1728))};
  bool hand_ok = identity_check(hand).ok();
  double t = since(t0);
  bool pass = ok == 20 && cat.size() == 20 && hand_ok && t < 5.0;
  rep.line(1, pass,
           "catalog self-verification " + std::to_string(ok) + "/" + std::to_string(cat.size()) + " entries certified" +
               (hand_ok ? "" : ", hand-written sextic identity fails") + (bad.empty() ? "" : ", failing:" + bad) +
               ", " + fmt("%.2f s", t));
}

struct OrbitRun {
  bool ok = false;
  std::string detail;
};

OrbitRun reproduce(const std::string& label, int expected_degree, double limit_seconds) {
  OrbitRun out;
  auto t0 = Clock::now();
  try {
    PipelineConfig cfg;
    PipelineResult r = run_pipeline(fixtures::load_fixture(label), cfg, label);
    double t = since(t0);
    const CatalogEntry& cat = catalog_entry(label);
    AffineMatch m = affine_match(r.exact, cat.ansatz);
    int deg = r.exact.field->degree();
    // a match embeds one field into the other; equal degrees make them equal
    bool field_ok = deg == expected_degree && deg == cat.ansatz.field->degree();
    out.ok = r.certified() && m.found && field_ok && t <= limit_seconds;
    std::ostringstream os;
    os << label << (out.ok ? " ok" : " FAILED") << " (degree " << deg << ", " << (m.found ? "matched" : "no match: " + m.detail)
       << ", " << fmt("%.1f s", t) << ")";
    out.detail = os.str();
  } catch (const std::exception& e) {
    out.detail = label + " FAILED (" + e.what() + ", " + fmt("%.1f s", since(t0)) + ")";
  }
  return out;
}

void orbit_criterion(Report& rep, int id, const std::string& title,
                     const std::vector<std::pair<std::string, int>>& orbits, double limit, bool counts) {
  bool all = true;
  std::string details;
  for (const auto& [label, deg] : orbits) {
    OrbitRun r = reproduce(label, deg, limit);
    all = all && r.ok;
    details += (details.empty() ? "" : "; ") + r.detail;
  }
  rep.line(id, all, title + ": " + details, counts);
}

void criterion5(Report& rep) {
  Dessin d = parse_dessin("n=1; a=(); b=()");
  FundamentalDomain dom = coset_domain(d);
  TruncatedSeries s = solve_modular_function(dom, passport(d), 24, 3, 60);
  // 1728 t = j = 1/q + 744 + 196884 q + ...
  Bits prec = digits_to_bits(60);
  const long j[3] = {1, 744, 196884};
  double worst = 0;
  for (int k = -1; k <= 1; ++k) {
    BigComplex want(BigReal(mpq_class(j[k + 1], 1728), prec));
    worst = std::max(worst, abs(s.c(k) - want).to_double());
  }
  BigComplex v = evaluate_series(s, BigComplex(BigReal::zero(prec), BigReal(2.0, prec)));
  double err2i = abs(v - BigComplex(BigReal(mpq_class(287496, 1728), prec))).to_double();
  rep.line(5, worst < 1e-10 && err2i < 1e-8,
           "trivial dessin: max |c_k - j_k/1728| = " + fmt("%.1e", worst) + " for k = -1, 0, 1; |t(2i) - 287496/1728| = " +
               fmt("%.1e", err2i));
}

void criterion6(Report& rep) {
  PipelineConfig cfg;
  PipelineResult r = run_pipeline(fixtures::load_fixture("6.1"), cfg, "6.1");
  // longest run of consecutive undamped steps whose residual exponent at
  // least 1.8-folds from the previous step
  int best = 0, run = 0;
  std::string ratios;
  for (std::size_t i = 1; i < r.newton_log.size(); ++i) {
    const auto& a = r.newton_log[i - 1];
    const auto& b = r.newton_log[i];
    double ratio = b.log10_residual / a.log10_residual;
    ratios += (ratios.empty() ? "" : " ") + fmt("%.2f", ratio);
    if (b.damping == 0 && a.log10_residual < 0 && ratio >= 1.8)
      best = std::max(best, ++run);
    else
      run = 0;
  }
  rep.line(6, best >= 3,
           "Newton on 6.1: " + std::to_string(best) + " consecutive undamped steps with exponent ratio >= 1.8 (ratios " +
               ratios + ")");
}

void criterion7(Report& rep) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> coef(-10, 10), deg(1, 6);
  const long digits = 100;
  Bits prec = digits_to_bits(digits + 20);
  int passed = 0, exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int d = deg(rng);
    std::vector<mpz_class> p(static_cast<std::size_t>(d + 1));
    for (auto& c : p) c = coef(rng);
    while (p.back() == 0) p.back() = coef(rng);
    if (p[0] == 0) p[0] = 1;  // keep 0 out of the roots
    std::vector<BigComplex> cp;
    for (const auto& c : p) cp.emplace_back(BigReal(c, prec), BigReal::zero(prec));
    BigComplex root = polynomial_roots(cp).front();
    // round to 100 significant digits
    root = BigComplex(BigReal::parse(root.re().str(digits), prec), BigReal::parse(root.im().str(digits), prec));
    auto found = minimal_polynomial(root, 6, digits);
    if (!found) continue;
    // the recovered polynomial must divide the original exactly
    FieldPtr Q = NumberField::rationals();
    auto lift = [&](const std::vector<mpz_class>& v) {
      std::vector<FieldElement> c;
      for (const auto& x : v) c.emplace_back(Q, mpq_class(x));
      return FieldPolynomial(Q, c);
    };
    auto [quot, rem] = lift(p).divmod(lift(*found));
    if (!rem.is_zero()) continue;
    ++passed;
    if (quot.degree() == 0) ++exact;
  }
  Bits p2 = digits_to_bits(digits);
  BigComplex w(BigReal(0.5, p2), sqrt(BigReal(23.0, p2)) / 2);
  auto m23 = minimal_polynomial(w, 6, digits);
  bool ok23 = m23 && *m23 == std::vector<mpz_class>{6, -1, 1};
  rep.line(7, passed == 100 && ok23,
           "algdep recovered a dividing factor for " + std::to_string(passed) + "/100 random polynomials (" +
               std::to_string(exact) + " equal to the input); (1+sqrt(-23))/2 -> " +
               (ok23 ? "z^2 - z + 6" : "wrong polynomial"));
}

void criterion8(Report& rep) {
  bool all = true;
  std::string bad;
  for (const auto& label : fixtures::orbit_labels()) {
    Dessin d = fixtures::load_fixture(label);
    Passport p = passport(d);
    int faces = static_cast<int>(p.lambda2.size());
    mpz_class want = order_from_name(catalog_entry(label).group);
    bool ok = genus(d) == 0 && cusp_widths(d) == p.lambda2 && group_order(d) == want &&
              p.p3() + p.p1() + p.q2() + p.q1() + faces == d.n + 2 && p.to_string() == catalog_entry(label).passport;
    if (!ok) bad += " " + label;
    all = all && ok;
  }
  rep.line(8, all,
           "combinatorial invariants on " + std::to_string(fixtures::orbit_labels().size()) +
               " fixtures (genus, cusp widths, group orders, Euler count)" + (bad.empty() ? "" : "; failing:" + bad));
}

}  // namespace

int main() {
  Report rep;
  auto guard = [&](int id, auto&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      rep.line(id, false, std::string("exception: ") + e.what(), id != 4);
    }
  };
  guard(1, [&] { criterion1(rep); });
  guard(2, [&] {
    orbit_criterion(rep, 2, "rational orbits", {{"6.1", 1}, {"8.8", 1}, {"9.4", 1}, {"10.1", 1}, {"14.1", 1}}, 600,
                    true);
  });
  guard(3, [&] {
    orbit_criterion(rep, 3, "quadratic orbits",
                    {{"7.1", 2}, {"7.2", 2}, {"9.2", 2}, {"8.15", 2}, {"11.1", 2}, {"12.5", 2}, {"14.2", 2}}, 1800,
                    true);
  });
  guard(4, [&] {
    orbit_criterion(rep, 4, "higher-degree stretch (informational)",
                    {{"13.1", 4}, {"17.1", 1}, {"20.1", 3}, {"24.1", 2}, {"24.2", 2}}, 1800, false);
  });
  guard(5, [&] { criterion5(rep); });
  guard(6, [&] { criterion6(rep); });
  guard(7, [&] { criterion7(rep); });
  guard(8, [&] { criterion8(rep); });
  return rep.failures == 0 ? 0 : 1;
}
