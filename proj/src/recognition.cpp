#include "belyi/recognition.hpp"

#include <algorithm>
#include <cmath>

#include "belyi/errors.hpp"
#include "belyi/lll.hpp"

namespace belyi {

mpz_class height(const std::vector<mpz_class>& p) {
  mpz_class h = 0;
  for (const auto& c : p) h = std::max(h, mpz_class(abs(c)));
  return h;
}

namespace {

mpz_class round_to_mpz(const BigReal& x) { return x.round(); }

}  // namespace

std::optional<std::vector<mpz_class>> integer_relation(const std::vector<BigComplex>& v, long digits, double lll_delta) {
  const std::size_t m = v.size();
  if (m < 2) return std::nullopt;
  if (digits < 20) throw NumericError("integer relation search needs at least 20 digits");
  Bits prec = std::max(v[0].prec(), digits_to_bits(digits));
  PrecisionScope scope(prec);

  BigReal M(1.0, prec);
  for (const auto& x : v) M = max(M, abs(x));
  BigReal tol = pow10(-digits / 2, prec) * M;
  bool real = true;
  for (const auto& x : v)
    if (abs(x.im()) > tol) real = false;

  const long bits = static_cast<long>(std::floor(3.32 * static_cast<double>(digits - 10)));
  const std::size_t extra = real ? 1 : 2;
  IntegerLattice L(m, std::vector<mpz_class>(m + extra, 0));
  for (std::size_t k = 0; k < m; ++k) {
    L[k][k] = 1;
    BigReal re = ldexp(v[k].re() / M, bits), im = ldexp(v[k].im() / M, bits);
    L[k][m] = round_to_mpz(re);
    if (!real) L[k][m + 1] = round_to_mpz(im);
  }
  if (!(lll_delta > 0.25 && lll_delta < 1.0)) throw NumericError("LLL delta must lie in (1/4, 1)");
  lll_reduce(L, std::lround(lll_delta * 1000), 1000);

  std::vector<mpz_class> r(L[0].begin(), L[0].begin() + static_cast<std::ptrdiff_t>(m));
  if (std::all_of(r.begin(), r.end(), [](const mpz_class& x) { return x == 0; })) return std::nullopt;

  const double p_eff = static_cast<double>(real ? digits : 2 * digits);
  const double max_log_height = p_eff / (2.0 * static_cast<double>(m));
  mpz_class h = height(r);
  if (std::log10(h.get_d()) > max_log_height) return std::nullopt;

  BigComplex sum = BigComplex::zero(prec);
  for (std::size_t k = 0; k < m; ++k) sum += v[k] * BigReal(r[k], prec);
  if (abs(sum) >= tol) return std::nullopt;
  return r;
}

std::optional<std::vector<mpz_class>> algdep(const BigComplex& x, int d, long digits, double lll_delta) {
  if (d < 1) throw NumericError("algdep degree must be positive");
  Bits prec = std::max(x.prec(), digits_to_bits(digits));
  std::vector<BigComplex> pw{BigComplex(BigReal(1.0, prec), BigReal::zero(prec))};
  for (int k = 1; k <= d; ++k) pw.push_back(pw.back() * x);
  auto r = integer_relation(pw, digits, lll_delta);
  if (!r) return std::nullopt;
  while (!r->empty() && r->back() == 0) r->pop_back();
  if (r->size() < 2) return std::nullopt;
  mpz_class g = 0;
  for (const auto& c : *r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  for (auto& c : *r) c /= g;
  if (r->back() < 0)
    for (auto& c : *r) c = -c;
  return r;
}

std::optional<std::vector<mpz_class>> minimal_polynomial(const BigComplex& x, int max_degree, long digits,
                                                         double lll_delta) {
  for (int d = 1; d <= max_degree; ++d) {
    auto r = algdep(x, d, digits, lll_delta);
    if (r && static_cast<int>(r->size()) == d + 1) return r;
  }
  return std::nullopt;
}

namespace {

// x = sum coords_i a^i with a of degree d, or nothing
std::optional<std::vector<mpq_class>> coordinates(const BigComplex& a, int d, const BigComplex& x, long digits,
                                                  double lll_delta) {
  Bits prec = std::max(x.prec(), digits_to_bits(digits));
  std::vector<BigComplex> v{BigComplex(BigReal(1.0, prec), BigReal::zero(prec))};
  for (int k = 1; k < d; ++k) v.push_back(v.back() * a);
  v.push_back(x);
  auto r = integer_relation(v, digits, lll_delta);
  if (!r || r->back() == 0) return std::nullopt;
  std::vector<mpq_class> c;
  for (int k = 0; k < d; ++k) {
    mpq_class q((*r)[static_cast<std::size_t>(k)], -r->back());
    q.canonicalize();
    c.push_back(q);
  }
  return c;
}

}  // namespace

UnifiedField unify_field(const std::vector<BigComplex>& values, int max_degree, long digits, double lll_delta) {
  UnifiedField out;
  std::vector<std::vector<mpz_class>> polys;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto p = minimal_polynomial(values[i], max_degree, digits, lll_delta);
    if (!p)
      throw RecognitionFailure("no algebraic relation of degree <= " + std::to_string(max_degree) +
                               " for value " + std::to_string(i) + " = " + values[i].str(15) + " at " +
                               std::to_string(digits) + " digits");
    polys.push_back(std::move(*p));
  }

  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (polys[i].size() <= 2) continue;
    if (best == values.size() || polys[i].size() > polys[best].size() ||
        (polys[i].size() == polys[best].size() && height(polys[i]) < height(polys[best])))
      best = i;
  }
  if (best == values.size()) {
    out.field = NumberField::rationals();
    for (const auto& p : polys) out.values.emplace_back(out.field, mpq_class(-p[0], p[1]));
    return out;
  }

  BigComplex a = values[best];
  std::vector<mpz_class> apoly = polys[best];
  for (int attempt = 0; attempt < 8; ++attempt) {
    const int d = static_cast<int>(apoly.size()) - 1;
    std::vector<std::vector<mpq_class>> coords;
    std::size_t failed = values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (polys[i].size() == 2) {
        std::vector<mpq_class> c(static_cast<std::size_t>(d), mpq_class(0));
        c[0] = mpq_class(-polys[i][0], polys[i][1]);
        c[0].canonicalize();
        coords.push_back(std::move(c));
        continue;
      }
      auto c = coordinates(a, d, values[i], digits, lll_delta);
      if (!c) {
        failed = i;
        break;
      }
      coords.push_back(std::move(*c));
    }
    if (failed == values.size()) {
      out.field = std::make_shared<const NumberField>(apoly, a);
      for (auto& c : coords) out.values.emplace_back(out.field, std::move(c));
      return out;
    }
    // a does not generate everything: move to a + j x
    bool moved = false;
    for (long j = 1; j <= 4 && !moved; ++j) {
      BigComplex b = a + values[failed] * BigReal(j, a.prec());
      auto bp = minimal_polynomial(b, max_degree, digits, lll_delta);
      if (bp && bp->size() > apoly.size()) {
        a = b;
        apoly = std::move(*bp);
        moved = true;
      }
    }
    if (!moved)
      throw RecognitionFailure("values do not lie in a common field of degree <= " + std::to_string(max_degree));
  }
  throw RecognitionFailure("could not find a primitive element");
}

ExactAnsatz exactify(const NumericAnsatz& a, const Passport& p, int max_degree, long digits,
                     double lll_delta) {
  UnknownLayout L = unknown_layout(p);
  std::vector<BigComplex> vals;
  std::vector<Slot> where;
  for (const Slot& s : L.slots) {
    if (s.poly == kR) continue;
    vals.push_back(a.poly(s.poly)[static_cast<std::size_t>(s.index)]);
    where.push_back(s);
  }
  UnifiedField U;
  if (vals.empty()) {
    U.field = NumberField::rationals();
  } else {
    U = unify_field(vals, max_degree, digits, lll_delta);
  }
  const FieldPtr& K = U.field;

  int deg[4] = {p.p3(), p.p1(), p.q2(), p.q1()};
  std::vector<FieldElement> coeffs[4];
  for (int k = 0; k < 4; ++k) {
    coeffs[k].assign(static_cast<std::size_t>(deg[k] + 1), FieldElement(K, mpq_class(0)));
    coeffs[k].back() = FieldElement(K, mpq_class(1));
  }
  coeffs[L.pin1.poly][static_cast<std::size_t>(L.pin1.index)] = FieldElement(K, mpq_class(-1));
  for (std::size_t i = 0; i < where.size(); ++i)
    coeffs[where[i].poly][static_cast<std::size_t>(where[i].index)] = U.values[i];

  ExactAnsatz e;
  e.field = K;
  e.P3 = FieldPolynomial(K, coeffs[kP3]);
  e.P1 = FieldPolynomial(K, coeffs[kP1]);
  e.Q2 = FieldPolynomial(K, coeffs[kQ2]);
  e.Q1 = FieldPolynomial(K, coeffs[kQ1]);
  FieldPolynomial D = e.P3.pow(3) * e.P1 - e.Q2.pow(2) * e.Q1;
  const int r = p.r();
  if (D.degree() != r)
    throw RecognitionFailure("recognized coefficients give P3^3 P1 - Q2^2 Q1 of degree " +
                             std::to_string(D.degree()) + ", expected " + std::to_string(r));
  e.c = D.leading();
  e.R = D * e.c.inverse();

  // the exact c and R must reproduce the numeric ones
  Bits prec = digits_to_bits(digits);
  BigReal scale = max(BigReal(1.0, prec), abs(a.c));
  BigReal tol = pow10(-digits / 2, prec);
  if (abs(e.c.to_complex(prec) - a.c) > tol * scale)
    throw RecognitionFailure("exact c does not match the numeric value");
  auto Rn = embed(e.R, prec);
  for (std::size_t i = 0; i < Rn.size() && i < a.R.size(); ++i) {
    BigReal s = max(BigReal(1.0, prec), abs(a.R[i]));
    if (abs(Rn[i] - a.R[i]) > tol * s) throw RecognitionFailure("exact R does not match the numeric value");
  }
  return e;
}

}  // namespace belyi
