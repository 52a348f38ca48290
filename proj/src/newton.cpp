#include "belyi/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "belyi/errors.hpp"
#include "belyi/linalg.hpp"

namespace belyi {

CPoly poly_mul(const CPoly& p, const CPoly& q) {
  if (p.empty() || q.empty()) return {};
  Bits prec = std::max(p[0].prec(), q[0].prec());
  CPoly r(p.size() + q.size() - 1, BigComplex::zero(prec));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j].add_mul(p[i], q[j]);
  return r;
}

CPoly poly_sub(const CPoly& p, const CPoly& q) {
  Bits prec = !p.empty() ? p[0].prec() : q[0].prec();
  CPoly r(std::max(p.size(), q.size()), BigComplex::zero(prec));
  for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] -= q[i];
  return r;
}

CPoly poly_from_roots(const std::vector<BigComplex>& roots, Bits prec) {
  CPoly p{BigComplex(BigReal(1.0, prec), BigReal::zero(prec))};
  for (const auto& x : roots) {
    CPoly lin{-x.with_prec(prec), BigComplex(BigReal(1.0, prec), BigReal::zero(prec))};
    p = poly_mul(p, lin);
  }
  return p;
}

CPoly poly_with_prec(const CPoly& p, Bits prec) {
  CPoly r;
  r.reserve(p.size());
  for (const auto& x : p) r.push_back(x.with_prec(prec));
  return r;
}

CPoly& NumericAnsatz::poly(int k) {
  switch (k) {
    case kP3:
      return P3;
    case kP1:
      return P1;
    case kQ2:
      return Q2;
    case kQ1:
      return Q1;
    default:
      return R;
  }
}

const CPoly& NumericAnsatz::poly(int k) const { return const_cast<NumericAnsatz*>(this)->poly(k); }

NumericAnsatz NumericAnsatz::with_prec(Bits prec) const {
  NumericAnsatz a;
  for (int k = 0; k < 5; ++k) a.poly(k) = poly_with_prec(poly(k), prec);
  a.c = c.with_prec(prec);
  return a;
}

UnknownLayout unknown_layout(const Passport& p) {
  if (p.pole() <= 0) throw InvalidDessin("passport " + p.to_string() + " has no pole at infinity");
  UnknownLayout L;
  L.n = p.n();
  int deg[5] = {p.p3(), p.p1(), p.q2(), p.q1(), p.r()};
  if (deg[kP3] > 0) {
    L.pin0 = {kP3, deg[kP3] - 1};
  } else {
    L.pin0 = {kP1, deg[kP1] - 1};
  }
  if (deg[kQ2] > 0) {
    L.pin1 = {kQ2, deg[kQ2] - 1};
  } else {
    L.pin1 = {kQ1, deg[kQ1] - 1};
  }
  for (int k = 0; k < 5; ++k)
    for (int i = 0; i < deg[k]; ++i) {
      bool pinned = (k == L.pin0.poly && i == L.pin0.index) || (k == L.pin1.poly && i == L.pin1.index);
      if (!pinned) L.slots.push_back({k, i});
    }
  if (L.unknowns() != L.n)
    throw InvalidDessin("passport " + p.to_string() + " is not that of a genus-0 weighted tree (" +
                        std::to_string(L.unknowns()) + " unknowns for " + std::to_string(L.n) + " equations)");
  return L;
}

namespace {

CPoly difference(const NumericAnsatz& a) {
  CPoly cube = poly_mul(poly_mul(a.P3, a.P3), a.P3);
  return poly_sub(poly_mul(cube, a.P1), poly_mul(poly_mul(a.Q2, a.Q2), a.Q1));
}

BigReal max_abs(const std::vector<BigComplex>& v, Bits prec) {
  BigReal m = BigReal::zero(prec);
  for (const auto& x : v) m = max(m, abs(x));
  return m;
}

double safe_log10(const BigReal& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  return x.log10_abs();
}

}  // namespace

std::vector<BigComplex> residual_vector(const NumericAnsatz& a, int n) {
  CPoly d = difference(a);
  std::vector<BigComplex> f(static_cast<std::size_t>(n), BigComplex::zero(a.prec()));
  for (int i = 0; i < n && i < static_cast<int>(d.size()); ++i) f[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)];
  for (int i = 0; i < n && i < static_cast<int>(a.R.size()); ++i) f[static_cast<std::size_t>(i)].sub_mul(a.c, a.R[static_cast<std::size_t>(i)]);
  return f;
}

BigReal relative_residual(const NumericAnsatz& a, int n) {
  Bits prec = a.prec();
  CPoly cube = poly_mul(poly_mul(poly_mul(a.P3, a.P3), a.P3), a.P1);
  BigReal scale = max(BigReal(1.0, prec), max_abs(cube, prec));
  return max_abs(residual_vector(a, n), prec) / scale;
}

NumericAnsatz seed_ansatz(const VertexEstimates& est, const Passport& p, long digits) {
  Bits prec = digits_to_bits(digits);
  std::vector<BigComplex> r3, r1, r2, w1;
  for (const auto& v : est.black) (v.degree == 3 ? r3 : r1).push_back(v.value);
  for (const auto& v : est.white) (v.degree == 2 ? r2 : w1).push_back(v.value);
  if (static_cast<int>(r3.size()) != p.p3() || static_cast<int>(r1.size()) != p.p1() ||
      static_cast<int>(r2.size()) != p.q2() || static_cast<int>(w1.size()) != p.q1())
    throw SeedRejected("vertex estimates do not match the passport " + p.to_string());

  UnknownLayout L = unknown_layout(p);
  NumericAnsatz a;
  a.P3 = poly_from_roots(r3, prec);
  a.P1 = poly_from_roots(r1, prec);
  a.Q2 = poly_from_roots(r2, prec);
  a.Q1 = poly_from_roots(w1, prec);
  a.poly(L.pin0.poly)[static_cast<std::size_t>(L.pin0.index)] = BigComplex::zero(prec);
  a.poly(L.pin1.poly)[static_cast<std::size_t>(L.pin1.index)] =
      BigComplex(BigReal(-1.0, prec), BigReal::zero(prec));

  CPoly d = difference(a);
  const std::size_t r = static_cast<std::size_t>(p.r());
  BigReal norm = max_abs(d, prec);
  BigReal hi = BigReal::zero(prec);
  for (std::size_t i = r + 1; i < d.size(); ++i) hi = max(hi, abs(d[i]));
  a.c = d[r];
  if (a.c.is_zero() || hi > norm * BigReal(1e-3, prec))
    throw SeedRejected("seed leaves |high coefficients| / |D| = " + (hi / norm).str(3) + " above z^" +
                       std::to_string(r));
  a.R.clear();
  for (std::size_t i = 0; i <= r; ++i) a.R.push_back(d[i] / a.c);
  a.R[r] = BigComplex(BigReal(1.0, prec), BigReal::zero(prec));
  return a;
}

ComplexMatrix jacobian(const NumericAnsatz& a, const UnknownLayout& L) {
  const std::size_t n = static_cast<std::size_t>(L.n);
  Bits prec = a.prec();
  CPoly sq3 = poly_mul(a.P3, a.P3);
  CPoly sq2 = poly_mul(a.Q2, a.Q2);
  CPoly base[5];
  base[kP3] = poly_mul(poly_mul(sq3, a.P1), CPoly{BigComplex(BigReal(3.0, prec), BigReal::zero(prec))});
  base[kP1] = poly_mul(sq3, a.P3);
  base[kQ2] = poly_mul(poly_mul(a.Q2, a.Q1), CPoly{BigComplex(BigReal(-2.0, prec), BigReal::zero(prec))});
  base[kQ1] = poly_mul(sq2, CPoly{BigComplex(BigReal(-1.0, prec), BigReal::zero(prec))});
  base[kR] = CPoly{-a.c};
  ComplexMatrix J(n, n, prec);
  for (std::size_t col = 0; col < L.slots.size(); ++col) {
    const Slot& s = L.slots[col];
    const CPoly& d = base[s.poly];
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::size_t row = i + static_cast<std::size_t>(s.index);
      if (row < n) J(row, col) = d[i];
    }
  }
  for (std::size_t i = 0; i < a.R.size() && i < n; ++i) J(i, n - 1) = -a.R[i];
  return J;
}

namespace {

void apply_step(NumericAnsatz& a, const UnknownLayout& L, const std::vector<BigComplex>& dx, const BigReal& t) {
  for (std::size_t col = 0; col < L.slots.size(); ++col) {
    const Slot& s = L.slots[col];
    a.poly(s.poly)[static_cast<std::size_t>(s.index)] += dx[col] * t;
  }
  a.c += dx.back() * t;
}

}  // namespace

NewtonResult newton_solve(const NumericAnsatz& start, const Passport& p, const NewtonConfig& cfg) {
  UnknownLayout L = unknown_layout(p);
  const long final_digits = cfg.target_digits + 20;
  long digits = std::min(std::max(cfg.start_digits, 20L), final_digits);
  NumericAnsatz a = start.with_prec(digits_to_bits(digits));
  NewtonResult out;

  BigReal res = relative_residual(a, L.n);
  for (int it = 0;; ++it) {
    // precision escalation once the residual has used up half the digits
    while (digits < final_digits && safe_log10(res) < -static_cast<double>(digits) / 2) {
      digits = std::min(2 * digits, final_digits);
      a = a.with_prec(digits_to_bits(digits));
      res = relative_residual(a, L.n);
    }
    if (digits == final_digits && safe_log10(res) < -static_cast<double>(cfg.target_digits)) break;
    if (it >= cfg.max_iterations)
      throw NewtonFailure("no convergence after " + std::to_string(it) + " iterations, residual 1e" +
                          std::to_string(static_cast<int>(safe_log10(res))));
    Bits prec = digits_to_bits(digits);
    PrecisionScope scope(prec);

    std::vector<BigComplex> f = residual_vector(a, L.n);
    for (auto& x : f) x = -x;
    LinearSolution sol;
    try {
      sol = gauss_solve(jacobian(a, L), f, digits);
    } catch (const SingularSystem& e) {
      throw NewtonFailure(std::string("singular Jacobian: ") + e.what());
    }

    BigReal t(1.0, prec);
    int halvings = 0;
    NumericAnsatz trial = a;
    apply_step(trial, L, sol.x, t);
    BigReal trial_res = relative_residual(trial, L.n);
    while (trial_res >= res && !res.is_zero()) {
      if (++halvings > 10) throw NewtonFailure("damping exhausted at residual " + res.str(3));
      t /= 2L;
      trial = a;
      apply_step(trial, L, sol.x, t);
      trial_res = relative_residual(trial, L.n);
    }
    BigReal step = max_abs(sol.x, prec) * t;
    a = std::move(trial);
    res = trial_res;
    out.log.push_back(NewtonStep{it + 1, digits, safe_log10(res), safe_log10(step), halvings});
  }
  out.ansatz = std::move(a);
  out.digits = digits;
  out.log10_residual = safe_log10(res);
  return out;
}

}  // namespace belyi
