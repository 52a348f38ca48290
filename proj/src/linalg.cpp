#include "belyi/linalg.hpp"

#include <cmath>
#include <utility>

#include "belyi/errors.hpp"

namespace belyi {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, Bits prec)
    : rows_(rows), cols_(cols), a_(rows * cols, BigComplex::zero(prec)) {}

BigReal ComplexMatrix::max_abs() const {
  BigReal m = BigReal::zero(a_.empty() ? default_precision() : a_[0].prec());
  for (const auto& z : a_) {
    BigReal v = abs(z);
    if (v > m) m = v;
  }
  return m;
}

LinearSolution gauss_solve(ComplexMatrix A, std::vector<BigComplex> b, long digits) {
  const std::size_t n = A.rows();
  if (A.cols() != n || b.size() != n) throw SingularSystem("gauss_solve: shape mismatch");
  LinearSolution out;
  if (n == 0) return out;
  Bits prec = A(0, 0).prec();
  BigReal threshold = A.max_abs() * pow10(-(digits - 5), prec);
  double log_max_piv = -1e300, log_min_piv = 1e300;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    BigReal best = norm(A(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      BigReal v = norm(A(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    BigReal pabs = sqrt(best);
    if (pabs <= threshold || pabs.is_zero())
      throw SingularSystem("pivot " + pabs.str(5) + " below threshold at column " + std::to_string(k));
    double lp = pabs.log10_abs();
    log_max_piv = std::max(log_max_piv, lp);
    log_min_piv = std::min(log_min_piv, lp);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
      std::swap(b[k], b[piv]);
    }
    BigComplex inv = inverse(A(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A(i, k).is_zero()) continue;
      BigComplex f = A(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) A(i, j).sub_mul(f, A(k, j));
      b[i].sub_mul(f, b[k]);
    }
  }
  out.x.assign(n, BigComplex::zero(prec));
  for (std::size_t kk = n; kk-- > 0;) {
    BigComplex s = b[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s.sub_mul(A(kk, j), out.x[j]);
    out.x[kk] = s / A(kk, kk);
  }
  out.condition = std::pow(10.0, std::min(300.0, log_max_piv - log_min_piv));
  return out;
}

namespace {

void horner(const std::vector<BigComplex>& c, const BigComplex& z, BigComplex& p, BigComplex& dp) {
  std::size_t d = c.size() - 1;
  p = c[d];
  dp = BigComplex::zero(z.prec());
  for (std::size_t k = d; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

}  // namespace

std::vector<BigComplex> polynomial_roots(const std::vector<BigComplex>& coeffs) {
  std::vector<BigComplex> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() <= 1) return {};
  const std::size_t d = c.size() - 1;
  Bits prec = c.back().prec();
  for (const auto& x : c) prec = std::max(prec, x.prec());
  PrecisionScope scope(prec);

  // Cauchy bound for the initial circle
  BigReal lead = abs(c[d]);
  BigReal radius(1.0, prec);
  for (std::size_t k = 0; k < d; ++k) {
    BigReal v = abs(c[k]) / lead;
    if (v + BigReal(1.0, prec) > radius) radius = v + BigReal(1.0, prec);
  }
  radius /= 2L;
  std::vector<BigComplex> z(d);
  BigReal twopi = pi(prec) * 2L;
  for (std::size_t k = 0; k < d; ++k) {
    BigReal theta = twopi * static_cast<long>(k) / static_cast<long>(d) + BigReal(0.4, prec);
    z[k] = cis(theta) * radius;
  }

  BigReal tol = ldexp(BigReal(1.0, prec), -static_cast<long>(prec) + 12);
  BigComplex p, dp;
  for (int iter = 0; iter < 2000; ++iter) {
    bool done = true;
    for (std::size_t k = 0; k < d; ++k) {
      horner(c, z[k], p, dp);
      if (p.is_zero()) continue;
      BigComplex w = p / dp;
      BigComplex s = BigComplex::zero(prec);
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) s += inverse(z[k] - z[j]);
      BigComplex corr = w / (BigComplex(BigReal(1.0, prec)) - w * s);
      z[k] -= corr;
      BigReal scale = abs(z[k]);
      if (scale < BigReal(1.0, prec)) scale = BigReal(1.0, prec);
      if (abs(corr) > tol * scale) done = false;
    }
    if (done) break;
  }
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      horner(c, r, p, dp);
      if (dp.is_zero() || p.is_zero()) break;
      r -= p / dp;
    }
  }
  return z;
}

}  // namespace belyi
