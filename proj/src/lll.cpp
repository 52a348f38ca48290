#include "belyi/lll.hpp"

#include <algorithm>

#include "belyi/errors.hpp"

namespace belyi {

mpz_class squared_norm(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// nearest integer to a/b, b > 0
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class num = 2 * a + b, den = 2 * b, q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// Integer Gram-Schmidt data, 1-indexed as in the textbook: d[0] = 1,
// d[k] = Gram determinant of b_1..b_k, lambda[k][j] = d[j] mu[k][j].
struct Gso {
  std::vector<mpz_class> d;
  std::vector<std::vector<mpz_class>> lambda;
};

Gso integral_gso(const IntegerLattice& b) {
  const std::size_t n = b.size();
  Gso g;
  g.d.assign(n + 1, 0);
  g.lambda.assign(n + 1, std::vector<mpz_class>(n + 1, 0));
  g.d[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t j = 1; j <= k; ++j) {
      mpz_class u = dot(b[k - 1], b[j - 1]);
      for (std::size_t i = 1; i < j; ++i) u = (g.d[i] * u - g.lambda[k][i] * g.lambda[j][i]) / g.d[i - 1];
      if (j < k) g.lambda[k][j] = u;
      else g.d[k] = u;
    }
    if (g.d[k] == 0) throw NumericError("LLL input rows are linearly dependent");
  }
  return g;
}

}  // namespace

void lll_reduce(IntegerLattice& b, long delta_num, long delta_den) {
  const std::size_t n = b.size();
  if (n < 2) return;
  std::vector<mpz_class> d(n + 1, 0);
  std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1, 0));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw NumericError("LLL input rows are linearly dependent");
  std::size_t k = 2, kmax = 1;

  auto red = [&](std::size_t k, std::size_t l) {
    if (2 * abs(lam[k][l]) <= d[l]) return;
    mpz_class q = round_div(lam[k][l], d[l]);
    for (std::size_t i = 0; i < b[k - 1].size(); ++i) b[k - 1][i] -= q * b[l - 1][i];
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };
  auto swap = [&](std::size_t k) {
    std::swap(b[k - 1], b[k - 2]);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    mpz_class l = lam[k][k - 1];
    mpz_class B = (d[k - 2] * d[k] + l * l) / d[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      mpz_class t = lam[i][k];
      lam[i][k] = (d[k] * lam[i][k - 1] - l * t) / d[k - 1];
      lam[i][k - 1] = (B * t + l * lam[i][k]) / d[k];
    }
    d[k - 1] = B;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = dot(b[k - 1], b[j - 1]);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k) lam[k][j] = u;
        else d[k] = u;
      }
      if (d[k] == 0) throw NumericError("LLL input rows are linearly dependent");
    }
    for (;;) {
      red(k, k - 1);
      const mpz_class& l = lam[k][k - 1];
      if (delta_den * d[k] * d[k - 2] < delta_num * d[k - 1] * d[k - 1] - delta_den * l * l) {
        swap(k);
        k = std::max<std::size_t>(2, k - 1);
        continue;
      }
      break;
    }
    for (std::size_t l = k - 1; l-- > 1;) red(k, l);
    ++k;
  }
}

bool is_lll_reduced(const IntegerLattice& b, long delta_num, long delta_den) {
  const std::size_t n = b.size();
  if (n < 2) return true;
  Gso g = integral_gso(b);
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t j = 1; j < k; ++j)
      if (2 * abs(g.lambda[k][j]) > g.d[j]) return false;
    const mpz_class& l = g.lambda[k][k - 1];
    if (delta_den * g.d[k] * g.d[k - 2] < delta_num * g.d[k - 1] * g.d[k - 1] - delta_den * l * l) return false;
  }
  return true;
}

}  // namespace belyi
