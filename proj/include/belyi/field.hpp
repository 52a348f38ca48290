#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belyi/bigfloat.hpp"

namespace belyi {

// Q(a) with a a root of an irreducible integer polynomial (low-to-high),
// optionally tied to one complex root.
class NumberField {
 public:
  explicit NumberField(std::vector<mpz_class> minpoly, std::optional<BigComplex> embedding = std::nullopt);
  static std::shared_ptr<const NumberField> rationals();

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const std::vector<mpz_class>& minpoly() const { return minpoly_; }
  const std::vector<mpq_class>& monic() const { return monic_; }
  bool has_embedding() const { return embedding_.has_value(); }
  // the chosen root, refined by Newton's method to `prec` bits
  BigComplex embedding(Bits prec) const;
  std::string minpoly_string() const;  // "0 1" style, low-to-high
  std::string to_string() const;       // "a^2 - 5"

  bool same_as(const NumberField& o) const;

 private:
  std::vector<mpz_class> minpoly_;
  std::vector<mpq_class> monic_;
  std::optional<BigComplex> embedding_;
  mutable std::optional<BigComplex> refined_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// sum coords[i] a^i, i < degree
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr K, std::vector<mpq_class> coords);  // reduces mod the minpoly
  FieldElement(FieldPtr K, const mpq_class& x);
  static FieldElement generator(FieldPtr K);

  const FieldPtr& field() const { return K_; }
  const std::vector<mpq_class>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  FieldElement inverse() const;  // throws VerificationFailure on zero
  BigComplex to_complex(Bits prec) const;
  std::string to_string() const;  // "1/2,0,-3" coordinates

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement operator-() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  void check(const FieldElement& o) const;
  FieldPtr K_;
  std::vector<mpq_class> c_;
};

// Polynomial over a number field, low-to-high, no trailing zeros.
class FieldPolynomial {
 public:
  FieldPolynomial() = default;
  FieldPolynomial(FieldPtr K, std::vector<FieldElement> coeffs);
  static FieldPolynomial constant(const FieldElement& x);
  static FieldPolynomial linear(const FieldElement& a, const FieldElement& b);  // a z + b

  const FieldPtr& field() const { return K_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(int k) const;
  FieldElement leading() const;

  FieldPolynomial monic() const;
  FieldPolynomial derivative() const;
  FieldPolynomial compose_affine(const FieldElement& A, const FieldElement& B) const;  // p(A z + B)
  FieldPolynomial pow(int e) const;
  std::pair<FieldPolynomial, FieldPolynomial> divmod(const FieldPolynomial& d) const;
  std::vector<BigComplex> to_complex(Bits prec) const;

  FieldPolynomial& operator+=(const FieldPolynomial& o);
  FieldPolynomial& operator-=(const FieldPolynomial& o);
  FieldPolynomial operator*(const FieldPolynomial& o) const;
  FieldPolynomial operator*(const FieldElement& x) const;
  friend FieldPolynomial operator+(FieldPolynomial a, const FieldPolynomial& b) { return a += b; }
  friend FieldPolynomial operator-(FieldPolynomial a, const FieldPolynomial& b) { return a -= b; }
  friend bool operator==(const FieldPolynomial& a, const FieldPolynomial& b);

 private:
  void trim();
  FieldPtr K_;
  std::vector<FieldElement> c_;
};

FieldPolynomial gcd(FieldPolynomial a, FieldPolynomial b);  // monic, or zero

// Yun: p = lead * prod f_i^{m_i}, f_i squarefree, coprime, monic
std::vector<std::pair<FieldPolynomial, int>> squarefree_decomposition(const FieldPolynomial& p);

}  // namespace belyi
