#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace belyi {

using Bits = mpfr_prec_t;

// decimal digits <-> mantissa bits, with a few guard bits
Bits digits_to_bits(long digits);
long bits_to_digits(Bits bits);

Bits default_precision();
void set_default_precision(Bits bits);

// Sets the thread's default precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(Bits bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Bits saved_;
};

// RAII wrapper around mpfr_t.  Binary operations return a value whose
// precision is the larger of the operand precisions; compound assignment
// raises the left operand's precision when needed and never lowers it.
class BigReal {
 public:
  BigReal();
  BigReal(int x);
  BigReal(long x);
  BigReal(double x);
  BigReal(double x, Bits prec);
  explicit BigReal(const mpz_class& x, Bits prec = 0);
  explicit BigReal(const mpq_class& x, Bits prec = 0);
  static BigReal zero(Bits prec);
  static BigReal parse(const std::string& s, Bits prec = 0);

  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Bits prec() const { return mpfr_get_prec(v_); }
  void set_prec(Bits bits);  // keeps the value (rounded)
  BigReal with_prec(Bits bits) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // log10 |x|, -inf for zero; safe for tiny/huge values
  double log10_abs() const;
  std::string str(int digits = 20) const;
  mpz_class round() const;
  mpz_class floor() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal& operator*=(long k);
  BigReal& operator/=(long k);
  BigReal operator-() const;

 private:
  void raise(Bits bits) {
    if (bits > prec()) mpfr_prec_round(v_, bits, MPFR_RNDN);
  }
  mpfr_t v_;
};

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, long k);
BigReal operator*(long k, const BigReal& a);
BigReal operator/(const BigReal& a, long k);

int compare(const BigReal& a, const BigReal& b);
inline bool operator<(const BigReal& a, const BigReal& b) { return compare(a, b) < 0; }
inline bool operator>(const BigReal& a, const BigReal& b) { return compare(a, b) > 0; }
inline bool operator<=(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0; }
inline bool operator>=(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0; }
inline bool operator==(const BigReal& a, const BigReal& b) { return compare(a, b) == 0; }
inline bool operator!=(const BigReal& a, const BigReal& b) { return compare(a, b) != 0; }

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal tan(const BigReal& x);
BigReal atan(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow(const BigReal& x, long k);
BigReal ldexp(const BigReal& x, long e);  // x * 2^e
BigReal pi(Bits prec);
BigReal pow10(long e, Bits prec);  // 10^e
BigReal max(const BigReal& a, const BigReal& b);

std::ostream& operator<<(std::ostream& os, const BigReal& x);

class BigComplex {
 public:
  BigComplex() = default;
  BigComplex(const BigReal& re) : re_(re), im_(BigReal::zero(re.prec())) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(double re, double im = 0.0) : re_(re), im_(im) {}
  static BigComplex zero(Bits prec);

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  BigReal& re() { return re_; }
  BigReal& im() { return im_; }

  Bits prec() const { return re_.prec() > im_.prec() ? re_.prec() : im_.prec(); }
  void set_prec(Bits bits);
  BigComplex with_prec(Bits bits) const;
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  std::string str(int digits = 20) const;

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const BigReal& o);
  BigComplex& operator/=(const BigReal& o);
  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  // this += a * b without temporaries beyond a scratch pair
  void add_mul(const BigComplex& a, const BigComplex& b);
  void sub_mul(const BigComplex& a, const BigComplex& b);

 private:
  BigReal re_, im_;
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigReal& b);
BigComplex operator*(const BigReal& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigReal& b);

BigComplex conj(const BigComplex& z);
BigReal norm(const BigComplex& z);  // |z|^2
BigReal abs(const BigComplex& z);
BigReal arg(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex cis(const BigReal& theta);  // e^{i theta}
BigComplex pow(const BigComplex& z, long k);
BigComplex sqrt(const BigComplex& z);
BigComplex inverse(const BigComplex& z);

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

}  // namespace belyi
