#include "belyi/bigfloat.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace belyi {

namespace {
thread_local Bits g_default_bits = 200;

Bits pmax(Bits a, Bits b) { return a > b ? a : b; }
}  // namespace

Bits digits_to_bits(long digits) {
  return static_cast<Bits>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 16;
}

long bits_to_digits(Bits bits) {
  return static_cast<long>(std::floor(static_cast<double>(bits) * 0.30102999566398120));
}

Bits default_precision() { return g_default_bits; }

void set_default_precision(Bits bits) {
  if (bits < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
  g_default_bits = bits;
}

PrecisionScope::PrecisionScope(Bits bits) : saved_(g_default_bits) { set_default_precision(bits); }
PrecisionScope::~PrecisionScope() { g_default_bits = saved_; }

// --- BigReal ---------------------------------------------------------------

BigReal::BigReal() {
  mpfr_init2(v_, g_default_bits);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(int x) : BigReal(static_cast<long>(x)) {}

BigReal::BigReal(long x) {
  mpfr_init2(v_, g_default_bits);
  mpfr_set_si(v_, x, MPFR_RNDN);
}

BigReal::BigReal(double x) {
  mpfr_init2(v_, g_default_bits);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

BigReal::BigReal(double x, Bits prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& x, Bits prec) {
  mpfr_init2(v_, prec ? prec : g_default_bits);
  mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(const mpq_class& x, Bits prec) {
  mpfr_init2(v_, prec ? prec : g_default_bits);
  mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::zero(Bits prec) {
  BigReal r(0.0, prec);
  return r;
}

BigReal BigReal::parse(const std::string& s, Bits prec) {
  BigReal r(0.0, prec ? prec : g_default_bits);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    // mpfr_set_str returns 0 only on a full parse
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end == s.c_str() || *end != '\0') throw std::invalid_argument("bad real literal: " + s);
  }
  return r;
}

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    if (prec() != o.prec()) mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

void BigReal::set_prec(Bits bits) { mpfr_prec_round(v_, bits, MPFR_RNDN); }

BigReal BigReal::with_prec(Bits bits) const {
  BigReal r(0.0, bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

double BigReal::log10_abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  if (!mpfr_number_p(v_)) return std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

std::string BigReal::str(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

mpz_class BigReal::round() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

mpz_class BigReal::floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

BigReal& BigReal::operator+=(const BigReal& o) {
  raise(o.prec());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  raise(o.prec());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  raise(o.prec());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  raise(o.prec());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long k) {
  mpfr_div_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a.prec(), b.prec()));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a.prec(), b.prec()));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a.prec(), b.prec()));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r = BigReal::zero(pmax(a.prec(), b.prec()));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, long k) {
  BigReal r = BigReal::zero(a.prec());
  mpfr_mul_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}

BigReal operator*(long k, const BigReal& a) { return a * k; }

BigReal operator/(const BigReal& a, long k) {
  BigReal r = BigReal::zero(a.prec());
  mpfr_div_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}

int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.get(), b.get()); }

#define BELYI_UNARY(name, fn)                     \
  BigReal name(const BigReal& x) {                \
    BigReal r = BigReal::zero(x.prec());          \
    fn(r.get(), x.get(), MPFR_RNDN);              \
    return r;                                     \
  }

BELYI_UNARY(abs, mpfr_abs)
BELYI_UNARY(sqrt, mpfr_sqrt)
BELYI_UNARY(exp, mpfr_exp)
BELYI_UNARY(log, mpfr_log)
BELYI_UNARY(sin, mpfr_sin)
BELYI_UNARY(cos, mpfr_cos)
BELYI_UNARY(tan, mpfr_tan)
BELYI_UNARY(atan, mpfr_atan)
#undef BELYI_UNARY

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r = BigReal::zero(pmax(x.prec(), y.prec()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& x, long k) {
  BigReal r = BigReal::zero(x.prec());
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r = BigReal::zero(x.prec());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

BigReal pi(Bits prec) {
  BigReal r = BigReal::zero(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

BigReal pow10(long e, Bits prec) {
  BigReal r = BigReal::zero(prec);
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.str(); }

// --- BigComplex ------------------------------------------------------------

namespace {
// scratch for add_mul, grown on demand
struct Scratch {
  mpfr_t t;
  Scratch() { mpfr_init2(t, 64); }
  ~Scratch() { mpfr_clear(t); }
  mpfr_ptr at(Bits bits) {
    if (mpfr_get_prec(t) != bits) mpfr_set_prec(t, bits);
    return t;
  }
};
thread_local Scratch g_scratch_re, g_scratch_im;
}  // namespace

BigComplex BigComplex::zero(Bits prec) { return BigComplex(BigReal::zero(prec), BigReal::zero(prec)); }

void BigComplex::set_prec(Bits bits) {
  re_.set_prec(bits);
  im_.set_prec(bits);
}

BigComplex BigComplex::with_prec(Bits bits) const { return BigComplex(re_.with_prec(bits), im_.with_prec(bits)); }

std::string BigComplex::str(int digits) const {
  std::string s = re_.str(digits);
  if (im_.sign() >= 0) s += "+";
  return s + im_.str(digits) + "i";
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  *this = *this * o;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  *this = *this / o;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigReal& o) {
  re_ /= o;
  im_ /= o;
  return *this;
}

void BigComplex::add_mul(const BigComplex& a, const BigComplex& b) {
  Bits p = pmax(prec(), pmax(a.prec(), b.prec()));
  if (p > re_.prec()) re_.set_prec(p);
  if (p > im_.prec()) im_.set_prec(p);
  mpfr_ptr tr = g_scratch_re.at(p);
  mpfr_ptr ti = g_scratch_im.at(p);
  mpfr_fmms(tr, a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_fmma(ti, a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(re_.get(), re_.get(), tr, MPFR_RNDN);
  mpfr_add(im_.get(), im_.get(), ti, MPFR_RNDN);
}

void BigComplex::sub_mul(const BigComplex& a, const BigComplex& b) {
  Bits p = pmax(prec(), pmax(a.prec(), b.prec()));
  if (p > re_.prec()) re_.set_prec(p);
  if (p > im_.prec()) im_.set_prec(p);
  mpfr_ptr tr = g_scratch_re.at(p);
  mpfr_ptr ti = g_scratch_im.at(p);
  mpfr_fmms(tr, a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_fmma(ti, a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_sub(re_.get(), re_.get(), tr, MPFR_RNDN);
  mpfr_sub(im_.get(), im_.get(), ti, MPFR_RNDN);
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re() + b.re(), a.im() + b.im());
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re() - b.re(), a.im() - b.im());
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  Bits p = pmax(a.prec(), b.prec());
  BigComplex r = BigComplex::zero(p);
  mpfr_fmms(r.re().get(), a.re().get(), b.re().get(), a.im().get(), b.im().get(), MPFR_RNDN);
  mpfr_fmma(r.im().get(), a.re().get(), b.im().get(), a.im().get(), b.re().get(), MPFR_RNDN);
  return r;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  Bits p = pmax(a.prec(), b.prec());
  BigReal d = BigReal::zero(p);
  mpfr_fmma(d.get(), b.re().get(), b.re().get(), b.im().get(), b.im().get(), MPFR_RNDN);
  BigComplex r = BigComplex::zero(p);
  mpfr_fmma(r.re().get(), a.re().get(), b.re().get(), a.im().get(), b.im().get(), MPFR_RNDN);
  mpfr_fmms(r.im().get(), a.im().get(), b.re().get(), a.re().get(), b.im().get(), MPFR_RNDN);
  r /= d;
  return r;
}

BigComplex operator*(const BigComplex& a, const BigReal& b) { return BigComplex(a.re() * b, a.im() * b); }
BigComplex operator*(const BigReal& a, const BigComplex& b) { return b * a; }
BigComplex operator/(const BigComplex& a, const BigReal& b) { return BigComplex(a.re() / b, a.im() / b); }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re(), -z.im()); }

BigReal norm(const BigComplex& z) {
  BigReal r = BigReal::zero(z.prec());
  mpfr_fmma(r.get(), z.re().get(), z.re().get(), z.im().get(), z.im().get(), MPFR_RNDN);
  return r;
}

BigReal abs(const BigComplex& z) {
  BigReal r = BigReal::zero(z.prec());
  mpfr_hypot(r.get(), z.re().get(), z.im().get(), MPFR_RNDN);
  return r;
}

BigReal arg(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigComplex cis(const BigReal& theta) {
  BigReal s = BigReal::zero(theta.prec()), c = BigReal::zero(theta.prec());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return BigComplex(c, s);
}

BigComplex exp(const BigComplex& z) {
  BigComplex w = cis(z.im().with_prec(z.prec()));
  return w * exp(z.re().with_prec(z.prec()));
}

BigComplex pow(const BigComplex& z, long k) {
  if (k < 0) return pow(inverse(z), -k);
  BigComplex result(BigReal(1.0, z.prec()), BigReal::zero(z.prec()));
  BigComplex base = z;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

BigComplex sqrt(const BigComplex& z) {
  BigReal r = abs(z);
  if (r.is_zero()) return BigComplex::zero(z.prec());
  BigReal a = sqrt((r + abs(z.re())) / 2L);
  BigReal b = abs(z.im()) / (a * 2L);
  if (z.re().sign() >= 0) return BigComplex(a, z.im().sign() < 0 ? -b : b);
  return BigComplex(b, z.im().sign() < 0 ? -a : a);
}

BigComplex inverse(const BigComplex& z) {
  BigReal d = norm(z);
  return BigComplex(z.re() / d, -z.im() / d);
}

std::ostream& operator<<(std::ostream& os, const BigComplex& z) { return os << z.str(); }

}  // namespace belyi
