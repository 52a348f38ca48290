#include "belyi/field.hpp"

#include <sstream>

#include "belyi/errors.hpp"

namespace belyi {

NumberField::NumberField(std::vector<mpz_class> minpoly, std::optional<BigComplex> embedding)
    : minpoly_(std::move(minpoly)), embedding_(std::move(embedding)) {
  while (!minpoly_.empty() && minpoly_.back() == 0) minpoly_.pop_back();
  if (minpoly_.size() < 2) throw ParseError("minimal polynomial must have degree >= 1");
  mpq_class lead(minpoly_.back());
  for (const auto& c : minpoly_) monic_.push_back(mpq_class(c) / lead);
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const auto q = std::make_shared<const NumberField>(std::vector<mpz_class>{0, 1},
                                                            BigComplex(0.0, 0.0));
  return q;
}

BigComplex NumberField::embedding(Bits prec) const {
  if (!embedding_) throw VerificationFailure("field " + to_string() + " has no chosen embedding");
  if (degree() == 1) {
    mpq_class root = -monic_[0];
    return BigComplex(BigReal(root, prec), BigReal::zero(prec));
  }
  if (refined_ && refined_->prec() >= prec) return refined_->with_prec(prec);
  BigComplex z = (refined_ ? *refined_ : *embedding_).with_prec(prec + 64);
  PrecisionScope scope(prec + 64);
  // Newton on the minimal polynomial; each step doubles the correct bits
  Bits have = 40;
  for (int it = 0; it < 200 && have < 2 * (prec + 64); ++it) {
    BigComplex f = BigComplex::zero(prec + 64), df = BigComplex::zero(prec + 64);
    for (std::size_t k = minpoly_.size(); k-- > 0;) {
      df = df * z + f;
      f = f * z + BigComplex(BigReal(minpoly_[k], prec + 64));
    }
    if (df.is_zero()) break;
    z -= f / df;
    have *= 2;
  }
  refined_ = z;
  return z.with_prec(prec);
}

std::string NumberField::minpoly_string() const {
  std::string s;
  for (std::size_t i = 0; i < minpoly_.size(); ++i) s += (i ? " " : "") + minpoly_[i].get_str();
  return s;
}

std::string NumberField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = minpoly_.size(); k-- > 0;) {
    const mpz_class& c = minpoly_[k];
    if (c == 0) continue;
    mpz_class m = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (m != 1 || k == 0) os << m.get_str();
    if (k > 0) os << "a" << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  return os.str();
}

bool NumberField::same_as(const NumberField& o) const {
  if (this == &o) return true;
  if (minpoly_ != o.minpoly_) return false;
  if (embedding_.has_value() != o.embedding_.has_value()) return false;
  if (!embedding_) return true;
  Bits p = 64;
  return abs(embedding(p) - o.embedding(p)).to_double() < 1e-9;
}

// --- elements ---------------------------------------------------------------

namespace {

void reduce(std::vector<mpq_class>& c, const std::vector<mpq_class>& monic) {
  const std::size_t d = monic.size() - 1;
  for (std::size_t k = c.size(); k-- > d;) {
    if (c[k] == 0) continue;
    mpq_class t = c[k];
    for (std::size_t i = 0; i <= d; ++i) c[k - d + i] -= t * monic[i];
  }
  c.resize(d);
}

}  // namespace

FieldElement::FieldElement(FieldPtr K, std::vector<mpq_class> coords) : K_(std::move(K)), c_(std::move(coords)) {
  if (c_.size() < static_cast<std::size_t>(K_->degree())) c_.resize(static_cast<std::size_t>(K_->degree()));
  for (auto& x : c_) x.canonicalize();
  reduce(c_, K_->monic());
}

FieldElement::FieldElement(FieldPtr K, const mpq_class& x) : K_(std::move(K)) {
  c_.assign(static_cast<std::size_t>(K_->degree()), mpq_class(0));
  c_[0] = x;
  c_[0].canonicalize();
}

FieldElement FieldElement::generator(FieldPtr K) {
  std::vector<mpq_class> c{0, 1};
  return FieldElement(std::move(K), std::move(c));
}

bool FieldElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

void FieldElement::check(const FieldElement& o) const {
  if (K_ != o.K_ && !K_->same_as(*o.K_)) throw VerificationFailure("mixing elements of different number fields");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check(o);
  const std::size_t d = c_.size();
  if (d == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<mpq_class> r(2 * d - 1, mpq_class(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) r[i + j] += c_[i] * o.c_[j];
  }
  reduce(r, K_->monic());
  c_ = std::move(r);
  return *this;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  a.check(b);
  return a.c_ == b.c_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw VerificationFailure("division by zero in " + K_->to_string());
  const std::size_t d = c_.size();
  if (d == 1) return FieldElement(K_, std::vector<mpq_class>{1 / c_[0]});
  // column j of M is this * a^j; solve M y = e_0
  std::vector<std::vector<mpq_class>> M(d, std::vector<mpq_class>(d + 1));
  FieldElement col = *this;
  FieldElement gen = generator(K_);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) M[i][j] = col.c_[i];
    col *= gen;
  }
  M[0][d] = 1;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    while (piv < d && M[piv][k] == 0) ++piv;
    if (piv == d) throw VerificationFailure("element is a zero divisor; is " + K_->to_string() + " irreducible?");
    std::swap(M[k], M[piv]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == k || M[i][k] == 0) continue;
      mpq_class f = M[i][k] / M[k][k];
      for (std::size_t j = k; j <= d; ++j) M[i][j] -= f * M[k][j];
    }
  }
  std::vector<mpq_class> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = M[i][d] / M[i][i];
  return FieldElement(K_, std::move(y));
}

BigComplex FieldElement::to_complex(Bits prec) const {
  BigComplex a = K_->embedding(prec);
  BigComplex acc = BigComplex::zero(prec);
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * a + BigComplex(BigReal(c_[k], prec));
  return acc;
}

std::string FieldElement::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    mpq_class x = c_[i];
    x.canonicalize();
    s += (i ? "," : "") + x.get_num().get_str() + "/" + x.get_den().get_str();
  }
  return s;
}

// --- polynomials ------------------------------------------------------------

FieldPolynomial::FieldPolynomial(FieldPtr K, std::vector<FieldElement> coeffs)
    : K_(std::move(K)), c_(std::move(coeffs)) {
  trim();
}

FieldPolynomial FieldPolynomial::constant(const FieldElement& x) { return FieldPolynomial(x.field(), {x}); }

FieldPolynomial FieldPolynomial::linear(const FieldElement& a, const FieldElement& b) {
  return FieldPolynomial(a.field(), {b, a});
}

void FieldPolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement FieldPolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return FieldElement(K_, mpq_class(0));
  return c_[static_cast<std::size_t>(k)];
}

FieldElement FieldPolynomial::leading() const {
  if (c_.empty()) return FieldElement(K_, mpq_class(0));
  return c_.back();
}

FieldPolynomial FieldPolynomial::monic() const {
  if (is_zero()) return *this;
  FieldElement inv = leading().inverse();
  return *this * inv;
}

FieldPolynomial FieldPolynomial::derivative() const {
  std::vector<FieldElement> r;
  for (std::size_t k = 1; k < c_.size(); ++k) r.push_back(c_[k] * FieldElement(K_, mpq_class(static_cast<long>(k))));
  return FieldPolynomial(K_, std::move(r));
}

FieldPolynomial FieldPolynomial::compose_affine(const FieldElement& A, const FieldElement& B) const {
  FieldPolynomial lin = linear(A, B);
  FieldPolynomial acc(K_, {});
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * lin + constant(c_[k]);
  return acc;
}

FieldPolynomial FieldPolynomial::pow(int e) const {
  FieldPolynomial r = constant(FieldElement(K_, mpq_class(1)));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::pair<FieldPolynomial, FieldPolynomial> FieldPolynomial::divmod(const FieldPolynomial& d) const {
  if (d.is_zero()) throw VerificationFailure("polynomial division by zero");
  FieldPolynomial rem = *this;
  std::vector<FieldElement> q(static_cast<std::size_t>(std::max(0, degree() - d.degree() + 1)),
                              FieldElement(K_, mpq_class(0)));
  FieldElement inv = d.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    FieldElement t = rem.leading() * inv;
    q[static_cast<std::size_t>(shift)] = t;
    for (int i = 0; i <= d.degree(); ++i)
      rem.c_[static_cast<std::size_t>(i + shift)] -= t * d.c_[static_cast<std::size_t>(i)];
    rem.c_.pop_back();  // leading term cancels exactly
    rem.trim();
  }
  return {FieldPolynomial(K_, std::move(q)), rem};
}

std::vector<BigComplex> FieldPolynomial::to_complex(Bits prec) const {
  std::vector<BigComplex> r;
  for (const auto& x : c_) r.push_back(x.to_complex(prec));
  return r;
}

FieldPolynomial& FieldPolynomial::operator+=(const FieldPolynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement(o.K_, mpq_class(0)));
  if (!K_) K_ = o.K_;
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

FieldPolynomial& FieldPolynomial::operator-=(const FieldPolynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement(o.K_, mpq_class(0)));
  if (!K_) K_ = o.K_;
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

FieldPolynomial FieldPolynomial::operator*(const FieldPolynomial& o) const {
  if (is_zero() || o.is_zero()) return FieldPolynomial(K_ ? K_ : o.K_, {});
  std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, FieldElement(K_, mpq_class(0)));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return FieldPolynomial(K_, std::move(r));
}

FieldPolynomial FieldPolynomial::operator*(const FieldElement& x) const {
  std::vector<FieldElement> r;
  for (const auto& c : c_) r.push_back(c * x);
  return FieldPolynomial(K_, std::move(r));
}

bool operator==(const FieldPolynomial& a, const FieldPolynomial& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

FieldPolynomial gcd(FieldPolynomial a, FieldPolynomial b) {
  while (!b.is_zero()) {
    FieldPolynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<FieldPolynomial, int>> squarefree_decomposition(const FieldPolynomial& p) {
  std::vector<std::pair<FieldPolynomial, int>> out;
  if (p.degree() < 1) return out;
  FieldPolynomial f = p.monic();
  FieldPolynomial df = f.derivative();
  FieldPolynomial a = gcd(f, df);
  FieldPolynomial b = f.divmod(a).first;
  FieldPolynomial c = df.divmod(a).first;
  FieldPolynomial d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    a = gcd(b, d);
    if (a.degree() >= 1) out.emplace_back(a, i);
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
  }
  return out;
}

}  // namespace belyi
