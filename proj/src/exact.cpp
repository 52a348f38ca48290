#include "belyi/exact.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "belyi/errors.hpp"
#include "belyi/linalg.hpp"
#include "belyi/recognition.hpp"

namespace belyi {

const FieldPolynomial& ExactAnsatz::poly(int k) const {
  switch (k) {
    case 0:
      return P3;
    case 1:
      return P1;
    case 2:
      return Q2;
    case 3:
      return Q1;
    default:
      return R;
  }
}

int ExactAnsatz::n() const { return 3 * P3.degree() + P1.degree(); }

std::vector<BigComplex> embed(const FieldPolynomial& p, Bits prec) { return p.to_complex(prec); }

IdentityReport identity_check(const ExactAnsatz& a) {
  IdentityReport r;
  std::ostringstream why;
  FieldPolynomial black = a.P3.pow(3) * a.P1;
  FieldPolynomial white = a.Q2.pow(2) * a.Q1;
  r.identity = (black - white) == a.R * a.c;
  if (!r.identity) why << "P3^3 P1 - Q2^2 Q1 != c R; ";
  r.c_nonzero = !a.c.is_zero();
  if (!r.c_nonzero) why << "c = 0; ";
  r.degrees = black.degree() == white.degree() && black.degree() > a.R.degree() && a.R.degree() >= 0;
  if (!r.degrees) why << "degrees " << black.degree() << ", " << white.degree() << ", " << a.R.degree() << "; ";

  FieldPolynomial pb = a.P3 * a.P1, pw = a.Q2 * a.Q1;
  auto squarefree = [](const FieldPolynomial& p) { return p.degree() < 1 || gcd(p, p.derivative()).degree() == 0; };
  auto coprime = [](const FieldPolynomial& p, const FieldPolynomial& q) {
    return p.degree() < 1 || q.degree() < 1 || gcd(p, q).degree() == 0;
  };
  r.squarefree = !pb.is_zero() && !pw.is_zero() && !a.R.is_zero() && squarefree(pb) && squarefree(pw) &&
                 squarefree(a.R);
  if (!r.squarefree) why << "repeated factor; ";
  r.coprime = r.squarefree && coprime(pb, pw) && coprime(pb, a.R) && coprime(pw, a.R);
  if (!r.coprime) why << "common factor; ";
  r.detail = why.str();
  if (r.detail.size() >= 2) r.detail.resize(r.detail.size() - 2);  // trailing "; "
  return r;
}

Passport symbolic_passport(const ExactAnsatz& a) {
  auto parts = [](const FieldPolynomial& p) {
    Partition out;
    for (const auto& [f, m] : squarefree_decomposition(p))
      for (int i = 0; i < f.degree(); ++i) out.push_back(m);
    std::sort(out.rbegin(), out.rend());
    return out;
  };
  Passport p;
  p.lambda0 = parts(a.P3.pow(3) * a.P1);
  p.lambda1 = parts(a.Q2.pow(2) * a.Q1);
  p.lambda2 = parts(a.R);
  int n = a.n();
  if (n > a.R.degree()) p.lambda2.push_back(n - a.R.degree());
  std::sort(p.lambda2.rbegin(), p.lambda2.rend());
  return p;
}

// --- display ------------------------------------------------------------------

namespace {

std::string monomial(const std::string& var, int k) {
  if (k == 0) return "";
  return k == 1 ? var : var + "^" + std::to_string(k);
}

// terms of sum c_k x^k, highest first, as (sign, magnitude text) pairs
std::vector<std::pair<bool, std::string>> element_terms(const FieldElement& x, const std::string& gen) {
  std::vector<std::pair<bool, std::string>> out;
  const auto& c = x.coords();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    mpq_class m = abs(c[k]);
    std::string mono = monomial(gen, static_cast<int>(k));
    std::string t;
    if (mono.empty()) t = m.get_str();
    else if (m == 1) t = mono;
    else t = m.get_str() + "*" + mono;
    out.emplace_back(c[k] < 0, t);
  }
  return out;
}

std::string join_terms(const std::vector<std::pair<bool, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) s += terms[i].first ? "-" : "";
    else s += terms[i].first ? " - " : " + ";
    s += terms[i].second;
  }
  return s;
}

}  // namespace

std::string pretty(const FieldElement& x, const std::string& gen) { return join_terms(element_terms(x, gen)); }

std::string pretty(const FieldPolynomial& p, const std::string& var, const std::string& gen) {
  std::vector<std::pair<bool, std::string>> terms;
  for (int k = p.degree(); k >= 0; --k) {
    FieldElement c = p.coeff(k);
    if (c.is_zero()) continue;
    auto et = element_terms(c, gen);
    std::string mono = monomial(var, k);
    if (et.size() == 1) {
      bool neg = et[0].first;
      std::string mag = et[0].second;
      if (mono.empty()) terms.emplace_back(neg, mag);
      else if (mag == "1") terms.emplace_back(neg, mono);
      else terms.emplace_back(neg, mag + "*" + mono);
    } else {
      std::string inner = "(" + join_terms(et) + ")";
      terms.emplace_back(false, mono.empty() ? inner : inner + "*" + mono);
    }
  }
  return join_terms(terms);
}

// --- affine matching ----------------------------------------------------------

namespace {

FieldElement map_element(const FieldElement& x, const FieldPtr& T, const FieldElement& image) {
  FieldElement acc(T, mpq_class(0));
  const auto& c = x.coords();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * image + FieldElement(T, c[k]);
  return acc;
}

FieldPolynomial map_poly(const FieldPolynomial& p, const FieldPtr& T, const FieldElement& image) {
  std::vector<FieldElement> c;
  for (const auto& x : p.coeffs()) c.push_back(map_element(x, T, image));
  return FieldPolynomial(T, std::move(c));
}

ExactAnsatz map_ansatz(const ExactAnsatz& a, const FieldPtr& T, const FieldElement& image) {
  ExactAnsatz r;
  r.field = T;
  r.P3 = map_poly(a.P3, T, image);
  r.P1 = map_poly(a.P1, T, image);
  r.Q2 = map_poly(a.Q2, T, image);
  r.Q1 = map_poly(a.Q1, T, image);
  r.R = map_poly(a.R, T, image);
  r.c = map_element(a.c, T, image);
  return r;
}

// lead(P3)^3 lead(P1) / (c lead(R)): the constant in front of the monic parts
FieldElement scale_factor(const ExactAnsatz& a) {
  FieldElement l3 = a.P3.leading();
  return l3 * l3 * l3 * a.P1.leading() / (a.c * a.R.leading());
}

FieldElement power(FieldElement x, int e) {
  FieldElement r(x.field(), mpq_class(1));
  if (e < 0) {
    x = x.inverse();
    e = -e;
  }
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// X(z) ~ Y(A z + B) with X, Y over one field
bool match_in_field(const ExactAnsatz& X, const ExactAnsatz& Y, FieldElement& A, FieldElement& B,
                    std::string& detail) {
  const FieldPtr& K = X.field;
  struct Sum {
    FieldElement sx, sy;
    int d;
  };
  std::vector<Sum> sums;
  for (int k = 0; k < 5; ++k) {
    const FieldPolynomial& px = X.poly(k);
    const FieldPolynomial& py = Y.poly(k);
    if (px.degree() < 1) continue;
    int d = px.degree();
    sums.push_back({-px.coeff(d - 1) / px.leading(), -py.coeff(d - 1) / py.leading(), d});
  }
  // A s_x + d B = s_y for each polynomial
  bool solved = false;
  for (std::size_t i = 0; i < sums.size() && !solved; ++i)
    for (std::size_t j = i + 1; j < sums.size() && !solved; ++j) {
      FieldElement di(K, mpq_class(sums[i].d)), dj(K, mpq_class(sums[j].d));
      FieldElement det = sums[i].sx * dj - sums[j].sx * di;
      if (det.is_zero()) continue;
      A = (sums[i].sy * dj - sums[j].sy * di) / det;
      B = (sums[i].sx * sums[j].sy - sums[j].sx * sums[i].sy) / det;
      solved = true;
    }
  if (!solved) {
    detail = "root sums do not determine the affine map";
    return false;
  }
  if (A.is_zero()) {
    detail = "affine map degenerates (A = 0)";
    return false;
  }
  static const char* names[5] = {"P3", "P1", "Q2", "Q1", "R"};
  for (int k = 0; k < 5; ++k) {
    if (X.poly(k).monic() != Y.poly(k).compose_affine(A, B).monic()) {
      detail = std::string(names[k]) + " differs after z -> A z + B";
      return false;
    }
  }
  if (scale_factor(X) != scale_factor(Y) * power(A, X.n() - X.R.degree())) {
    detail = "leading constants differ";
    return false;
  }
  return true;
}

std::vector<BigComplex> integer_poly_roots(const std::vector<mpz_class>& p, Bits prec) {
  std::vector<BigComplex> c;
  for (const auto& x : p) c.push_back(BigComplex(BigReal(x, prec)));
  return polynomial_roots(c);
}

}  // namespace

AffineMatch affine_match(const ExactAnsatz& x, const ExactAnsatz& y) {
  AffineMatch out;
  for (int k = 0; k < 5; ++k)
    if (x.poly(k).degree() != y.poly(k).degree()) {
      out.detail = "polynomial degrees differ";
      return out;
    }
  const bool x_big = x.field->degree() >= y.field->degree();
  const ExactAnsatz& big = x_big ? x : y;
  const ExactAnsatz& small = x_big ? y : x;
  const int dT = big.field->degree();

  for (long digits : {150L, 400L, 1000L}) {
    Bits prec = digits_to_bits(digits);
    // the big field needs a numeric root to search for the embedding
    FieldPtr T = big.field;
    BigComplex t;
    if (T->has_embedding()) {
      t = T->embedding(prec);
    } else {
      t = integer_poly_roots(T->minpoly(), prec)[0];
      T = std::make_shared<const NumberField>(T->minpoly(), t);
    }
    ExactAnsatz bigT = map_ansatz(big, T, FieldElement::generator(T));

    const auto& ms = small.field->minpoly();
    std::vector<BigComplex> roots;
    if (small.field->degree() == 1) {
      mpq_class r(-ms[0], ms[1]);
      r.canonicalize();
      roots.push_back(BigComplex(BigReal(r, prec)));
    } else {
      roots = integer_poly_roots(ms, prec);
    }
    bool any_image = false;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      std::optional<FieldElement> image;
      if (small.field->degree() == 1) {
        mpq_class r(-ms[0], ms[1]);
        image = FieldElement(T, r);
      } else {
        std::vector<BigComplex> v{BigComplex(BigReal(1.0, prec))};
        for (int k = 1; k < dT; ++k) v.push_back(v.back() * t);
        v.push_back(roots[j]);
        auto rel = integer_relation(v, digits);
        if (!rel || rel->back() == 0) continue;
        std::vector<mpq_class> coords;
        for (int k = 0; k < dT; ++k) coords.push_back(mpq_class((*rel)[static_cast<std::size_t>(k)], -rel->back()));
        image = FieldElement(T, coords);
        // certify: the image is a root of the small field's minimal polynomial
        FieldElement val(T, mpq_class(0));
        for (std::size_t k = ms.size(); k-- > 0;) val = val * *image + FieldElement(T, mpq_class(ms[k]));
        if (!val.is_zero()) continue;
      }
      any_image = true;
      ExactAnsatz smallT = map_ansatz(small, T, *image);
      const ExactAnsatz& X = x_big ? bigT : smallT;
      const ExactAnsatz& Y = x_big ? smallT : bigT;
      FieldElement A, B;
      std::string why;
      if (match_in_field(X, Y, A, B, why)) {
        out.found = true;
        out.field = T;
        out.A = A;
        out.B = B;
        out.root_index = static_cast<int>(j);
        BigComplex shown = roots[j];
        // real roots come back with roundoff-sized imaginary parts
        if (abs(shown.im()) < pow10(-digits / 2, prec)) shown.im() = BigReal::zero(prec);
        out.root = shown.str(20);
        out.detail = "x(z) = y(A z + B)";
        return out;
      }
      out.detail = why;
    }
    if (any_image) return out;  // embeddings exist but none matches
    out.detail = "no embedding of " + small.field->to_string() + " into " + big.field->to_string() + " found";
  }
  return out;
}

// --- catalog files ------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

FieldElement parse_element(const std::string& s, const FieldPtr& K) {
  std::vector<mpq_class> c;
  for (const auto& t : split(s, ',')) c.push_back(parse_rational(t));
  if (static_cast<int>(c.size()) > K->degree())
    throw ParseError("element '" + s + "' has more coordinates than the field degree");
  return FieldElement(K, std::move(c));
}

FieldPolynomial parse_poly(const std::string& s, const FieldPtr& K) {
  std::vector<FieldElement> c;
  for (const auto& t : split(s, ';')) c.push_back(parse_element(t, K));
  return FieldPolynomial(K, std::move(c));
}

std::string format_poly(const FieldPolynomial& p) {
  std::string s;
  for (int k = 0; k <= p.degree(); ++k) s += (k ? ";" : "") + p.coeff(k).to_string();
  return s;
}

std::vector<int> label_key(const std::string& label) {
  std::vector<int> k;
  for (const auto& t : split(label, '.')) {
    try {
      k.push_back(std::stoi(t));
    } catch (const std::exception&) {
      k.push_back(0);
    }
  }
  return k;
}

}  // namespace

CatalogEntry parse_catalog_entry(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::map<std::string, std::string> kv;
  bool header = false;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "belyi-catalog 1") throw ParseError("missing 'belyi-catalog 1' header");
      header = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + line + "'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!header) throw ParseError("empty catalog entry");
  for (const char* k : {"passport", "minpoly", "P3", "P1", "Q2", "Q1", "R", "c"})
    if (!kv.count(k)) throw ParseError(std::string("catalog entry lacks '") + k + "'");

  std::vector<mpz_class> mp;
  for (const auto& t : split(kv["minpoly"], ' ')) {
    if (t.empty()) continue;
    mpz_class z;
    if (z.set_str(t, 10) != 0) throw ParseError("bad minpoly coefficient '" + t + "'");
    mp.push_back(z);
  }
  std::optional<BigComplex> emb;
  if (kv.count("embedding")) {
    auto parts = split(kv["embedding"], ' ');
    parts.erase(std::remove(parts.begin(), parts.end(), ""), parts.end());
    if (parts.size() != 2) throw ParseError("embedding needs real and imaginary parts");
    Bits prec = digits_to_bits(static_cast<long>(parts[0].size()) + 10);
    emb = BigComplex(BigReal::parse(parts[0], prec), BigReal::parse(parts[1], prec));
  }
  FieldPtr K = (mp == std::vector<mpz_class>{0, 1} && !emb) ? NumberField::rationals()
                                                           : std::make_shared<const NumberField>(mp, emb);

  CatalogEntry e;
  e.orbit = kv["orbit"];
  e.passport = kv["passport"];
  e.group = kv["group"];
  e.note = kv["note"];
  e.ansatz.field = K;
  e.ansatz.P3 = parse_poly(kv["P3"], K);
  e.ansatz.P1 = parse_poly(kv["P1"], K);
  e.ansatz.Q2 = parse_poly(kv["Q2"], K);
  e.ansatz.Q1 = parse_poly(kv["Q1"], K);
  e.ansatz.R = parse_poly(kv["R"], K);
  e.ansatz.c = parse_element(kv["c"], K);
  return e;
}

std::string format_catalog_entry(const CatalogEntry& e) {
  std::ostringstream os;
  const ExactAnsatz& a = e.ansatz;
  os << "belyi-catalog 1\n";
  if (!e.orbit.empty()) os << "orbit=" << e.orbit << "\n";
  os << "passport=" << e.passport << "\n";
  if (!e.group.empty()) os << "group=" << e.group << "\n";
  if (!e.note.empty()) os << "note=" << e.note << "\n";
  os << "minpoly=" << a.field->minpoly_string() << "\n";
  if (a.field->degree() > 1 && a.field->has_embedding()) {
    BigComplex z = a.field->embedding(digits_to_bits(60));
    os << "embedding=" << z.re().str(50) << " " << z.im().str(50) << "\n";
  }
  os << "P3=" << format_poly(a.P3) << "\n";
  os << "P1=" << format_poly(a.P1) << "\n";
  os << "Q2=" << format_poly(a.Q2) << "\n";
  os << "Q1=" << format_poly(a.Q1) << "\n";
  os << "R=" << format_poly(a.R) << "\n";
  os << "c=" << a.c.to_string() << "\n";
  return os.str();
}

CatalogEntry read_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_catalog_entry(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir) {
  std::vector<CatalogEntry> out;
  if (!std::filesystem::is_directory(dir)) throw ParseError("catalog directory " + dir.string() + " not found");
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    std::string name = f.path().filename().string();
    if (name.rfind("orbit_", 0) == 0 && f.path().extension() == ".txt") out.push_back(read_catalog_file(f.path()));
  }
  std::sort(out.begin(), out.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return label_key(a.orbit) < label_key(b.orbit); });
  return out;
}

std::vector<CatalogCheck> run_catalog(const std::vector<CatalogEntry>& entries) {
  std::vector<CatalogCheck> out;
  for (const auto& e : entries) {
    CatalogCheck c;
    c.orbit = e.orbit;
    c.identity = identity_check(e.ansatz);
    Passport sym = symbolic_passport(e.ansatz);
    c.symbolic = sym.to_string();
    try {
      c.passport_ok = sym == Passport::parse(e.passport);
    } catch (const ParseError&) {
      c.passport_ok = false;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace belyi
