#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "belyi/dessin.hpp"
#include "belyi/field.hpp"

namespace belyi {

// P3^3 P1 - Q2^2 Q1 = c R over a number field.  The polynomials need not
// be monic.
struct ExactAnsatz {
  FieldPtr field;
  FieldPolynomial P3, P1, Q2, Q1, R;
  FieldElement c;

  const FieldPolynomial& poly(int k) const;  // kP3..kR order
  int n() const;
};

struct IdentityReport {
  bool identity = false;   // P3^3 P1 - Q2^2 Q1 == c R
  bool c_nonzero = false;
  bool squarefree = false;  // P3 P1, Q2 Q1 and R
  bool coprime = false;     // pairwise
  bool degrees = false;     // deg P3^3 P1 == deg Q2^2 Q1 > deg R
  std::string detail;

  bool ok() const { return identity && c_nonzero && squarefree && coprime && degrees; }
};

IdentityReport identity_check(const ExactAnsatz& a);

// Ramification read off exactly: multiplicities of the roots of P3^3 P1,
// Q2^2 Q1 and R, plus the pole of order n - deg R at infinity.
Passport symbolic_passport(const ExactAnsatz& a);

struct AffineMatch {
  bool found = false;
  // x(z) corresponds to y(A z + B); A, B live in `field`
  FieldPtr field;
  FieldElement A, B;
  int root_index = -1;  // root of the smaller field's minimal polynomial used
  std::string root;     // that root, numerically
  std::string detail;
};

// Decides whether x and y describe the same Belyi map up to z -> A z + B
// and a field embedding.  The embedding is found numerically and then
// certified exactly, as are A, B and the polynomial identities.
AffineMatch affine_match(const ExactAnsatz& x, const ExactAnsatz& y);

struct CatalogEntry {
  std::string orbit;
  std::string passport;
  std::string group;
  std::string note;
  ExactAnsatz ansatz;
};

// "belyi-catalog 1" followed by key=value lines; see README.
CatalogEntry parse_catalog_entry(const std::string& text);
std::string format_catalog_entry(const CatalogEntry& e);
CatalogEntry read_catalog_file(const std::filesystem::path& path);
// all orbit_*.txt files, sorted by orbit label
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir);

struct CatalogCheck {
  std::string orbit;
  IdentityReport identity;
  bool passport_ok = false;
  std::string symbolic;  // passport computed from the polynomials
};

std::vector<CatalogCheck> run_catalog(const std::vector<CatalogEntry>& entries);

// Display forms: "3/2 - a + 1/4*a^2", "z^2 - (1 + a)*z + 5/9".
std::string pretty(const FieldElement& x, const std::string& gen = "a");
std::string pretty(const FieldPolynomial& p, const std::string& var = "z", const std::string& gen = "a");

// numeric coefficients of an exact polynomial, through the field's embedding
std::vector<BigComplex> embed(const FieldPolynomial& p, Bits prec);

}  // namespace belyi
