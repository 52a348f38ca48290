#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "belyi/bigfloat.hpp"
#include "belyi/dessin.hpp"

namespace belyi {

// Element of PSL2(Z): (p q; r s) with ps - qr = 1, compared up to sign.
class UnimodularMap {
 public:
  UnimodularMap() : p_(1), q_(0), r_(0), s_(1) {}
  UnimodularMap(mpz_class p, mpz_class q, mpz_class r, mpz_class s);  // checks det = 1
  static UnimodularMap S() { return UnimodularMap(0, -1, 1, 0); }
  static UnimodularMap T(long k = 1) { return UnimodularMap(1, k, 0, 1); }

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const mpz_class& r() const { return r_; }
  const mpz_class& s() const { return s_; }

  UnimodularMap inverse() const { return UnimodularMap(s_, -q_, -r_, p_, 0); }
  bool is_identity() const;
  // pure translation tau -> tau + k (up to sign); k returned through shift
  bool is_translation(mpz_class* shift = nullptr) const;
  BigComplex apply(const BigComplex& tau) const;
  std::string to_string() const;  // "(p,q,r,s)"

  friend UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y);
  friend bool operator==(const UnimodularMap& x, const UnimodularMap& y);

 private:
  UnimodularMap(mpz_class p, mpz_class q, mpz_class r, mpz_class s, int /*unchecked*/)
      : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), s_(std::move(s)) {}
  mpz_class p_, q_, r_, s_;
};

inline bool operator!=(const UnimodularMap& x, const UnimodularMap& y) { return !(x == y); }

// One letter of a word in S and T: S, or T^exponent.
struct Letter {
  char gen;  // 'S' or 'T'
  mpz_class exponent;
};

// Euclidean decomposition on the bottom row; evaluate(word) == m
std::vector<Letter> st_word(const UnimodularMap& m);
UnimodularMap evaluate_word(const std::vector<Letter>& word);

// sigma_S = b and sigma_T = "b then a", so that sigma_{ST} = a.  Throws
// InvalidDessin when S^2 = (ST)^3 = 1 fails on the permutations.
std::pair<Permutation, Permutation> monodromy(const Dessin& d);

// Cycle type of sigma_T.
std::vector<int> cusp_widths(const Dessin& d);

// Edge anchoring the cell at the identity: smallest edge of the longest
// sigma_T cycle, so that the cusp at infinity has the largest width.
int base_edge(const Dessin& d);

// Edge reached from `edge` by the right action of m.
int act_on_edge(const UnimodularMap& m, const Dessin& d, int edge);

// m lies in the stabilizer of base_edge(d).
bool membership_check(const UnimodularMap& m, const Dessin& d);

enum class Side { LEFT, RIGHT, ARC_LEFT_HALF, ARC_RIGHT_HALF };
const char* side_name(Side s);

struct Cell {
  int edge;          // 0-indexed dessin edge
  UnimodularMap g;   // coset representative
  int parent;        // index of the cell this one was reached from, -1 for the base
  char generator;    // 'T' or 'S' move from the parent, 0 for the base
};

struct BoundaryArc {
  int cell;
  Side side;
  UnimodularMap pairing;  // maps this arc onto the partner arc; lies in the stabilizer
  int partner_cell;
  Side partner_side;
  // tau -> tau + k*m: invisible to an m-periodic function
  bool translation;
};

struct CuspClass {
  std::vector<int> cells;
  int width;
};

// Base cell: |Re tau| <= 1/2, |tau| >= 1, corners rho0 = e^{2 pi i/3},
// rho0 + 1 and i*infinity; the bottom arc is split at i.  Cell k is
// g_k(base cell).  Each pairing is listed once, on the RIGHT or
// ARC_LEFT_HALF side; the partner side is the LEFT or ARC_RIGHT_HALF one.
struct FundamentalDomain {
  int n = 0;
  int base = 0;   // base edge
  int width = 0;  // cusp width at infinity
  Permutation sigma_S, sigma_T;
  std::vector<Cell> cells;
  std::vector<int> cell_of_edge;
  std::vector<BoundaryArc> arcs;
  std::vector<CuspClass> cusps;

  std::string dump() const;
};

FundamentalDomain coset_domain(const Dessin& d);

}  // namespace belyi
