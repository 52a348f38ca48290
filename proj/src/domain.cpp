#include "belyi/domain.hpp"

#include <algorithm>
#include <sstream>

#include "belyi/errors.hpp"

namespace belyi {

UnimodularMap::UnimodularMap(mpz_class p, mpz_class q, mpz_class r, mpz_class s)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), s_(std::move(s)) {
  if (p_ * s_ - q_ * r_ != 1) throw InvalidDessin("matrix " + to_string() + " is not unimodular");
}

bool UnimodularMap::is_identity() const {
  return r_ == 0 && q_ == 0 && p_ == s_;  // p = s = +-1 follows from det 1
}

bool UnimodularMap::is_translation(mpz_class* shift) const {
  if (r_ != 0) return false;
  if (shift) *shift = p_ * q_;  // p = s = +-1
  return true;
}

BigComplex UnimodularMap::apply(const BigComplex& tau) const {
  Bits prec = tau.prec();
  BigReal p(p_, prec), q(q_, prec), r(r_, prec), s(s_, prec);
  BigComplex num(tau.re() * p + q, tau.im() * p);
  BigComplex den(tau.re() * r + s, tau.im() * r);
  return num / den;
}

std::string UnimodularMap::to_string() const {
  return "(" + p_.get_str() + "," + q_.get_str() + "," + r_.get_str() + "," + s_.get_str() + ")";
}

UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y) {
  return UnimodularMap(x.p_ * y.p_ + x.q_ * y.r_, x.p_ * y.q_ + x.q_ * y.s_, x.r_ * y.p_ + x.s_ * y.r_,
                       x.r_ * y.q_ + x.s_ * y.s_, 0);
}

bool operator==(const UnimodularMap& x, const UnimodularMap& y) {
  if (x.p_ == y.p_ && x.q_ == y.q_ && x.r_ == y.r_ && x.s_ == y.s_) return true;
  return x.p_ == -y.p_ && x.q_ == -y.q_ && x.r_ == -y.r_ && x.s_ == -y.s_;
}

std::vector<Letter> st_word(const UnimodularMap& m) {
  std::vector<Letter> word;
  mpz_class p = m.p(), q = m.q(), r = m.r(), s = m.s();
  while (r != 0) {
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), p.get_mpz_t(), r.get_mpz_t());
    if (k != 0) word.push_back({'T', k});
    word.push_back({'S', 1});
    // m <- S^-1 T^-k m
    mpz_class np = r, nq = s, nr = -(p - k * r), ns = -(q - k * s);
    p = np;
    q = nq;
    r = nr;
    s = ns;
  }
  mpz_class tail = p * q;
  if (tail != 0) word.push_back({'T', tail});
  return word;
}

UnimodularMap evaluate_word(const std::vector<Letter>& word) {
  UnimodularMap m;
  for (const auto& l : word) {
    if (l.gen == 'S') {
      m = m * UnimodularMap::S();
    } else {
      m = m * UnimodularMap(1, l.exponent, 0, 1);
    }
  }
  return m;
}

std::pair<Permutation, Permutation> monodromy(const Dessin& d) {
  Permutation sS = d.b;
  Permutation sT = then(d.b, d.a);
  Permutation sST = then(sS, sT);
  if (!then(sS, sS).is_identity() || !power(sST, 3).is_identity())
    throw InvalidDessin("permutations violate S^2 = (ST)^3 = 1; dessin is not of (2,3)-type");
  return {sS, sT};
}

std::vector<int> cusp_widths(const Dessin& d) { return monodromy(d).second.cycle_type(); }

int base_edge(const Dessin& d) {
  Permutation sT = then(d.b, d.a);
  int best = 0;
  std::size_t best_len = 0;
  for (const auto& c : sT.cycles()) {
    int lo = *std::min_element(c.begin(), c.end());
    if (c.size() > best_len || (c.size() == best_len && lo < best)) {
      best_len = c.size();
      best = lo;
    }
  }
  return best;
}

int act_on_edge(const UnimodularMap& m, const Dessin& d, int edge) {
  auto [sS, sT] = monodromy(d);
  long ordT = static_cast<long>(sT.order().get_si());
  for (const auto& l : st_word(m)) {
    if (l.gen == 'S') {
      edge = sS(edge);
    } else {
      mpz_class k;
      mpz_fdiv_r_ui(k.get_mpz_t(), l.exponent.get_mpz_t(), static_cast<unsigned long>(ordT));
      for (long j = 0; j < k.get_si(); ++j) edge = sT(edge);
    }
  }
  return edge;
}

bool membership_check(const UnimodularMap& m, const Dessin& d) {
  int b = base_edge(d);
  return act_on_edge(m, d, b) == b;
}

const char* side_name(Side s) {
  switch (s) {
    case Side::LEFT:
      return "L";
    case Side::RIGHT:
      return "R";
    case Side::ARC_LEFT_HALF:
      return "AL";
    case Side::ARC_RIGHT_HALF:
      return "AR";
  }
  return "?";
}

FundamentalDomain coset_domain(const Dessin& d) {
  FundamentalDomain dom;
  auto [sS, sT] = monodromy(d);
  dom.n = d.n;
  dom.sigma_S = sS;
  dom.sigma_T = sT;
  dom.base = base_edge(d);
  dom.cell_of_edge.assign(static_cast<std::size_t>(d.n), -1);

  // walk the whole T-cycle of each newly reached edge before any S move
  auto walk = [&](int e, UnimodularMap g, int parent, char gen) {
    while (dom.cell_of_edge[static_cast<std::size_t>(e)] < 0) {
      dom.cell_of_edge[static_cast<std::size_t>(e)] = static_cast<int>(dom.cells.size());
      dom.cells.push_back(Cell{e, g, parent, gen});
      parent = static_cast<int>(dom.cells.size()) - 1;
      gen = 'T';
      e = sT(e);
      g = g * UnimodularMap::T();
    }
  };
  walk(dom.base, UnimodularMap(), -1, 0);
  for (std::size_t i = 0; i < dom.cells.size(); ++i) {
    int e = dom.cells[i].edge;
    int f = sS(e);
    if (dom.cell_of_edge[static_cast<std::size_t>(f)] < 0)
      walk(f, dom.cells[i].g * UnimodularMap::S(), static_cast<int>(i), 'S');
  }
  if (dom.cells.size() != static_cast<std::size_t>(d.n)) throw InvalidDessin("dessin is not transitive");

  for (std::size_t i = 0; i < dom.cells.size(); ++i) {
    const Cell& c = dom.cells[i];
    {
      int fc = dom.cell_of_edge[static_cast<std::size_t>(sT(c.edge))];
      UnimodularMap M = dom.cells[static_cast<std::size_t>(fc)].g * UnimodularMap::T(-1) * c.g.inverse();
      if (!M.is_identity()) {
        mpz_class shift;
        bool tr = M.is_translation(&shift);
        dom.arcs.push_back(BoundaryArc{static_cast<int>(i), Side::RIGHT, M, fc, Side::LEFT, tr});
      }
    }
    {
      int fc = dom.cell_of_edge[static_cast<std::size_t>(sS(c.edge))];
      UnimodularMap M = dom.cells[static_cast<std::size_t>(fc)].g * UnimodularMap::S() * c.g.inverse();
      if (!M.is_identity())
        dom.arcs.push_back(BoundaryArc{static_cast<int>(i), Side::ARC_LEFT_HALF, M, fc, Side::ARC_RIGHT_HALF,
                                       M.is_translation()});
    }
  }

  for (const auto& cyc : sT.cycles()) {
    CuspClass cc;
    for (int e : cyc) cc.cells.push_back(dom.cell_of_edge[static_cast<std::size_t>(e)]);
    cc.width = static_cast<int>(cyc.size());
    if (std::find(cyc.begin(), cyc.end(), dom.base) != cyc.end()) dom.width = cc.width;
    dom.cusps.push_back(std::move(cc));
  }
  return dom;
}

std::string FundamentalDomain::dump() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    os << i << "  edge " << c.edge + 1 << "  matrix" << c.g.to_string() << "  " << c.parent << "  "
       << (c.generator ? std::string(1, c.generator) : std::string("-")) << "\n";
  }
  for (const auto& a : arcs)
    os << a.cell << "." << side_name(a.side) << " ~ " << a.partner_cell << "." << side_name(a.partner_side) << " via "
       << a.pairing.to_string() << "\n";
  return os.str();
}

}  // namespace belyi
