#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace belyi {

// Permutation of {0..n-1}.  External formats are 1-indexed.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);  // validates bijectivity
  static Permutation identity(int n);
  // parse "(1 2 3)(4 5)" on n points, 1-indexed; unlisted points fixed
  static Permutation from_cycles(int n, const std::string& text);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  std::vector<std::vector<int>> cycles() const;  // including fixed points
  std::vector<int> cycle_type() const;           // descending
  int cycle_count() const;
  bool is_identity() const;
  mpz_class order() const;  // lcm of cycle lengths
  std::string to_string() const;  // 1-indexed disjoint cycles, "()" for identity

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

// x -> q(p(x)): apply p, then q
Permutation then(const Permutation& p, const Permutation& q);
Permutation power(const Permutation& p, long k);

using Partition = std::vector<int>;  // descending parts

struct Passport {
  Partition lambda0, lambda1, lambda2;

  int n() const;
  static int count(const Partition& p, int part);
  int p3() const { return count(lambda0, 3); }
  int p1() const { return count(lambda0, 1); }
  int q2() const { return count(lambda1, 2); }
  int q1() const { return count(lambda1, 1); }
  // finite faces of degree 1: the largest face sits at infinity, so when
  // every face has degree 1 (n = 1) one of them is not counted
  int r() const;
  // n - r: degree of the pole at infinity for a weighted tree
  int pole() const { return n() - r(); }

  std::string to_string() const;  // "(3^2|2^2 1^2|5 1)"
  static Passport parse(const std::string& text);
  bool operator==(const Passport& o) const = default;
};

std::string partition_string(const Partition& p);
Partition parse_partition(const std::string& text);

struct Dessin {
  int n = 0;
  Permutation a;  // black rotations
  Permutation b;  // white rotations

  Dessin() = default;
  Dessin(Permutation a_, Permutation b_);  // validates degree and transitivity
  std::string to_string() const;            // text format
  std::string to_line() const;              // "n=6; a=(1 2 3)(4 5 6); b=(3 4)(5 6)"
  Permutation face() const { return then(a, b); }
};

struct DessinFile {
  Dessin dessin;
  std::string orbit;  // from an optional "orbit=" comment line
};

// "n=..; a=(..); b=(..)" with newlines or ';' as separators, '#' comments
Dessin parse_dessin(const std::string& text);
DessinFile parse_dessin_file(const std::string& text);
DessinFile read_dessin_file(const std::string& path);
std::string format_dessin_file(const Dessin& d, const std::string& orbit);

bool is_transitive(const std::vector<Permutation>& gens);

Passport passport(const Dessin& d);
int genus(const Dessin& d);
bool is_23_type(const Dessin& d);
bool is_weighted_tree(const Dessin& d);

// Stabilizer chain via deterministic Schreier-Sims.
class StabilizerChain {
 public:
  explicit StabilizerChain(const std::vector<Permutation>& gens);
  mpz_class order() const;
  bool contains(const Permutation& g) const;
  const std::vector<int>& base() const { return base_; }
  std::vector<int> orbit_sizes() const;

 private:
  struct Level {
    int beta;
    std::vector<Permutation> gens;
    std::vector<std::optional<Permutation>> transversal;  // beta -> x
    std::vector<int> orbit;
  };
  void add_generator(std::size_t level, const Permutation& g);
  void rebuild_orbit(Level& L);
  // returns (residue, level where sifting stopped)
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const;

  int n_ = 0;
  std::vector<int> base_;
  std::vector<Level> levels_;
};

mpz_class group_order(const Dessin& d);
bool is_primitive(const std::vector<Permutation>& gens);
bool is_primitive(const Dessin& d);

// Least relabelled (a, b) over BFS relabelings from every start point;
// a complete invariant for simultaneous conjugacy of transitive pairs.
Dessin canonical_form(const Dessin& d);

struct RealizationFilters {
  bool genus0 = true;
  bool primitive = false;
  std::optional<mpz_class> order;
  std::size_t max_results = 0;      // 0 = unlimited
  int exhaustive_limit_n = 14;      // larger n uses the randomized search
  bool force_random = false;
  std::uint64_t seed = 1;
  std::uint64_t max_tries = 20000000;
  std::uint64_t max_candidates = 200000000;  // exhaustive safety valve
};

// Canonical representatives of the conjugacy classes of transitive pairs
// with the given passport passing the filters, sorted.  Throws
// SearchLimitExceeded when the exhaustive enumeration is too large.
std::vector<Dessin> realizations_of_passport(const Passport& p, const RealizationFilters& f);

}  // namespace belyi
