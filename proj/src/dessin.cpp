#include "belyi/dessin.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "belyi/errors.hpp"

namespace belyi {

// --- Permutation -----------------------------------------------------------

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int x : img_) {
    if (x < 0 || x >= static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(x)])
      throw InvalidDessin("images do not form a bijection");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::from_cycles(int n, const std::string& text) {
  if (n <= 0) throw ParseError("degree must be positive");
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle list: " + text);
    ++i;
    std::vector<int> cyc;
    for (;;) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) throw ParseError("unterminated cycle: " + text);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("bad character in cycle: " + text);
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1000000) throw ParseError("point out of range");
        ++i;
      }
      if (v < 1 || v > n) throw ParseError("point " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      int p = static_cast<int>(v - 1);
      if (used[static_cast<std::size_t>(p)]) throw ParseError("repeated point " + std::to_string(v));
      used[static_cast<std::size_t>(p)] = 1;
      cyc.push_back(p);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) img[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
    skip_ws();
  }
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) v[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  Permutation p;
  p.img_ = std::move(v);
  return p;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(img_.size(), 0);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    int j = static_cast<int>(i);
    while (!seen[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      c.push_back(j);
      j = img_[static_cast<std::size_t>(j)];
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> t;
  for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
  std::sort(t.rbegin(), t.rend());
  return t;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

mpz_class Permutation::order() const {
  mpz_class l = 1;
  for (int len : cycle_type()) {
    mpz_class z = len;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.get_mpz_t());
  }
  return l;
}

std::string Permutation::to_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    s += "(";
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += " ";
      s += std::to_string(c[k] + 1);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Permutation then(const Permutation& p, const Permutation& q) {
  std::vector<int> v(static_cast<std::size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) v[static_cast<std::size_t>(i)] = q(p(i));
  return Permutation(std::move(v));
}

Permutation power(const Permutation& p, long k) {
  Permutation base = k < 0 ? p.inverse() : p;
  if (k < 0) k = -k;
  Permutation r = Permutation::identity(p.degree());
  while (k > 0) {
    if (k & 1) r = then(r, base);
    base = then(base, base);
    k >>= 1;
  }
  return r;
}

// --- Passport --------------------------------------------------------------

int Passport::count(const Partition& p, int part) {
  return static_cast<int>(std::count(p.begin(), p.end(), part));
}

int Passport::r() const {
  int ones = count(lambda2, 1);
  bool big = std::any_of(lambda2.begin(), lambda2.end(), [](int k) { return k > 1; });
  return big ? ones : std::max(0, ones - 1);
}

int Passport::n() const { return std::accumulate(lambda0.begin(), lambda0.end(), 0); }

std::string partition_string(const Partition& p) {
  std::string s;
  std::size_t i = 0;
  while (i < p.size()) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    if (!s.empty()) s += " ";
    s += std::to_string(p[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

Partition parse_partition(const std::string& text) {
  Partition out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    std::string base = tok, ex = "1";
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      ex = tok.substr(caret + 1);
      if (!ex.empty() && ex.front() == '{') {
        if (ex.back() != '}') throw ParseError("bad exponent in partition: " + tok);
        ex = ex.substr(1, ex.size() - 2);
      }
    }
    try {
      std::size_t pos = 0;
      int b = std::stoi(base, &pos);
      if (pos != base.size()) throw ParseError("bad part: " + tok);
      int e = std::stoi(ex, &pos);
      if (pos != ex.size()) throw ParseError("bad exponent: " + tok);
      if (b <= 0 || e <= 0) throw ParseError("parts must be positive: " + tok);
      for (int k = 0; k < e; ++k) out.push_back(b);
    } catch (const std::logic_error&) {
      throw ParseError("bad partition token: " + tok);
    }
  }
  if (out.empty()) throw ParseError("empty partition");
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::string Passport::to_string() const {
  return "(" + partition_string(lambda0) + "|" + partition_string(lambda1) + "|" + partition_string(lambda2) + ")";
}

Passport Passport::parse(const std::string& text) {
  std::string t = text;
  auto l = t.find_first_not_of(" \t");
  auto r = t.find_last_not_of(" \t\r\n");
  if (l == std::string::npos) throw ParseError("empty passport");
  t = t.substr(l, r - l + 1);
  if (t.front() == '(') {
    if (t.back() != ')') throw ParseError("unbalanced passport: " + text);
    t = t.substr(1, t.size() - 2);
  }
  std::vector<std::string> parts;
  std::stringstream ss(t);
  std::string piece;
  while (std::getline(ss, piece, '|')) parts.push_back(piece);
  if (parts.size() != 3) throw ParseError("passport needs three partitions: " + text);
  Passport p{parse_partition(parts[0]), parse_partition(parts[1]), parse_partition(parts[2])};
  int n = p.n();
  auto sum = [](const Partition& q) { return std::accumulate(q.begin(), q.end(), 0); };
  if (sum(p.lambda1) != n || sum(p.lambda2) != n) throw ParseError("passport partitions have different sums: " + text);
  return p;
}

// --- Dessin ----------------------------------------------------------------

bool is_transitive(const std::vector<Permutation>& gens) {
  if (gens.empty()) return true;
  int n = gens[0].degree();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      int y = g(x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

Dessin::Dessin(Permutation a_, Permutation b_) : n(a_.degree()), a(std::move(a_)), b(std::move(b_)) {
  if (n <= 0) throw InvalidDessin("dessin needs at least one edge");
  if (b.degree() != n) throw InvalidDessin("a and b have different degrees");
  if (!is_transitive({a, b})) throw InvalidDessin("<a,b> is not transitive");
}

std::string Dessin::to_string() const {
  return "n=" + std::to_string(n) + "\na=" + a.to_string() + "\nb=" + b.to_string() + "\n";
}

std::string Dessin::to_line() const {
  return "n=" + std::to_string(n) + "; a=" + a.to_string() + "; b=" + b.to_string();
}

namespace {

std::string trim(const std::string& s) {
  auto l = s.find_first_not_of(" \t\r\n");
  if (l == std::string::npos) return "";
  auto r = s.find_last_not_of(" \t\r\n");
  return s.substr(l, r - l + 1);
}

}  // namespace

DessinFile parse_dessin_file(const std::string& text) {
  std::optional<int> n;
  std::optional<std::string> a_text, b_text;
  std::string orbit;
  std::string stmt;
  std::vector<std::string> stmts;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string c = trim(t.substr(1));
      if (c.rfind("orbit=", 0) == 0) orbit = trim(c.substr(6));
      continue;
    }
    std::stringstream ss(t);
    while (std::getline(ss, stmt, ';'))
      if (!trim(stmt).empty()) stmts.push_back(trim(stmt));
  }
  for (const auto& s : stmts) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value: " + s);
    std::string key = trim(s.substr(0, eq)), val = trim(s.substr(eq + 1));
    if (key == "n") {
      try {
        std::size_t pos = 0;
        int v = std::stoi(val, &pos);
        if (pos != val.size() || v <= 0) throw ParseError("bad edge count: " + val);
        n = v;
      } catch (const std::logic_error&) {
        throw ParseError("bad edge count: " + val);
      }
    } else if (key == "a") {
      a_text = val;
    } else if (key == "b") {
      b_text = val;
    } else if (key == "orbit") {
      orbit = val;
    } else {
      throw ParseError("unknown key: " + key);
    }
  }
  if (!n || !a_text || !b_text) throw ParseError("dessin needs n=, a= and b=");
  Permutation a = Permutation::from_cycles(*n, *a_text);
  Permutation b = Permutation::from_cycles(*n, *b_text);
  return DessinFile{Dessin(std::move(a), std::move(b)), orbit};
}

Dessin parse_dessin(const std::string& text) { return parse_dessin_file(text).dessin; }

DessinFile read_dessin_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dessin_file(ss.str());
}

std::string format_dessin_file(const Dessin& d, const std::string& orbit) {
  std::string s;
  if (!orbit.empty()) s += "# orbit=" + orbit + "\n";
  return s + d.to_string();
}

Passport passport(const Dessin& d) { return Passport{d.a.cycle_type(), d.b.cycle_type(), d.face().cycle_type()}; }

int genus(const Dessin& d) {
  int chi = d.a.cycle_count() + d.b.cycle_count() + d.face().cycle_count() - d.n;
  if (chi > 2 || (2 - chi) % 2 != 0) throw InvalidDessin("Euler characteristic inconsistent: " + std::to_string(chi));
  return (2 - chi) / 2;
}

bool is_23_type(const Dessin& d) {
  for (int k : d.a.cycle_type())
    if (k != 1 && k != 3) return false;
  for (int k : d.b.cycle_type())
    if (k != 1 && k != 2) return false;
  return true;
}

bool is_weighted_tree(const Dessin& d) {
  if (genus(d) != 0) return false;
  auto faces = d.face().cycle_type();
  return std::count_if(faces.begin(), faces.end(), [](int k) { return k > 1; }) <= 1;
}

// --- Schreier-Sims ---------------------------------------------------------

StabilizerChain::StabilizerChain(const std::vector<Permutation>& gens) {
  if (gens.empty()) return;
  n_ = gens[0].degree();
  std::vector<Permutation> nontrivial;
  for (const auto& g : gens)
    if (!g.is_identity()) nontrivial.push_back(g);
  if (nontrivial.empty()) return;
  // initial base: enough points that no generator fixes all of them
  for (const auto& g : nontrivial) {
    bool fixes_all = std::all_of(base_.begin(), base_.end(), [&](int b) { return g(b) == b; });
    if (!fixes_all) continue;
    for (int x = 0; x < n_; ++x)
      if (g(x) != x) {
        base_.push_back(x);
        break;
      }
  }
  for (int b : base_) levels_.push_back(Level{b, {}, {}, {}});
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    for (const auto& g : nontrivial) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < i; ++j)
        if (g(base_[j]) != base_[j]) fixes_prefix = false;
      if (fixes_prefix) levels_[i].gens.push_back(g);
    }
    rebuild_orbit(levels_[i]);
  }

  // Holt's deterministic Schreier-Sims
  std::size_t i = levels_.size();
  while (i >= 1) {
    std::size_t li = i - 1;
    bool restarted = false;
    for (std::size_t oi = 0; oi < levels_[li].orbit.size() && !restarted; ++oi) {
      int y = levels_[li].orbit[oi];
      for (std::size_t gi = 0; gi < levels_[li].gens.size() && !restarted; ++gi) {
        const Permutation s = levels_[li].gens[gi];
        int ys = s(y);
        Permutation h = then(then(*levels_[li].transversal[static_cast<std::size_t>(y)], s),
                             levels_[li].transversal[static_cast<std::size_t>(ys)]->inverse());
        if (h.is_identity()) continue;
        auto [res, j] = sift(h, li + 1);
        if (j == levels_.size() && res.is_identity()) continue;
        if (j == levels_.size()) {
          int moved = -1;
          for (int x = 0; x < n_; ++x)
            if (res(x) != x) {
              moved = x;
              break;
            }
          base_.push_back(moved);
          levels_.push_back(Level{moved, {}, {}, {}});
        }
        for (std::size_t l = li + 1; l <= j; ++l) {
          levels_[l].gens.push_back(res);
          rebuild_orbit(levels_[l]);
        }
        i = j + 1;
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
}

void StabilizerChain::rebuild_orbit(Level& L) {
  L.transversal.assign(static_cast<std::size_t>(n_), std::nullopt);
  L.orbit.clear();
  L.transversal[static_cast<std::size_t>(L.beta)] = Permutation::identity(n_);
  L.orbit.push_back(L.beta);
  for (std::size_t k = 0; k < L.orbit.size(); ++k) {
    int x = L.orbit[k];
    for (const auto& s : L.gens) {
      int y = s(x);
      if (!L.transversal[static_cast<std::size_t>(y)]) {
        L.transversal[static_cast<std::size_t>(y)] = then(*L.transversal[static_cast<std::size_t>(x)], s);
        L.orbit.push_back(y);
      }
    }
  }
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    int x = g(levels_[l].beta);
    const auto& u = levels_[l].transversal[static_cast<std::size_t>(x)];
    if (!u) return {g, l};
    g = then(g, u->inverse());
  }
  return {g, levels_.size()};
}

mpz_class StabilizerChain::order() const {
  mpz_class o = 1;
  for (const auto& L : levels_) o *= static_cast<unsigned long>(L.orbit.size());
  return o;
}

std::vector<int> StabilizerChain::orbit_sizes() const {
  std::vector<int> s;
  for (const auto& L : levels_) s.push_back(static_cast<int>(L.orbit.size()));
  return s;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (levels_.empty()) return g.is_identity();
  if (g.degree() != n_) return false;
  auto [res, j] = sift(g, 0);
  return j == levels_.size() && res.is_identity();
}

mpz_class group_order(const Dessin& d) { return StabilizerChain({d.a, d.b}).order(); }

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

}  // namespace

bool is_primitive(const std::vector<Permutation>& gens) {
  if (gens.empty()) return true;
  int n = gens[0].degree();
  if (n <= 2) return true;
  for (int k = 1; k < n; ++k) {
    // smallest block containing {0, k}
    UnionFind uf(n);
    std::vector<std::pair<int, int>> queue{{0, k}};
    uf.unite(0, k);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      auto [x, y] = queue[q];
      for (const auto& g : gens) {
        int gx = g(x), gy = g(y);
        if (uf.unite(gx, gy)) queue.emplace_back(gx, gy);
      }
    }
    int root = uf.find(0);
    int block = 0;
    for (int x = 0; x < n; ++x)
      if (uf.find(x) == root) ++block;
    if (block < n) return false;
  }
  return true;
}

bool is_primitive(const Dessin& d) { return is_primitive(std::vector<Permutation>{d.a, d.b}); }

Dessin canonical_form(const Dessin& d) {
  const int n = d.n;
  std::vector<int> best_a, best_b;
  std::vector<int> label(static_cast<std::size_t>(n)), order;
  for (int start = 0; start < n; ++start) {
    std::fill(label.begin(), label.end(), -1);
    order.clear();
    label[static_cast<std::size_t>(start)] = 0;
    order.push_back(start);
    for (std::size_t k = 0; k < order.size(); ++k) {
      int x = order[k];
      for (const Permutation* g : {&d.a, &d.b}) {
        int y = (*g)(x);
        if (label[static_cast<std::size_t>(y)] < 0) {
          label[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
          order.push_back(y);
        }
      }
    }
    std::vector<int> ra(static_cast<std::size_t>(n)), rb(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      ra[static_cast<std::size_t>(label[static_cast<std::size_t>(x)])] = label[static_cast<std::size_t>(d.a(x))];
      rb[static_cast<std::size_t>(label[static_cast<std::size_t>(x)])] = label[static_cast<std::size_t>(d.b(x))];
    }
    if (best_a.empty() || std::tie(ra, rb) < std::tie(best_a, best_b)) {
      best_a = std::move(ra);
      best_b = std::move(rb);
    }
  }
  return Dessin(Permutation(best_a), Permutation(best_b));
}

namespace {

// a permutation with the given cycle type, cycles on consecutive points
Permutation standard_perm(const Partition& type, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  int i = 0;
  for (int len : type) {
    for (int j = 0; j < len; ++j) v[static_cast<std::size_t>(i + j)] = i + (j + 1) % len;
    i += len;
  }
  return Permutation(std::move(v));
}

// Calls f(b) for every permutation of the given cycle type.  Each
// permutation is produced once: the smallest free point starts the next
// cycle, whose length is chosen among the remaining distinct lengths.
template <class F>
void for_each_of_type(int n, const Partition& type, F&& f) {
  std::vector<int> img(static_cast<std::size_t>(n), -1);
  std::vector<int> remaining = type;
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  std::function<bool(int)> rec;
  std::function<bool(int, int, int, int)> fill;
  // fill cycle starting at `first`, currently at `cur`, `left` points to add
  fill = [&](int first, int cur, int left, int free_count) -> bool {
    if (left == 0) {
      img[static_cast<std::size_t>(cur)] = first;
      bool stop = rec(free_count);
      img[static_cast<std::size_t>(cur)] = -1;
      return stop;
    }
    for (int y = first + 1; y < n; ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      used[static_cast<std::size_t>(y)] = 1;
      img[static_cast<std::size_t>(cur)] = y;
      bool stop = fill(first, y, left - 1, free_count - 1);
      img[static_cast<std::size_t>(cur)] = -1;
      used[static_cast<std::size_t>(y)] = 0;
      if (stop) return true;
    }
    return false;
  };
  rec = [&](int free_count) -> bool {
    if (free_count == 0) return f(Permutation(img));
    int first = 0;
    while (used[static_cast<std::size_t>(first)]) ++first;
    std::vector<int> tried;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      int len = remaining[k];
      if (std::find(tried.begin(), tried.end(), len) != tried.end()) continue;
      tried.push_back(len);
      if (len > free_count) continue;
      remaining.erase(remaining.begin() + static_cast<long>(k));
      used[static_cast<std::size_t>(first)] = 1;
      bool stop = fill(first, first, len - 1, free_count - 1);
      used[static_cast<std::size_t>(first)] = 0;
      remaining.insert(remaining.begin() + static_cast<long>(k), len);
      if (stop) return true;
    }
    return false;
  };
  rec(n);
}

bool orders_compatible(const Dessin& d, const mpz_class& target) {
  // orders of a few short words must divide the group order
  std::vector<Permutation> words{d.face(), then(then(d.a, d.b), then(d.a.inverse(), d.b)),
                                 then(then(d.a, d.a), d.b), then(then(d.face(), d.face()), d.b)};
  for (const auto& w : words)
    if (mpz_divisible_p(target.get_mpz_t(), w.order().get_mpz_t()) == 0) return false;
  return true;
}

bool passes(const Dessin& d, const RealizationFilters& f) {
  if (f.order && !orders_compatible(d, *f.order)) return false;
  if (f.primitive && !is_primitive(d)) return false;
  if (f.order && group_order(d) != *f.order) return false;
  return true;
}

}  // namespace

std::vector<Dessin> realizations_of_passport(const Passport& p, const RealizationFilters& f) {
  const int n = p.n();
  auto sum = [](const Partition& q) { return std::accumulate(q.begin(), q.end(), 0); };
  if (n <= 0 || sum(p.lambda1) != n || sum(p.lambda2) != n) throw InvalidDessin("inconsistent passport");
  int chi = static_cast<int>(p.lambda0.size() + p.lambda1.size() + p.lambda2.size()) - n;
  if (chi > 2 || (2 - chi) % 2) return {};
  if (f.genus0 && chi != 2) return {};

  Permutation a = standard_perm(p.lambda0, n);
  std::set<std::pair<std::vector<int>, std::vector<int>>> classes;
  std::vector<Dessin> out;

  auto consider = [&](const Permutation& b) -> bool {
    Permutation ab = then(a, b);
    if (ab.cycle_type() != p.lambda2) return false;
    if (!is_transitive({a, b})) return false;
    Dessin c = canonical_form(Dessin(a, b));
    auto key = std::make_pair(c.a.images(), c.b.images());
    if (!classes.insert(key).second) return false;
    if (!passes(c, f)) return false;
    out.push_back(std::move(c));
    return f.max_results && out.size() >= f.max_results;
  };

  bool random = f.force_random || n > f.exhaustive_limit_n;
  if (!random) {
    std::uint64_t seen = 0;
    for_each_of_type(n, p.lambda1, [&](const Permutation& b) {
      if (++seen > f.max_candidates) throw SearchLimitExceeded("exhaustive search limit exceeded");
      return consider(b);
    });
  } else {
    std::mt19937_64 rng(f.seed);
    std::vector<int> pts(static_cast<std::size_t>(n));
    std::vector<int> img(static_cast<std::size_t>(n));
    for (std::uint64_t t = 0; t < f.max_tries; ++t) {
      std::iota(pts.begin(), pts.end(), 0);
      std::shuffle(pts.begin(), pts.end(), rng);
      std::size_t i = 0;
      for (int len : p.lambda1) {
        for (int j = 0; j < len; ++j)
          img[static_cast<std::size_t>(pts[i + static_cast<std::size_t>(j)])] =
              pts[i + static_cast<std::size_t>((j + 1) % len)];
        i += static_cast<std::size_t>(len);
      }
      if (consider(Permutation(img))) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const Dessin& x, const Dessin& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

}  // namespace belyi
