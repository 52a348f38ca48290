#include "belyi/pipeline.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "belyi/domain.hpp"
#include "belyi/errors.hpp"
#include "belyi/recognition.hpp"
#include "belyi/series.hpp"

namespace belyi {

void PipelineConfig::validate() const {
  if (seed_digits < 20) throw Error("seed precision must be at least 20 digits");
  if (target_digits < 2 * seed_digits) throw Error("target precision must be at least twice the seed precision");
  if (max_field_degree < 1) throw Error("maximum field degree must be at least 1");
  if (points_per_arc < 1) throw Error("points per arc must be positive");
  if (series_n_start < 0) throw Error("series truncation must be positive");
  if (!(lll_delta > 0.25 && lll_delta < 1.0)) throw Error("LLL delta must lie in (1/4, 1)");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt(double x, const char* f = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

long series_digits(const PipelineConfig& cfg) { return std::max(50L, 2 * cfg.seed_digits); }

}  // namespace

std::string numeric_stage_key(const Dessin& d, const PipelineConfig& cfg) {
  std::ostringstream os;
  os << "numeric 1|" << d.to_line() << "|seed=" << cfg.seed_digits << "|target=" << cfg.target_digits
     << "|points=" << cfg.points_per_arc << "|nstart=" << cfg.series_n_start << "|nmax=" << cfg.max_series_n;
  return os.str();
}

std::string exact_stage_key(const Dessin& d, const PipelineConfig& cfg) {
  std::ostringstream os;
  os << numeric_stage_key(d, cfg) << "|exact 1|maxdeg=" << cfg.max_field_degree << "|delta=" << fmt(cfg.lll_delta)
     << "|maxtarget=" << cfg.max_target_digits << "|det=" << cfg.deterministic;
  return os.str();
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* v = std::getenv("BELYI_CACHE_DIR");
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ostringstream tmpname;
  tmpname << path.string() << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  std::filesystem::path tmp(tmpname.str());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::optional<std::string> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// --- numeric stage serialization ----------------------------------------------

std::string serialize_numeric(const NumericAnsatz& a, long digits, const std::vector<SeriesAttempt>& series,
                              const std::vector<NewtonStep>& newton) {
  std::ostringstream os;
  const int sig = static_cast<int>(digits + 10);
  auto num = [&](const BigComplex& z) { return z.re().str(sig) + " " + z.im().str(sig); };
  os << "belyi-numeric 1\n";
  os << "digits=" << digits << "\n";
  os << "c=" << num(a.c) << "\n";
  static const char* names[5] = {"P3", "P1", "Q2", "Q1", "R"};
  for (int k = 0; k < 5; ++k) {
    os << names[k] << "=";
    const CPoly& p = a.poly(k);
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ";" : "") << num(p[i]);
    os << "\n";
  }
  char buf[64];
  auto g = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  for (const auto& s : series) os << "series=" << s.N << " " << s.digits << " " << g(s.spread) << " " << s.outcome << "\n";
  for (const auto& s : newton)
    os << "newton=" << s.step << " " << s.digits << " " << g(s.log10_residual) << " " << g(s.log10_step) << " "
       << s.damping << "\n";
  return os.str();
}

NumericAnsatz parse_numeric(const std::string& text, long* digits_out, std::vector<SeriesAttempt>* series,
                            std::vector<NewtonStep>* newton) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "belyi-numeric 1") throw ParseError("missing 'belyi-numeric 1' header");
  long digits = 0;
  NumericAnsatz a;
  Bits prec = 0;
  auto parse_c = [&](const std::string& s) {
    std::istringstream ps(s);
    std::string re, im;
    if (!(ps >> re >> im)) throw ParseError("bad complex number '" + s + "'");
    return BigComplex(BigReal::parse(re, prec), BigReal::parse(im, prec));
  };
  bool have[6] = {false, false, false, false, false, false};
  while (std::getline(is, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "digits") {
      digits = std::stol(val);
      prec = digits_to_bits(digits + 20);
      continue;
    }
    if (key == "series" || key == "newton") {
      std::istringstream ls(val);
      if (key == "series") {
        SeriesAttempt at{0, 0, 0, ""};
        std::string spread;
        if (!(ls >> at.N >> at.digits >> spread)) throw ParseError("bad series line '" + val + "'");
        at.spread = std::strtod(spread.c_str(), nullptr);
        std::getline(ls >> std::ws, at.outcome);
        if (series) series->push_back(at);
      } else {
        NewtonStep st{0, 0, 0, 0, 0};
        std::string res, step;
        if (!(ls >> st.step >> st.digits >> res >> step >> st.damping)) throw ParseError("bad newton line '" + val + "'");
        st.log10_residual = std::strtod(res.c_str(), nullptr);
        st.log10_step = std::strtod(step.c_str(), nullptr);
        if (newton) newton->push_back(st);
      }
      continue;
    }
    if (!prec) throw ParseError("digits must come first");
    if (key == "c") {
      a.c = parse_c(val);
      have[5] = true;
      continue;
    }
    static const char* names[5] = {"P3", "P1", "Q2", "Q1", "R"};
    for (int k = 0; k < 5; ++k) {
      if (key != names[k]) continue;
      CPoly p;
      std::istringstream ps(val);
      std::string item;
      while (std::getline(ps, item, ';')) p.push_back(parse_c(item));
      a.poly(k) = std::move(p);
      have[k] = true;
    }
  }
  for (bool h : have)
    if (!h) throw ParseError("incomplete numeric stage file");
  if (digits_out) *digits_out = digits;
  return a;
}

// --- the pipeline ----------------------------------------------------------------

namespace {

// Newton must stay near the seed; a large jump means it found some other
// solution of the same system
void check_near(const NumericAnsatz& seed, const NumericAnsatz& refined) {
  for (int k = 0; k < 4; ++k) {
    const CPoly& s = seed.poly(k);
    const CPoly& r = refined.poly(k);
    for (std::size_t i = 0; i < s.size(); ++i) {
      double scale = std::max(1.0, abs(s[i]).to_double());
      if (abs(s[i] - r[i]).to_double() > 1e-2 * scale)
        throw NewtonFailure("Newton moved far from the seed; refusing the solution");
    }
  }
}

struct NumericStage {
  NumericAnsatz ansatz;
  long digits;
};

NumericStage solve_numeric(const FundamentalDomain& dom, const Passport& p, const PipelineConfig& cfg,
                           PipelineResult& r) {
  const int n = p.n();
  int N = cfg.series_n_start > 0 ? cfg.series_n_start : 4 * n;
  const long sd = series_digits(cfg);
  std::string last = "no attempt";
  for (; N <= cfg.max_series_n; N *= 2) {
    SeriesAttempt at{N, sd, 0, ""};
    try {
      TruncatedSeries s = solve_modular_function(dom, p, N, cfg.points_per_arc, sd);
      VertexEstimates est = vertex_estimates(dom, s);
      at.spread = est.max_spread;
      if (est.max_spread > 1e-3) throw SeedRejected("vertex classes not yet consistent");
      NumericAnsatz seed = seed_ansatz(est, p, cfg.seed_digits);
      NewtonConfig nc;
      nc.start_digits = cfg.seed_digits;
      nc.target_digits = cfg.target_digits;
      NewtonResult nr = newton_solve(seed, p, nc);
      check_near(seed, nr.ansatz);
      at.outcome = "ok";
      r.series_log.push_back(at);
      r.newton_log = nr.log;
      return {nr.ansatz, cfg.target_digits};
    } catch (const NumericError& e) {
      at.outcome = e.what();
      last = e.what();
      r.series_log.push_back(at);
    }
  }
  throw NumericError("series and Newton stages failed up to N = " + std::to_string(N / 2) + ": " + last);
}

}  // namespace

PipelineResult run_pipeline(const Dessin& d, const PipelineConfig& cfg, const std::string& orbit) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  PipelineResult r;
  r.dessin = d;
  r.orbit = orbit;
  if (!is_23_type(d))
    throw InvalidDessin("dessin is not of (2,3)-type: black vertices must have degree 1 or 3 and white vertices "
                        "degree 1 or 2");
  if (genus(d) != 0) throw InvalidDessin("dessin has genus " + std::to_string(genus(d)) + ", expected 0");
  if (!is_weighted_tree(d)) throw InvalidDessin("dessin is not a weighted tree: more than one face of degree > 1");
  r.passport = passport(d);
  r.group_order = group_order(d).get_str();
  r.primitive = is_primitive(d);
  r.cusp_widths = cusp_widths(d);
  FundamentalDomain dom = coset_domain(d);

  std::optional<std::filesystem::path> num_path, exact_path;
  if (cfg.cache_dir) {
    num_path = *cfg.cache_dir / ("numeric-" + hex(fnv1a(numeric_stage_key(d, cfg))) + ".txt");
    exact_path = *cfg.cache_dir / ("exact-" + hex(fnv1a(exact_stage_key(d, cfg))) + ".txt");
    if (auto text = slurp(*exact_path)) {
      CatalogEntry e = parse_catalog_entry(*text);
      r.exact = e.ansatz;
      r.identity = identity_check(r.exact);
      r.symbolic = symbolic_passport(r.exact);
      r.exact_from_cache = true;
      r.bundle = *text;
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  }

  NumericStage num{};
  bool have_num = false;
  if (num_path) {
    if (auto text = slurp(*num_path)) {
      num.ansatz = parse_numeric(*text, &num.digits, &r.series_log, &r.newton_log);
      have_num = true;
      r.numeric_from_cache = true;
    }
  }
  if (!have_num) {
    num = solve_numeric(dom, r.passport, cfg, r);
    if (num_path) atomic_write(*num_path, serialize_numeric(num.ansatz, num.digits, r.series_log, r.newton_log));
  }

  long digits = num.digits;
  bool had_candidate = false;
  std::string last;
  for (;;) {
    RecognitionAttempt at{digits, ""};
    try {
      ExactAnsatz e = exactify(num.ansatz, r.passport, cfg.max_field_degree, digits, cfg.lll_delta);
      had_candidate = true;
      IdentityReport id = identity_check(e);
      Passport sym = symbolic_passport(e);
      if (id.ok() && sym == r.passport) {
        at.outcome = "ok, field of degree " + std::to_string(e.field->degree());
        r.recognition_log.push_back(at);
        r.exact = std::move(e);
        r.identity = id;
        r.symbolic = sym;
        break;
      }
      at.outcome = id.ok() ? "passport " + sym.to_string() + " differs" : "identity fails: " + id.detail;
    } catch (const RecognitionFailure& e) {
      at.outcome = e.what();
    }
    last = at.outcome;
    r.recognition_log.push_back(at);
    if (2 * digits > cfg.max_target_digits) {
      if (had_candidate) throw VerificationFailure("no certified result up to " + std::to_string(digits) + " digits: " + last);
      throw RecognitionFailure("recognition failed up to " + std::to_string(digits) + " digits: " + last);
    }
    NewtonConfig nc;
    nc.start_digits = digits;
    nc.target_digits = 2 * digits;
    NewtonResult nr = newton_solve(num.ansatz, r.passport, nc);
    for (auto& s : nr.log) {
      s.step += static_cast<int>(r.newton_log.size());
      r.newton_log.push_back(s);
    }
    digits *= 2;
    num = {nr.ansatz, digits};
    if (num_path) atomic_write(*num_path, serialize_numeric(num.ansatz, num.digits, r.series_log, r.newton_log));
  }
  r.final_digits = digits;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.bundle = format_bundle(r, cfg);
  if (exact_path) atomic_write(*exact_path, r.bundle);
  return r;
}

std::string format_bundle(const PipelineResult& r, const PipelineConfig& cfg) {
  CatalogEntry e;
  e.orbit = r.orbit;
  e.passport = r.passport.to_string();
  e.ansatz = r.exact;
  std::ostringstream os;
  os << format_catalog_entry(e);
  os << "# dessin " << r.dessin.to_line() << "\n";
  os << "# group order " << r.group_order << (r.primitive ? ", primitive" : ", imprimitive") << "\n";
  os << "# cusp widths";
  for (int w : r.cusp_widths) os << " " << w;
  os << "\n";
  for (const auto& s : r.series_log)
    os << "# series N=" << s.N << " digits=" << s.digits << " spread=" << fmt(s.spread) << " " << s.outcome << "\n";
  for (const auto& s : r.newton_log)
    os << "# newton step=" << s.step << " digits=" << s.digits << " log10res=" << fmt(s.log10_residual, "%.2f")
       << " log10step=" << fmt(s.log10_step, "%.2f") << " damping=" << s.damping << "\n";
  for (const auto& a : r.recognition_log) os << "# recognition digits=" << a.digits << " " << a.outcome << "\n";
  os << "# identity " << (r.identity.ok() ? "pass" : "FAIL " + r.identity.detail) << "\n";
  os << "# symbolic passport " << r.symbolic.to_string() << "\n";
  if (!cfg.deterministic) os << "# seconds " << fmt(r.seconds) << "\n";
  return os.str();
}

std::string format_report(const PipelineResult& r) {
  std::ostringstream os;
  const ExactAnsatz& a = r.exact;
  if (!r.orbit.empty()) os << "orbit     " << r.orbit << "\n";
  os << "dessin    " << r.dessin.to_line() << "\n";
  os << "passport  " << r.passport.to_string() << "\n";
  os << "group     order " << r.group_order << (r.primitive ? ", primitive" : ", imprimitive") << "\n";
  if (a.field->degree() == 1) {
    os << "field     Q\n";
  } else {
    os << "field     Q(a), " << a.field->to_string() << " = 0";
    if (a.field->has_embedding()) os << ", a = " << a.field->embedding(digits_to_bits(30)).str(15);
    os << "\n";
  }
  if (r.exact_from_cache) os << "stages    exact result from cache\n";
  else if (r.numeric_from_cache) os << "stages    numeric solution from cache\n";
  if (!r.series_log.empty()) {
    const auto& s = r.series_log.back();
    os << "series    N = " << s.N << ", vertex spread " << fmt(s.spread) << "\n";
  }
  if (!r.newton_log.empty())
    os << "newton    " << r.newton_log.size() << " steps, final log10 residual "
       << fmt(r.newton_log.back().log10_residual, "%.1f") << "\n";
  if (r.final_digits) os << "digits    " << r.final_digits << "\n";
  os << "\n";
  os << "P3 = " << pretty(a.P3) << "\n";
  os << "P1 = " << pretty(a.P1) << "\n";
  os << "Q2 = " << pretty(a.Q2) << "\n";
  os << "Q1 = " << pretty(a.Q1) << "\n";
  os << "R  = " << pretty(a.R) << "\n";
  os << "c  = " << pretty(a.c) << "\n";
  os << "beta(z) = P3^3 P1 / (c R),  beta(z) - 1 = Q2^2 Q1 / (c R)\n\n";
  os << "identity  " << (r.identity.ok() ? "pass" : "FAIL: " + r.identity.detail) << "\n";
  os << "passport  " << r.symbolic.to_string() << (r.symbolic == r.passport ? " (matches)" : " (MISMATCH)") << "\n";
  return os.str();
}

}  // namespace belyi
