// belyi: compute, verify and enumerate Belyi functions of (2,3)-type trees.
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "belyi/dessin.hpp"
#include "belyi/errors.hpp"
#include "belyi/exact.hpp"
#include "belyi/pipeline.hpp"

namespace fs = std::filesystem;
using namespace belyi;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumeric = 2, kRecognition = 3, kVerification = 4 };

int exit_code(const std::exception& e) {
  if (dynamic_cast<const NumericError*>(&e) || dynamic_cast<const SearchLimitExceeded*>(&e)) return kNumeric;
  if (dynamic_cast<const RecognitionFailure*>(&e)) return kRecognition;
  if (dynamic_cast<const VerificationFailure*>(&e)) return kVerification;
  return kUsage;
}

const char* stage_of(int code) {
  switch (code) {
    case kNumeric:
      return "numeric";
    case kRecognition:
      return "recognition";
    case kVerification:
      return "verification";
    default:
      return "input";
  }
}

fs::path catalog_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* v = std::getenv("BELYI_CATALOG_DIR"); v && *v) return v;
  return BELYI_DEFAULT_CATALOG;
}

// a file path, or an orbit label such as 6.1 looked up in the catalog
CatalogEntry load_entry(const std::string& what, const fs::path& catdir) {
  if (fs::exists(what)) return read_catalog_file(what);
  fs::path p = catdir / ("orbit_" + what + ".txt");
  if (fs::exists(p)) return read_catalog_file(p);
  throw ParseError("no such result file or catalog orbit: " + what);
}

// runs f(i) for i < n on up to `jobs` threads
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) f(i);
    });
  for (auto& th : pool) th.join();
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// --- compute ------------------------------------------------------------------

struct ComputeArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string cache;
  unsigned jobs = default_jobs();
  bool timings = false;
  bool quiet = false;
  PipelineConfig cfg;
};

int cmd_compute(ComputeArgs& a) {
  if (!a.cache.empty()) a.cfg.cache_dir = fs::path(a.cache);
  else a.cfg.cache_dir = cache_dir_from_env();
  a.cfg.deterministic = !a.timings;
  try {
    a.cfg.validate();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const bool many = a.inputs.size() > 1;
  if (many && !a.output.empty() && fs::exists(a.output) && !fs::is_directory(a.output)) {
    std::cerr << "error: with several inputs --output must be a directory\n";
    return kUsage;
  }

  std::vector<int> codes(a.inputs.size(), kOk);
  std::vector<std::string> reports(a.inputs.size());
  parallel_for(a.inputs.size(), a.jobs, [&](std::size_t i) {
    const std::string& in = a.inputs[i];
    std::ostringstream os;
    try {
      DessinFile df = read_dessin_file(in);
      PipelineResult r = run_pipeline(df.dessin, a.cfg, df.orbit);
      fs::path out;
      std::string stem = fs::path(in).stem().string() + ".result.txt";
      if (a.output.empty()) out = stem;
      else if (many || fs::is_directory(a.output)) out = fs::path(a.output) / stem;
      else out = a.output;
      atomic_write(out, r.bundle);
      if (!a.quiet) os << format_report(r);
      os << in << ": " << (r.certified() ? "certified" : "NOT certified") << ", result written to " << out.string()
         << "\n";
      codes[i] = r.certified() ? kOk : kVerification;
    } catch (const std::exception& e) {
      codes[i] = exit_code(e);
      os << in << ": " << stage_of(codes[i]) << " stage failed: " << e.what() << "\n";
    }
    reports[i] = os.str();
  });
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) std::cout << "\n";
    std::cout << reports[i];
  }
  return *std::max_element(codes.begin(), codes.end());
}

// --- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> inputs;
  bool catalog = false;
  std::string catalog_dir;
  std::string match;
  unsigned jobs = default_jobs();
};

int verify_catalog(const VerifyArgs& a) {
  std::vector<CatalogEntry> entries = load_catalog(catalog_dir(a.catalog_dir));
  std::vector<CatalogCheck> checks(entries.size());
  parallel_for(entries.size(), a.jobs, [&](std::size_t i) { checks[i] = run_catalog({entries[i]})[0]; });
  int failures = 0;
  std::printf("%-7s %-26s %-14s %-8s %s\n", "orbit", "passport", "group", "identity", "passport");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& c = checks[i];
    bool ok = c.identity.ok() && c.passport_ok;
    failures += !ok;
    std::printf("%-7s %-26s %-14s %-8s %s\n", c.orbit.c_str(), entries[i].passport.c_str(), entries[i].group.c_str(),
                c.identity.ok() ? "pass" : "FAIL", c.passport_ok ? "pass" : ("FAIL " + c.symbolic).c_str());
  }
  std::printf("%zu entries, %d failed\n", entries.size(), failures);
  return failures ? kVerification : kOk;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.catalog) return verify_catalog(a);
  if (a.inputs.empty()) {
    std::cerr << "error: give result files or orbit labels, or --catalog\n";
    return kUsage;
  }
  fs::path catdir = catalog_dir(a.catalog_dir);
  int code = kOk;
  std::optional<CatalogEntry> against;
  try {
    if (!a.match.empty()) against = load_entry(a.match, catdir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (const auto& in : a.inputs) {
    try {
      CatalogEntry e = load_entry(in, catdir);
      IdentityReport id = identity_check(e.ansatz);
      Passport sym = symbolic_passport(e.ansatz);
      bool pp = sym == Passport::parse(e.passport);
      std::cout << in << ": identity " << (id.ok() ? "pass" : "FAIL (" + id.detail + ")") << ", passport "
                << sym.to_string() << (pp ? " pass" : " FAIL") << "\n";
      if (!id.ok() || !pp) code = std::max<int>(code, kVerification);
      if (against) {
        AffineMatch m = affine_match(e.ansatz, against->ansatz);
        if (m.found) {
          std::cout << "  matches " << a.match << ": z -> A z + B with A = " << pretty(m.A) << ", B = " << pretty(m.B);
          if (m.field->degree() > 1) std::cout << " in Q(a), " << m.field->to_string() << " = 0";
          if (m.root_index >= 0 && !m.root.empty()) std::cout << "; conjugate root " << m.root;
          std::cout << "\n";
        } else {
          std::cout << "  does not match " << a.match << ": " << m.detail << "\n";
          code = std::max<int>(code, kVerification);
        }
      }
    } catch (const std::exception& e) {
      std::cout << in << ": " << e.what() << "\n";
      code = std::max(code, exit_code(e));
    }
  }
  return code;
}

// --- enumerate ----------------------------------------------------------------

struct EnumerateArgs {
  std::string passport;
  bool primitive = false;
  std::string order;
  std::string out;
  std::string prefix = "class";
  std::string orbit;
  std::size_t max_results = 0;
  std::uint64_t seed = 1;
  bool random = false;
};

int cmd_enumerate(const EnumerateArgs& a) {
  try {
    Passport p = Passport::parse(a.passport);
    RealizationFilters f;
    f.primitive = a.primitive;
    if (!a.order.empty()) f.order = mpz_class(a.order);
    f.max_results = a.max_results;
    f.seed = a.seed;
    f.force_random = a.random;
    std::vector<Dessin> classes = realizations_of_passport(p, f);
    if (classes.empty()) {
      std::cerr << "no dessin with passport " << p.to_string() << " passes the filters\n";
      return kUsage;
    }
    if (!a.out.empty()) fs::create_directories(a.out);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const Dessin& d = classes[i];
      std::cout << i + 1 << "  " << d.to_line() << "  order " << group_order(d).get_str()
                << (is_primitive(d) ? "  primitive" : "  imprimitive");
      if (!a.out.empty()) {
        fs::path file = fs::path(a.out) / (a.prefix + "-" + std::to_string(i + 1) + ".dessin");
        atomic_write(file, format_dessin_file(d, a.orbit));
        std::cout << "  -> " << file.string();
      }
      std::cout << "\n";
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Belyi functions of (2,3)-type weighted trees"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "compute and certify the Belyi function of dessin files");
  compute->add_option("dessin", ca.inputs, "dessin file(s)")->required()->check(CLI::ExistingFile);
  compute->add_option("--precision", ca.cfg.seed_digits, "working digits for the seed and first Newton steps")
      ->capture_default_str();
  compute->add_option("--target", ca.cfg.target_digits, "digits reached by Newton before recognition")
      ->capture_default_str();
  compute->add_option("--points", ca.cfg.points_per_arc, "minimum sample points per boundary arc")
      ->capture_default_str();
  compute->add_option("--series-n", ca.cfg.series_n_start, "first series truncation (default 4n)");
  compute->add_option("--max-degree", ca.cfg.max_field_degree, "largest number field degree tried")
      ->capture_default_str();
  compute->add_option("--lll-delta", ca.cfg.lll_delta, "LLL reduction parameter")->capture_default_str();
  compute->add_option("--cache", ca.cache, "cache directory (overrides BELYI_CACHE_DIR)");
  compute->add_option("-o,--output", ca.output, "result file, or directory for several inputs");
  compute->add_option("-j,--jobs", ca.jobs, "inputs processed in parallel");
  compute->add_flag("--timings", ca.timings, "record wall-clock time in the result (not reproducible)");
  compute->add_flag("-q,--quiet", ca.quiet, "only print the one-line status");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "re-check stored results or the catalog exactly");
  verify->add_option("result", va.inputs, "result files or catalog orbit labels");
  verify->add_flag("--catalog", va.catalog, "check every catalog entry");
  verify->add_option("--catalog-dir", va.catalog_dir, "catalog directory (default: BELYI_CATALOG_DIR or built-in)");
  verify->add_option("--match", va.match, "also look for an affine match with this result or orbit label");
  verify->add_option("-j,--jobs", va.jobs, "entries checked in parallel");

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "list dessins with a passport, one per conjugacy class");
  enumerate->add_option("passport", ea.passport, "e.g. \"(3^2|2^2 1^2|5 1)\"")->required();
  enumerate->add_flag("--primitive", ea.primitive, "keep primitive groups only");
  enumerate->add_option("--order", ea.order, "keep groups of this order only");
  enumerate->add_option("--out", ea.out, "write one dessin file per class here");
  enumerate->add_option("--prefix", ea.prefix, "file name prefix")->capture_default_str();
  enumerate->add_option("--orbit", ea.orbit, "orbit label recorded in the files");
  enumerate->add_option("--max", ea.max_results, "stop after this many classes");
  enumerate->add_option("--seed", ea.seed, "seed of the randomized search")->capture_default_str();
  enumerate->add_flag("--random", ea.random, "randomized search even for small n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  if (*compute) return cmd_compute(ca);
  if (*verify) return cmd_verify(va);
  return cmd_enumerate(ea);
}
