#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "belyi/errors.hpp"
#include "belyi/pipeline.hpp"
#include "test_util.hpp"

using namespace belyi;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("belyi-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> files_with_prefix(const fs::path& dir, const std::string& prefix) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename().string().rfind(prefix, 0) == 0) out.push_back(e.path());
  return out;
}

}  // namespace

TEST(Fnv1a, ReferenceVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(Config, Validation) {
  PipelineConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.target_digits = cfg.seed_digits;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = PipelineConfig();
  cfg.max_field_degree = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = PipelineConfig();
  cfg.lll_delta = 0.2;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(StageKeys, DependOnTheRightSettings) {
  Dessin d = fixtures::load_fixture("6.1");
  PipelineConfig a, b;
  b.max_field_degree = 4;  // recognition only
  EXPECT_EQ(numeric_stage_key(d, a), numeric_stage_key(d, b));
  EXPECT_NE(exact_stage_key(d, a), exact_stage_key(d, b));
  b = a;
  b.seed_digits = 80;
  b.target_digits = 300;
  EXPECT_NE(numeric_stage_key(d, a), numeric_stage_key(d, b));
  EXPECT_NE(numeric_stage_key(d, a), numeric_stage_key(fixtures::load_fixture("7.1"), a));
}

TEST(NumericStageFile, RoundTrip) {
  Bits prec = digits_to_bits(50);
  NumericAnsatz a;
  a.P3 = {BigComplex(BigReal(mpq_class(-5, 9), prec), BigReal(mpq_class(1, 7), prec)), BigComplex(1.0)};
  a.P1 = {BigComplex(1.0)};
  a.Q2 = {BigComplex(0.25, -3.0), BigComplex(1.0)};
  a.Q1 = {BigComplex(1.0)};
  a.R = {BigComplex(1.0)};
  a.c = BigComplex(BigReal(mpq_class(2, 9), prec), BigReal::zero(prec));
  std::vector<SeriesAttempt> series = {{24, 120, 1.5e-7, "ok"}};
  std::vector<NewtonStep> newton = {{1, 60, -15.25, -7.5, 0}, {2, 60, -31.0, -15.125, 1}};
  std::string text = serialize_numeric(a, 50, series, newton);
  long digits = 0;
  std::vector<SeriesAttempt> s2;
  std::vector<NewtonStep> n2;
  NumericAnsatz b = parse_numeric(text, &digits, &s2, &n2);
  EXPECT_EQ(digits, 50);
  EXPECT_LT(abs(b.P3[0] - a.P3[0]).log10_abs(), -50);
  EXPECT_LT(abs(b.c - a.c).log10_abs(), -50);
  ASSERT_EQ(s2.size(), 1u);
  EXPECT_EQ(s2[0].spread, 1.5e-7);
  EXPECT_EQ(s2[0].outcome, "ok");
  ASSERT_EQ(n2.size(), 2u);
  EXPECT_EQ(n2[1].log10_step, -15.125);
  EXPECT_EQ(n2[1].damping, 1);
  EXPECT_EQ(serialize_numeric(b, digits, s2, n2), text);
  EXPECT_THROW(parse_numeric("belyi-numeric 1\ndigits=10\n"), ParseError);
}

TEST(AtomicWrite, ReplacesContent) {
  TempDir dir;
  fs::path p = dir.path() / "x.txt";
  atomic_write(p, "one");
  atomic_write(p, "two");
  EXPECT_EQ(slurp(p), "two");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator()), 1);
}

TEST(Pipeline, RejectsUnsupportedInput) {
  PipelineConfig cfg;
  EXPECT_THROW(run_pipeline(parse_dessin("n=4; a=(1 2 3 4); b=()"), cfg), InvalidDessin);
  // genus 1
  EXPECT_THROW(run_pipeline(parse_dessin("n=3; a=(1 2 3); b=(1 2 3)"), cfg), InvalidDessin);
  // (2,3)-type but two faces of degree 3
  EXPECT_THROW(run_pipeline(parse_dessin("n=6; a=(1 2 3)(4 5 6); b=(1 4)(2 5)(3 6)"), cfg), InvalidDessin);
}

TEST(Pipeline, TrivialDessin) {
  PipelineConfig cfg;
  PipelineResult r = run_pipeline(parse_dessin("n=1; a=(); b=()"), cfg);
  EXPECT_TRUE(r.certified());
  EXPECT_EQ(r.exact.n(), 1);
}

TEST(Pipeline, SexticIsCertifiedAndMatchesTheCatalog) {
  PipelineConfig cfg;
  PipelineResult r = run_pipeline(fixtures::load_fixture("6.1"), cfg, "6.1");
  ASSERT_TRUE(r.certified());
  EXPECT_EQ(r.group_order, "60");
  EXPECT_TRUE(r.primitive);
  EXPECT_EQ(r.cusp_widths, (std::vector<int>{5, 1}));
  EXPECT_FALSE(r.newton_log.empty());
  CatalogEntry cat = read_catalog_file(fixtures::data_dir() / "catalog" / "orbit_6.1.txt");
  EXPECT_TRUE(affine_match(r.exact, cat.ansatz).found);
  // the bundle is itself a catalog entry
  CatalogEntry back = parse_catalog_entry(r.bundle);
  EXPECT_TRUE(identity_check(back.ansatz).ok());
  EXPECT_EQ(back.orbit, "6.1");
}

TEST(Pipeline, DeterministicBundle) {
  PipelineConfig cfg;
  Dessin d = fixtures::load_fixture("7.1");
  EXPECT_EQ(run_pipeline(d, cfg).bundle, run_pipeline(d, cfg).bundle);
}

TEST(Pipeline, CacheHitsReproduceTheColdBundle) {
  TempDir dir;
  PipelineConfig cfg;
  cfg.cache_dir = dir.path();
  Dessin d = fixtures::load_fixture("7.2");
  PipelineResult cold = run_pipeline(d, cfg);
  EXPECT_FALSE(cold.numeric_from_cache);
  EXPECT_EQ(files_with_prefix(dir.path(), "numeric-").size(), 1u);
  ASSERT_EQ(files_with_prefix(dir.path(), "exact-").size(), 1u);

  PipelineResult hot = run_pipeline(d, cfg);
  EXPECT_TRUE(hot.exact_from_cache);
  EXPECT_EQ(hot.bundle, cold.bundle);

  // with only the numeric stage cached the exact stage is redone
  fs::remove(files_with_prefix(dir.path(), "exact-").front());
  PipelineResult warm = run_pipeline(d, cfg);
  EXPECT_TRUE(warm.numeric_from_cache);
  EXPECT_FALSE(warm.exact_from_cache);
  EXPECT_EQ(warm.bundle, cold.bundle);

  // and without a cache the same bytes come out
  PipelineConfig plain;
  EXPECT_EQ(run_pipeline(d, plain).bundle, cold.bundle);
}
