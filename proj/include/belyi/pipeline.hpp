#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "belyi/dessin.hpp"
#include "belyi/exact.hpp"
#include "belyi/newton.hpp"

namespace belyi {

struct PipelineConfig {
  long seed_digits = 60;
  long target_digits = 240;
  int points_per_arc = 3;
  int series_n_start = 0;  // 0: 4n
  int max_field_degree = 8;
  double lll_delta = 0.99;
  std::optional<std::filesystem::path> cache_dir;
  bool deterministic = true;  // off: wall-clock timings go into the bundle
  int max_series_n = 4096;
  long max_target_digits = 4000;

  // throws Error when target < 2 seed or max degree < 1, etc.
  void validate() const;
};

struct SeriesAttempt {
  int N;
  long digits;
  double spread;    // largest deviation within a vertex class
  std::string outcome;
};

struct RecognitionAttempt {
  long digits;
  std::string outcome;
};

struct PipelineResult {
  Dessin dessin;
  std::string orbit;
  Passport passport;
  std::string group_order;
  bool primitive = false;
  std::vector<int> cusp_widths;

  std::vector<SeriesAttempt> series_log;
  std::vector<NewtonStep> newton_log;
  std::vector<RecognitionAttempt> recognition_log;
  long final_digits = 0;

  ExactAnsatz exact;
  IdentityReport identity;
  Passport symbolic;
  bool numeric_from_cache = false;
  bool exact_from_cache = false;
  double seconds = 0;
  std::string bundle;  // format_bundle output, or the cached bytes

  bool certified() const { return identity.ok() && symbolic == passport; }
};

// Every stage in order.  Throws InvalidDessin for unsuitable input,
// NumericError (series or Newton), RecognitionFailure, VerificationFailure.
PipelineResult run_pipeline(const Dessin& d, const PipelineConfig& cfg, const std::string& orbit = "");

// Result bundle: the catalog-entry format followed by '#' comment lines
// with the recognition report and iteration log.  Identical inputs give
// identical bytes when cfg.deterministic is set.
std::string format_bundle(const PipelineResult& r, const PipelineConfig& cfg);

// Human-readable report with the polynomials written out.
std::string format_report(const PipelineResult& r);

// 64-bit FNV-1a
std::uint64_t fnv1a(const std::string& s);

// Stage keys: the numeric stage depends on the dessin and the numeric
// settings, the exact stage additionally on the recognition settings.
std::string numeric_stage_key(const Dessin& d, const PipelineConfig& cfg);
std::string exact_stage_key(const Dessin& d, const PipelineConfig& cfg);

// BELYI_CACHE_DIR, when set and non-empty
std::optional<std::filesystem::path> cache_dir_from_env();

// write to a temporary file in the same directory, then rename
void atomic_write(const std::filesystem::path& path, const std::string& content);

// The numeric stage file also carries the series and Newton logs.
std::string serialize_numeric(const NumericAnsatz& a, long digits, const std::vector<SeriesAttempt>& series = {},
                              const std::vector<NewtonStep>& newton = {});
NumericAnsatz parse_numeric(const std::string& text, long* digits = nullptr,
                            std::vector<SeriesAttempt>* series = nullptr, std::vector<NewtonStep>* newton = nullptr);

}  // namespace belyi
