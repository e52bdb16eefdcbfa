#pragma once

#include <cstdint>
#include <optional>
#include <json.hpp>
#include <string>
#include <vector>

#include "zeroent/group_spec.hpp"

namespace zeroent {

struct AnalysisOptions {
  unsigned precision_bits = 32;  // interval width 2^-bits
  std::size_t word_budget = 10;
  std::size_t group_cap = 1000000;
  std::uint64_t seed = 1;
  bool timings = false;
};

struct AnalysisResult {
  nlohmann::json report;                // keys sorted; identical across runs without timings
  std::vector<std::string> violations;  // asserted invariants that failed
  std::vector<std::string> stage_errors;
};

/// Runs every applicable stage; a stage that throws is recorded and the
/// independent stages after it still run.
AnalysisResult run_analyze(const MatrixGroupSpec& spec, const AnalysisOptions& options);

/// Resolves an expectation key against a report: either a JSON pointer
/// ("/series/derived_length") or a short alias such as "ell_ess" or "kind_2".
std::optional<std::string> report_value(const nlohmann::json& report, const std::string& key);

/// Differences between a spec's expected annotations and the report.
std::vector<std::string> compare_expectations(const MatrixGroupSpec& spec, const nlohmann::json& report);

enum class CorpusStatus { Ok, Violation, ExpectedViolation, MissingViolation, InputError };
std::string to_string(CorpusStatus s);

struct CorpusEntry {
  std::string file;  // name relative to the corpus directory
  CorpusStatus status = CorpusStatus::Ok;
  std::string error;
  std::vector<std::string> problems;  // violations and expectation mismatches
  nlohmann::json report;
};

struct CorpusSummary {
  std::vector<CorpusEntry> entries;  // sorted by file name
  nlohmann::json table;              // per-n maximum nilpotency class against n - 1
  int exit_code = 0;                 // 0 pass, 1 invariant violation, 2 input error

  nlohmann::json to_json(bool with_reports) const;
};

/// Analyzes every *.json file of a directory concurrently (jobs = 0 picks the
/// hardware concurrency). A file with expect_violation passes exactly when it
/// has a violation.
CorpusSummary run_corpus(const std::string& directory, const AnalysisOptions& options, unsigned jobs = 0);

}  // namespace zeroent
