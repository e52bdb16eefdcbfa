#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "zeroent/analysis.hpp"
#include "zeroent/spec_io.hpp"

using namespace zeroent;

namespace {

std::string corpus_file(const std::string& name) { return std::string(ZEROENT_CORPUS_DIR) + "/" + name; }

AnalysisResult analyze(const std::string& name) { return run_analyze(load_spec(corpus_file(name)), {}); }

std::string value(const AnalysisResult& r, const std::string& key) { return report_value(r.report, key).value_or("?"); }

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) : path(std::filesystem::temp_directory_path() / ("zeroent-" + tag)) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

}  // namespace

TEST_CASE("Heisenberg report") {
  AnalysisResult r = analyze("heisenberg.json");
  CHECK(r.violations.empty());
  CHECK(r.stage_errors.empty());
  CHECK(value(r, "ell_ess") == "2");
  CHECK(value(r, "essential_length_bound") == "holds");
  CHECK(value(r, "pipeline_status") == "certified");
  CHECK(compare_expectations(load_spec(corpus_file("heisenberg.json")), r.report).empty());
}

TEST_CASE("positive entropy report keeps the classification") {
  AnalysisResult r = analyze("positive_entropy.json");
  CHECK(value(r, "pipeline_status") == "inapplicable");
  CHECK(value(r, "kind_1") == "PositiveEntropy");
  CHECK(r.report["classifications"][0].contains("spectral_radius"));
  CHECK(r.stage_errors.empty());
  CHECK(r.violations.empty());
}

TEST_CASE("swap on the quadrant has image order 2") {
  AnalysisResult r = analyze("swap_cone.json");
  CHECK(value(r, "image_order") == "2");
  CHECK(value(r, "/fujiki_lieberman/success") == "true");
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto& entry : std::filesystem::directory_iterator(ZEROENT_CORPUS_DIR)) {
    MatrixGroupSpec s = load_spec(entry.path().string());
    CHECK(run_analyze(s, {}).report.dump() == run_analyze(s, {}).report.dump());
  }
}

TEST_CASE("report_value resolution") {
  nlohmann::json report = {{"series", {{"derived_length", 3}}}, {"classifications", {{{"kind", "Unipotent"}}}}};
  CHECK(report_value(report, "derived_length") == "3");
  CHECK(report_value(report, "/series/derived_length") == "3");
  CHECK(report_value(report, "kind_1") == "Unipotent");
  CHECK_FALSE(report_value(report, "kind_2"));
  CHECK_FALSE(report_value(report, "kind_x"));
  CHECK_FALSE(report_value(report, "no_such_alias"));
}

TEST_CASE("expectation mismatch is reported") {
  MatrixGroupSpec s = load_spec(corpus_file("heisenberg.json"));
  s.expected["ell_ess"] = {"1", "deliberately wrong"};
  auto problems = compare_expectations(s, run_analyze(s, {}).report);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("got 2") != std::string::npos);
}

TEST_CASE("bundled corpus passes") {
  CorpusSummary s = run_corpus(ZEROENT_CORPUS_DIR, {});
  CHECK(s.exit_code == 0);
  for (const auto& e : s.entries) {
    INFO(e.file);
    CHECK((e.status == CorpusStatus::Ok || e.status == CorpusStatus::ExpectedViolation));
  }
  CHECK(run_corpus(ZEROENT_CORPUS_DIR, {}, 1).to_json(true) == s.to_json(true));
}

TEST_CASE("corpus harness semantics") {
  SUBCASE("empty directory") {
    TempDir d("empty");
    CorpusSummary s = run_corpus(d.path.string(), {});
    CHECK(s.entries.empty());
    CHECK(s.exit_code == 0);
  }
  SUBCASE("unflagged violation fails") {
    TempDir d("unflagged");
    MatrixGroupSpec v = load_spec(corpus_file("violation_heisenberg_n2.json"));
    v.expect_violation = false;
    d.write("v.json", emit_spec(v));
    CorpusSummary s = run_corpus(d.path.string(), {});
    CHECK(s.entries.at(0).status == CorpusStatus::Violation);
    CHECK(s.exit_code == 1);
  }
  SUBCASE("flag without a violation fails") {
    TempDir d("missing");
    MatrixGroupSpec h = load_spec(corpus_file("heisenberg.json"));
    h.expect_violation = true;
    d.write("h.json", emit_spec(h));
    CorpusSummary s = run_corpus(d.path.string(), {});
    CHECK(s.entries.at(0).status == CorpusStatus::MissingViolation);
    CHECK(s.exit_code == 1);
  }
  SUBCASE("unreadable file is an input error reported on its own") {
    TempDir d("input");
    d.write("a_bad.json", "{\"name\": \"x\"");
    d.write("b_good.json", emit_spec(load_spec(corpus_file("trivial.json"))));
    CorpusSummary s = run_corpus(d.path.string(), {});
    REQUIRE(s.entries.size() == 2);
    CHECK(s.entries[0].status == CorpusStatus::InputError);
    CHECK(s.entries[1].status == CorpusStatus::Ok);
    CHECK(s.exit_code == 2);
  }
}
