#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "zeroent/analysis.hpp"
#include "zeroent/errors.hpp"
#include "zeroent/spec_io.hpp"
#include "zeroent/spectral.hpp"

using json = nlohmann::json;
using namespace zeroent;

namespace {

constexpr int kInputError = 2;

void print_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    std::cout << line << "\n";
  }
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const json& v, const std::string& path, std::vector<std::vector<std::string>>& rows) {
  bool scalar_array = v.is_array() && std::none_of(v.begin(), v.end(), [](const json& x) { return x.is_structured(); });
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, path + "/" + k, rows);
  } else if (v.is_array() && !scalar_array) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "/" + std::to_string(i), rows);
  } else if (scalar_array) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar(x);
    rows.push_back({path, "[" + s + "]"});
  } else {
    rows.push_back({path, scalar(v)});
  }
}

void print_section(const json& report, const std::string& key) {
  std::vector<std::vector<std::string>> rows;
  if (report.contains(key)) flatten(report[key], "/" + key, rows);
  else rows.push_back({"/" + key, "(not computed)"});
  print_table(rows);
}

struct Common {
  AnalysisOptions options;
  bool json_out = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json_out, "emit JSON instead of tables");
  cmd->add_option("--precision-bits", c.options.precision_bits, "interval width 2^-bits for real enclosures")
      ->check(CLI::Range(1u, 4096u));
  cmd->add_option("--word-budget", c.options.word_budget, "maximum word length for commutator searches");
  cmd->add_option("--group-cap", c.options.group_cap, "maximum size of an enumerated finite group");
  cmd->add_option("--seed", c.options.seed, "seed for randomized spot checks");
  cmd->add_flag("--timings", c.options.timings, "include per-stage timings");
}

// Runs the analysis on one file and prints the selected sections.
int analyze_file(const std::string& path, const Common& c, const std::vector<std::string>& sections) {
  MatrixGroupSpec spec;
  try {
    spec = load_spec(path);
  } catch (const ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kInputError;
  }
  AnalysisResult res = run_analyze(spec, c.options);
  std::vector<std::string> problems = res.violations;
  for (auto& m : compare_expectations(spec, res.report)) problems.push_back(std::move(m));
  bool failed = !problems.empty();
  if (spec.expect_violation) failed = res.violations.empty();

  if (c.json_out) {
    json out = json::object();
    if (sections.empty()) {
      out = res.report;
    } else {
      for (const auto& s : sections)
        if (res.report.contains(s)) out[s] = res.report[s];
    }
    out["problems"] = problems;
    std::cout << out.dump(2) << "\n";
  } else if (sections.empty()) {
    std::vector<std::vector<std::string>> rows;
    flatten(res.report, "", rows);
    print_table(rows);
  } else {
    for (const auto& s : sections) print_section(res.report, s);
    if (!res.stage_errors.empty()) print_section(res.report, "stage_errors");
  }
  if (!c.json_out && !problems.empty()) {
    std::cout << "\nproblems:\n";
    for (const auto& p : problems) std::cout << "  " << p << "\n";
  }
  if (spec.expect_violation && !c.json_out)
    std::cout << (res.violations.empty() ? "expected violation missing\n" : "expected violation present\n");
  return failed ? 1 : 0;
}

int exponent_table(const std::vector<std::uint64_t>& ranks, bool json_out) {
  json out = json::array();
  std::vector<std::vector<std::string>> rows{{"r", "d_list", "m_product", "m_lcm"}};
  for (auto r : ranks) {
    UniformExponent e = uniform_exponent(r);
    std::string ds;
    for (auto d : e.d_list) ds += (ds.empty() ? "" : ",") + std::to_string(d);
    rows.push_back({std::to_string(r), "{" + ds + "}", e.m_product.get_str(), e.m_lcm.get_str()});
    out.push_back({{"r", r}, {"d_list", e.d_list}, {"m_product", e.m_product.get_str()}, {"m_lcm", e.m_lcm.get_str()}});
  }
  if (json_out) std::cout << out.dump(2) << "\n";
  else print_table(rows);
  return 0;
}

int corpus(const std::string& dir, const Common& c, unsigned jobs, bool reports) {
  CorpusSummary s;
  try {
    s = run_corpus(dir, c.options, jobs);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }
  if (c.json_out) {
    std::cout << s.to_json(reports).dump(2) << "\n";
    return s.exit_code;
  }
  std::vector<std::vector<std::string>> rows{{"file", "status", "n", "ell_ess", "class", "bound"}};
  for (const auto& e : s.entries) {
    auto get = [&](const std::string& key) { return report_value(e.report, key).value_or("-"); };
    rows.push_back({e.file, to_string(e.status), get("/n"), get("ell_ess"), get("nilpotency_class"),
                    get("essential_length_bound")});
  }
  print_table(rows);
  for (const auto& e : s.entries) {
    if (!e.error.empty()) std::cout << e.file << ": " << e.error << "\n";
    for (const auto& p : e.problems) std::cout << e.file << ": " << p << "\n";
  }
  std::cout << "\n";
  std::vector<std::vector<std::string>> table{{"n", "max class", "n-1"}};
  for (const auto& row : s.table)
    table.push_back({row["n"].dump(), row["max_class"].dump(), row["n_minus_1"].dump()});
  print_table(table);
  return s.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zeroent: exact analysis of unimodular integer matrix groups"};
  app.require_subcommand(1);
  Common common;
  std::string path;
  int status = 0;

  auto* analyze = app.add_subcommand("analyze", "full report for one spec file");
  analyze->add_option("file", path, "spec document")->required();
  add_common(analyze, common);

  auto* series = app.add_subcommand("series", "derived length and nilpotency class");
  series->add_option("file", path, "spec document")->required();
  add_common(series, common);

  auto* cone = app.add_subcommand("cone-check", "cone preservation and bounded-iterate criteria");
  cone->add_option("file", path, "spec document")->required();
  add_common(cone, common);

  auto* fl = app.add_subcommand("fl-pipeline", "finite-image pipeline for generators fixing interior classes");
  fl->add_option("file", path, "spec document")->required();
  add_common(fl, common);

  unsigned jobs = 0;
  bool reports = false;
  auto* corp = app.add_subcommand("corpus", "analyze every *.json file of a directory");
  corp->add_option("dir", path, "corpus directory")->required();
  corp->add_option("--jobs", jobs, "worker threads (0 = hardware concurrency)");
  corp->add_flag("--reports", reports, "include full per-file reports in --json output");
  add_common(corp, common);

  std::vector<std::uint64_t> ranks;
  auto* exp = app.add_subcommand("exponent", "uniform exponent table");
  exp->add_option("ranks", ranks, "lattice ranks (default 1..8)");
  exp->add_flag("--json", common.json_out, "emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*analyze) status = analyze_file(path, common, {});
    else if (*series) status = analyze_file(path, common, {"unipotent_pipeline", "series", "bounds"});
    else if (*cone) status = analyze_file(path, common, {"cone"});
    else if (*fl) status = analyze_file(path, common, {"fujiki_lieberman"});
    else if (*corp) status = corpus(path, common, jobs, reports);
    else if (*exp) {
      if (ranks.empty())
        for (std::uint64_t r = 1; r <= 8; ++r) ranks.push_back(r);
      status = exponent_table(ranks, common.json_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return status;
}
