#include "zeroent/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <thread>

#include "zeroent/cone.hpp"
#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"
#include "zeroent/series.hpp"
#include "zeroent/spec_io.hpp"
#include "zeroent/spectral.hpp"
#include "zeroent/unipotent.hpp"

namespace zeroent {

using json = nlohmann::json;

namespace {

constexpr std::size_t kEntropySearchCap = 20000;
constexpr std::size_t kFiniteImageCap = 100000;

json interval_json(const RealInterval& x) {
  return {{"lo", x.lo.get_str()}, {"hi", x.hi.get_str()}, {"enclosure", to_string(x, 6)}};
}

json classification_json(std::size_t index, const EntropyClassification& c) {
  json out = {{"generator", index + 1}, {"kind", to_string(c.kind)}, {"residual", c.residual.to_string()}};
  json prof = json::array();
  for (const auto& f : c.cyclotomic_profile) prof.push_back({{"order", f.order}, {"multiplicity", f.multiplicity}});
  out["cyclotomic_profile"] = prof;
  if (c.quasi_order) out["quasi_order"] = c.quasi_order->get_str();
  if (c.spectral_radius) out["spectral_radius"] = interval_json(*c.spectral_radius);
  return out;
}

std::string algebra_word_string(const std::vector<std::size_t>& w) {
  std::string s;
  for (std::size_t i : w) s += (s.empty() ? "" : " ") + std::string("N") + std::to_string(i + 1);
  return s;
}

json word_or_null(const std::optional<Word>& w) { return w ? json(to_string(*w)) : json(nullptr); }

bool positive_entropy(const IntMatrix& m) {
  IntPolynomial f = char_poly(m);
  return abs(f.coeff(0)) != 1 || !strip_cyclotomic_factors(f).residual.is_constant();
}

class Analyzer {
 public:
  Analyzer(const MatrixGroupSpec& spec, const AnalysisOptions& options)
      : spec_(spec), opt_(options), width_(width_from_bits(options.precision_bits)) {}

  AnalysisResult run() {
    json& r = result_.report;
    r["name"] = spec_.name;
    r["r"] = spec_.r;
    if (spec_.n) r["n"] = *spec_.n;
    r["seed"] = std::to_string(opt_.seed);
    r["precision_bits"] = opt_.precision_bits;
    r["word_budget"] = opt_.word_budget;

    stage("classification", [&] { classify(); });
    stage("group_entropy", [&] { group_entropy(); });
    stage("unipotent_pipeline", [&] { pipeline(); });
    stage("series", [&] { series(); });
    stage("bounds", [&] { bounds(); });
    stage("dynamical_degrees", [&] { degrees(); });
    if (spec_.cone) stage("cone", [&] { cone(); });
    if (spec_.cone && spec_.fixed_classes) stage("fujiki_lieberman", [&] { fujiki_lieberman(); });

    r["violations"] = result_.violations;
    r["stage_errors"] = result_.stage_errors;
    if (opt_.timings) r["timings_ms"] = timings_;
    return std::move(result_);
  }

 private:
  void stage(const std::string& name, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const PreconditionError& e) {
      result_.stage_errors.push_back(name + ": " + e.what());
    } catch (const std::logic_error& e) {
      result_.violations.push_back(name + ": internal consistency check failed: " + e.what());
    } catch (const std::exception& e) {
      result_.stage_errors.push_back(name + ": " + e.what());
    }
    timings_[name] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  void violation(const std::string& what) { result_.violations.push_back(what); }

  void classify() {
    json arr = json::array();
    for (std::size_t i = 0; i < spec_.generators.size(); ++i) {
      classes_.push_back(classify_entropy(spec_.generators[i], width_));
      arr.push_back(classification_json(i, classes_.back()));
    }
    result_.report["classifications"] = arr;
  }

  // Zero entropy of every element is certified only for unipotent or finite
  // images; otherwise only a bounded word search is reported.
  void group_entropy() {
    json out;
    out["anchor"] = "zero-entropy group";
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i].kind == EntropyKind::PositiveEntropy) {
        out["status"] = "positive-entropy";
        out["witness"] = "g" + std::to_string(i + 1);
        result_.report["group_entropy"] = out;
        return;
      }
    bool all_unipotent = std::all_of(classes_.begin(), classes_.end(),
                                     [](const EntropyClassification& c) { return c.kind == EntropyKind::Unipotent; });
    if (all_unipotent && certify_unipotent_group(spec_.generators, 0, spec_.r).certified()) {
      out["status"] = "zero-entropy-certified";
      out["detail"] = "the group is unipotent";
      result_.report["group_entropy"] = out;
      return;
    }
    bool finite_order = true;
    for (std::size_t i = 0; i < classes_.size(); ++i)
      finite_order = finite_order && spec_.generators[i].power(*classes_[i].quasi_order).is_identity();
    if (finite_order) {
      if (auto order = finite_group_order(spec_.generators, std::min(opt_.group_cap, kFiniteImageCap))) {
        out["status"] = "zero-entropy-certified";
        out["detail"] = "the group is finite of order " + std::to_string(*order);
        result_.report["group_entropy"] = out;
        return;
      }
    }
    std::optional<Word> witness;
    bool exhausted = for_each_word(WordAlphabet(spec_.generators), opt_.word_budget, kEntropySearchCap,
                                   [&](const WordElement& e) {
                                     if (!positive_entropy(e.matrix)) return true;
                                     witness = e.word;
                                     return false;
                                   });
    if (witness) {
      out["status"] = "positive-entropy";
      out["witness"] = to_string(*witness);
    } else {
      out["status"] = "no-positive-entropy-word-found";
      out["detail"] = exhausted ? "every element of word length <= " + std::to_string(opt_.word_budget) +
                                      " has zero entropy; longer words unverified"
                                : "the first " + std::to_string(kEntropySearchCap) +
                                      " elements in word-length order have zero entropy; the rest unverified";
    }
    result_.report["group_entropy"] = out;
  }

  void pipeline() {
    pipe_ = unipotent_pipeline(spec_.generators, spec_.r, width_, 8);
    json out = {{"status", to_string(pipe_->status)},
                {"m_used", pipe_->m_used.get_str()},
                {"m_effective", pipe_->m_effective.get_str()},
                {"m_product", pipe_->m_product.get_str()},
                {"m_lcm", pipe_->m_lcm.get_str()},
                {"message", pipe_->message},
                {"anchor", "finite-index subgroup with unipotent image"}};
    if (pipe_->verdict && pipe_->verdict->certified()) {
      const auto& cert = pipe_->verdict->certificate();
      bool ok = validate_certificate(cert, pipe_->powered);
      out["certificate"] = {{"flag_dims", cert.flag_dims},
                            {"basis_change", to_string(cert.basis_change)},
                            {"validated", ok}};
      if (!ok) violation("unipotent_pipeline: certificate does not validate");
    } else if (pipe_->verdict) {
      const auto& w = pipe_->verdict->witness();
      bool ok = validate_witness(w, pipe_->powered);
      json wj = {{"algebra_word", algebra_word_string(w.algebra_word)}, {"validated", ok}};
      if (w.group_word) {
        wj["group_word"] = to_string(w.group_word->word);
        wj["char_poly"] = char_poly(w.group_word->matrix).to_string();
      }
      out["witness"] = wj;
      if (!ok) violation("unipotent_pipeline: witness does not validate");
    }
    result_.report["unipotent_pipeline"] = out;
  }

  void series() {
    if (!pipe_ || pipe_->status != PipelineStatus::Certified) return;
    series_ = group_series_report(pipe_->powered, opt_.word_budget);
    const auto& s = *series_;
    result_.report["series"] = {{"derived_length", s.derived_length},
                                {"nilpotency_class", s.nilpotency_class},
                                {"derived_dims", s.derived_dims},
                                {"lcs_dims", s.lcs_dims},
                                {"lie_dim", s.lie_dim},
                                {"word_budget", s.word_budget},
                                {"word_search_lower_bound", s.word_search_lower_bound},
                                {"word_search_class_lower_bound", s.word_search_class_lower_bound},
                                {"derived_witness", word_or_null(s.derived_witness)},
                                {"class_witness", word_or_null(s.class_witness)},
                                {"matches_word_search", s.word_search_lower_bound == s.derived_length &&
                                                            s.word_search_class_lower_bound == s.nilpotency_class},
                                {"anchor", "derived length and nilpotency class of the unipotent image"}};
  }

  void bounds() {
    if (!pipe_) return;
    json out = json::object();
    EssentialLengthReport ess = essential_length(spec_, *pipe_);
    json ej = {{"verdict", to_string(ess.bound)}, {"anchor", "essential length is at most n-1"}};
    if (ess.ell_ess) ej["ell_ess"] = *ess.ell_ess;
    if (spec_.n) ej["n_minus_1"] = *spec_.n - 1;
    if (!ess.problems.empty()) ej["problems"] = ess.problems;
    out["essential_length"] = ej;
    if (ess.bound == BoundVerdict::Fails)
      violation("essential length " + std::to_string(*ess.ell_ess) + " exceeds n-1 = " + std::to_string(*spec_.n - 1));

    json dc = {{"anchor", "graded images are isomorphic in degrees 1..n-1"},
               {"verdict", ess.degree_lengths.empty() ? "not-applicable" : (ess.degrees_agree ? "holds" : "fails")}};
    json dl = json::object();
    for (auto [k, len] : ess.degree_lengths) dl[std::to_string(k)] = len;
    dc["derived_length_by_degree"] = dl;
    out["degree_consistency"] = dc;
    if (!ess.degrees_agree) violation("derived lengths differ across degrees");

    if (series_) {
      BoundVerdict rob = robinson_check(series_->derived_length, series_->nilpotency_class);
      out["robinson"] = {{"ell", series_->derived_length},
                         {"c", series_->nilpotency_class},
                         {"verdict", to_string(rob)},
                         {"anchor", "derived length at most log2(class) + 1"}};
      if (rob == BoundVerdict::Fails) violation("derived length exceeds log2(class) + 1");
    }

    CorollaryChainReport chain = corollary_chain_check(spec_, ess);
    json cj = {{"verdict", to_string(chain.verdict)}, {"note", chain.note},
               {"anchor", "minimal derived length chain bounded by n"}};
    if (chain.chain_value) cj["chain_value"] = *chain.chain_value;
    if (chain.extension_bound) cj["extension_bound"] = *chain.extension_bound;
    out["corollary_chain"] = cj;
    if (chain.verdict == BoundVerdict::Fails) violation("corollary chain value exceeds n");
    result_.report["bounds"] = out;
  }

  void degrees() {
    if (!spec_.n || spec_.generators.empty()) return;
    unsigned n = *spec_.n;
    GradedRepresentation rep;
    json out;
    bool supplied = true;
    for (unsigned k = 0; k <= n; ++k) supplied = supplied && spec_.gradings.count(k);
    if (supplied) {
      rep.n = n;
      rep.degrees = spec_.gradings;
      out["model"] = "supplied";
      auto problems = validate_graded(rep, spec_.generators, opt_.seed);
      out["graded_problems"] = problems;
      if (!problems.empty()) throw PreconditionError("supplied gradings are inconsistent: " + problems.front());
    } else if (n <= spec_.r) {
      rep = exterior_model(spec_.generators, n);
      out["model"] = "exterior";
    } else {
      return;
    }
    DegreeInequalityReport d = check_degree_inequalities(rep, width_);
    json gens = json::array();
    for (std::size_t g = 0; g < d.degrees.size(); ++g) {
      json degs = json::array();
      for (const auto& x : d.degrees[g]) degs.push_back(to_string(x, 6));
      json checks = json::array();
      for (const auto& c : d.checks)
        if (c.generator == g) {
          checks.push_back({{"k", c.k}, {"relation", c.relation}, {"verdict", to_string(c.verdict)}});
          if (c.verdict == Decision::False)
            violation("dynamical degree relation " + c.relation + " fails for generator " + std::to_string(g + 1) +
                      " at k = " + std::to_string(c.k));
        }
      gens.push_back({{"generator", g + 1}, {"degrees", degs}, {"checks", checks}});
    }
    out["generators"] = gens;
    out["all_hold"] = d.all_hold();
    out["final_width"] = d.final_width.get_str();
    out["anchor"] = "dynamical degree inequalities";
    result_.report["dynamical_degrees"] = out;
  }

  void cone() {
    PolyhedralCone c = cone_from_rays(*spec_.cone);
    auto vecs = [](const std::vector<RatVector>& vs) {
      json a = json::array();
      for (const auto& v : vs) a.push_back(to_string(v));
      return a;
    };
    json out = {{"rays", vecs(c.rays)}, {"facets", vecs(c.facets)}, {"redundant_rays", vecs(c.redundant_rays)}};
    json maps = json::array();
    for (std::size_t i = 0; i < spec_.generators.size(); ++i) {
      RatMatrix f = to_rational(spec_.generators[i]);
      json m = {{"generator", i + 1}, {"preserves", preserves_cone(f, c)},
                {"anchor", "interior fixed vector iff bounded iterates"}};
      if (m["preserves"].get<bool>()) {
        ConeMapAnalysis a = meng_zhang_report(f, 1, c, 40);
        m["interior_fixed"] = a.interior_fixed ? json(to_string(*a.interior_fixed)) : json(nullptr);
        m["bounded"] = a.power.bounded;
        m["diagonalizable"] = a.power.diagonalizable;
        m["eigen_moduli_all_q"] = a.power.eigen_moduli_all_q;
        m["numeric_iterate_bound"] = to_decimal(a.numeric_iterate_bound, 3);
        m["ratio_at_range"] = to_decimal(a.ratio_at_range, 3);
        m["criteria_agree"] = a.criteria_agree;
        m["flagged"] = a.flagged;
        if (!a.criteria_agree) violation("cone criteria disagree for generator " + std::to_string(i + 1));
      }
      maps.push_back(m);
    }
    out["maps"] = maps;
    result_.report["cone"] = out;
  }

  void fujiki_lieberman() {
    FujikiLiebermanReport fl = fujiki_lieberman_pipeline(spec_, opt_.group_cap);
    json gens = json::array();
    bool hypotheses = true;
    for (std::size_t i = 0; i < fl.generators.size(); ++i) {
      const auto& g = fl.generators[i];
      json steps = json::array();
      for (const auto& s : g.steps) steps.push_back({{"step", s.step}, {"ok", s.ok}, {"detail", s.detail}});
      gens.push_back({{"generator", i + 1}, {"preserves", g.preserves}, {"steps", steps}});
      hypotheses = hypotheses && g.preserves && !g.steps.empty() && g.steps.front().ok;
    }
    json out = {{"success", fl.success},
                {"m_lcm", fl.m_lcm.get_str()},
                {"generators", gens},
                {"conclusion", fl.conclusion},
                {"anchor", "virtually in the identity component"}};
    out["failed_step"] = fl.failed_step ? json(*fl.failed_step) : json(nullptr);
    out["image_order"] = fl.image_order ? json(*fl.image_order) : json(nullptr);
    out["hypotheses_hold"] = hypotheses;
    if (!fl.success && hypotheses) violation("Fujiki-Lieberman steps fail although every hypothesis holds");
    result_.report["fujiki_lieberman"] = out;
  }

  const MatrixGroupSpec& spec_;
  AnalysisOptions opt_;
  Rational width_;
  AnalysisResult result_;
  json timings_ = json::object();
  std::vector<EntropyClassification> classes_;
  std::optional<UnipotentPipelineReport> pipe_;
  std::optional<SeriesReport> series_;
};

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> a{
      {"ell_ess", "/bounds/essential_length/ell_ess"},
      {"essential_length_bound", "/bounds/essential_length/verdict"},
      {"robinson", "/bounds/robinson/verdict"},
      {"corollary_chain", "/bounds/corollary_chain/verdict"},
      {"chain_value", "/bounds/corollary_chain/chain_value"},
      {"degree_consistency", "/bounds/degree_consistency/verdict"},
      {"derived_length", "/series/derived_length"},
      {"nilpotency_class", "/series/nilpotency_class"},
      {"pipeline_status", "/unipotent_pipeline/status"},
      {"m_used", "/unipotent_pipeline/m_used"},
      {"group_entropy", "/group_entropy/status"},
      {"image_order", "/fujiki_lieberman/image_order"},
      {"fl_failed_step", "/fujiki_lieberman/failed_step"},
      {"fl_success", "/fujiki_lieberman/success"},
  };
  return a;
}

}  // namespace

AnalysisResult run_analyze(const MatrixGroupSpec& spec, const AnalysisOptions& options) {
  return Analyzer(spec, options).run();
}

std::optional<std::string> report_value(const json& report, const std::string& key) {
  std::string pointer;
  if (!key.empty() && key.front() == '/') {
    pointer = key;
  } else if (auto it = aliases().find(key); it != aliases().end()) {
    pointer = it->second;
  } else if (key.rfind("kind_", 0) == 0) {
    try {
      pointer = "/classifications/" + std::to_string(std::stoul(key.substr(5)) - 1) + "/kind";
    } catch (const std::exception&) {
      return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  try {
    const json& v = report.at(json::json_pointer(pointer));
    return v.is_string() ? v.get<std::string>() : v.dump();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::vector<std::string> compare_expectations(const MatrixGroupSpec& spec, const json& report) {
  std::vector<std::string> out;
  for (const auto& [key, e] : spec.expected) {
    auto got = report_value(report, key);
    if (!got)
      out.push_back("expected " + key + " = " + e.value + " (" + e.provenance + "), not in report");
    else if (*got != e.value)
      out.push_back("expected " + key + " = " + e.value + " (" + e.provenance + "), got " + *got);
  }
  return out;
}

std::string to_string(CorpusStatus s) {
  switch (s) {
    case CorpusStatus::Ok: return "ok";
    case CorpusStatus::Violation: return "violation";
    case CorpusStatus::ExpectedViolation: return "expected-violation";
    case CorpusStatus::MissingViolation: return "missing-expected-violation";
    case CorpusStatus::InputError: return "input-error";
  }
  return "?";
}

json CorpusSummary::to_json(bool with_reports) const {
  json files = json::array();
  for (const auto& e : entries) {
    json f = {{"file", e.file}, {"status", to_string(e.status)}, {"problems", e.problems}};
    if (!e.error.empty()) f["error"] = e.error;
    if (with_reports && !e.report.is_null()) f["report"] = e.report;
    files.push_back(f);
  }
  return {{"files", files}, {"class_vs_n", table}, {"exit_code", exit_code}};
}

CorpusSummary run_corpus(const std::string& directory, const AnalysisOptions& options, unsigned jobs) {
  namespace fs = std::filesystem;
  CorpusSummary summary;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  summary.entries.resize(files.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      CorpusEntry& e = summary.entries[i];
      e.file = files[i].filename().string();
      MatrixGroupSpec spec;
      try {
        spec = load_spec(files[i].string());
      } catch (const std::exception& ex) {
        e.status = CorpusStatus::InputError;
        e.error = ex.what();
        continue;
      }
      AnalysisResult res = run_analyze(spec, options);
      e.report = std::move(res.report);
      e.problems = res.violations;
      bool violated = !res.violations.empty();
      for (auto& m : compare_expectations(spec, e.report)) e.problems.push_back(std::move(m));
      bool mismatch = e.problems.size() > res.violations.size();
      for (const auto& s : res.stage_errors) e.problems.push_back("stage error: " + s);
      if (spec.expect_violation)
        e.status = violated && !mismatch ? CorpusStatus::ExpectedViolation : CorpusStatus::MissingViolation;
      else
        e.status = violated || mismatch ? CorpusStatus::Violation : CorpusStatus::Ok;
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, std::max<std::size_t>(files.size(), 1)); ++t)
    pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::map<unsigned, unsigned> max_class;
  for (const auto& e : summary.entries) {
    if (e.status == CorpusStatus::InputError) summary.exit_code = 2;
    if ((e.status == CorpusStatus::Violation || e.status == CorpusStatus::MissingViolation) && summary.exit_code == 0)
      summary.exit_code = 1;
    if (e.status != CorpusStatus::Ok || !e.report.contains("n") || !e.report.contains("series")) continue;
    unsigned n = e.report["n"].get<unsigned>();
    unsigned c = e.report["series"]["nilpotency_class"].get<unsigned>();
    max_class[n] = std::max(max_class[n], c);
  }
  summary.table = json::array();
  for (auto [n, c] : max_class) summary.table.push_back({{"n", n}, {"max_class", c}, {"n_minus_1", n - 1}});
  return summary;
}

}  // namespace zeroent
