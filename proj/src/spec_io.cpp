#include "zeroent/spec_io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "zeroent/cone.hpp"
#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"

namespace zeroent {

using json = nlohmann::json;

namespace {

const std::set<std::string> kFields{"name",       "n",     "r",        "generators",     "gradings",
                                    "cone",       "fixed_classes",     "kernel_abelian", "expected",
                                    "expect_violation"};

Integer read_integer(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Integer(j.dump());
    if (j.is_string()) return parse_integer(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(path, "expected an integer");
}

Rational read_rational(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(path, "expected a rational such as \"3\" or \"-1/2\"");
}

unsigned read_positive(const json& j, const std::string& path) {
  Integer v = read_integer(j, path);
  if (v < 1 || v > 1000000) throw ParseError(path, "expected a positive integer");
  return static_cast<unsigned>(v.get_ui());
}

IntMatrix read_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of rows");
  std::size_t n = j.size();
  std::vector<Integer> e;
  for (std::size_t i = 0; i < n; ++i) {
    std::string rp = path + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != n)
      throw ParseError(rp, "expected a row of length " + std::to_string(n) + " (matrices are square)");
    for (std::size_t k = 0; k < n; ++k) e.push_back(read_integer(j[i][k], rp + "/" + std::to_string(k)));
  }
  return IntMatrix(n, n, std::move(e));
}

RatVector read_vector(const json& j, std::size_t len, const std::string& path) {
  if (!j.is_array() || j.size() != len) throw ParseError(path, "expected a vector of length " + std::to_string(len));
  RatVector v;
  for (std::size_t i = 0; i < len; ++i) v.push_back(read_rational(j[i], path + "/" + std::to_string(i)));
  return v;
}

void require_unimodular(const IntMatrix& m, const std::string& path, const std::string& what) {
  Integer det = determinant(m);
  if (abs(det) != 1) throw ParseError(path, what + " is not unimodular (det = " + det.get_str() + ")");
}

std::string canonical(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_str());
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const RatVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

}  // namespace

MatrixGroupSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "the document must be an object");
  for (const auto& [key, value] : doc.items())
    if (!kFields.count(key)) throw ParseError("/" + key, "unknown field");

  MatrixGroupSpec s;
  if (!doc.contains("name") || !doc["name"].is_string()) throw ParseError("/name", "expected a string");
  s.name = doc["name"].get<std::string>();
  if (!doc.contains("r")) throw ParseError("/r", "the lattice rank is required");
  s.r = read_positive(doc["r"], "/r");
  if (doc.contains("n")) s.n = read_positive(doc["n"], "/n");

  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw ParseError("/generators", "expected an array of matrices");
  const json& gens = doc["generators"];
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string path = "/generators/" + std::to_string(i);
    IntMatrix g = read_matrix(gens[i], path);
    if (g.dim() != s.r)
      throw ParseError(path, "generator " + std::to_string(i + 1) + " is " + std::to_string(g.dim()) + "x" +
                                 std::to_string(g.dim()) + ", expected " + std::to_string(s.r) + "x" +
                                 std::to_string(s.r));
    require_unimodular(g, path, "generator " + std::to_string(i + 1));
    s.generators.push_back(std::move(g));
  }

  if (doc.contains("gradings")) {
    const json& gr = doc["gradings"];
    if (!gr.is_object()) throw ParseError("/gradings", "expected an object keyed by degree");
    for (const auto& [key, mats] : gr.items()) {
      std::string path = "/gradings/" + key;
      unsigned k;
      try {
        Integer kk = parse_integer(key);
        if (kk < 0 || kk > 1000) throw std::invalid_argument("range");
        k = static_cast<unsigned>(kk.get_ui());
      } catch (const std::invalid_argument&) {
        throw ParseError(path, "degree keys must be non-negative integers");
      }
      if (s.n && k > *s.n) throw ParseError(path, "degree " + key + " exceeds n = " + std::to_string(*s.n));
      if (!mats.is_array() || mats.size() != s.generators.size())
        throw ParseError(path, "expected one matrix per generator (" + std::to_string(s.generators.size()) + ")");
      std::optional<std::size_t> size;
      if (k == 1) size = s.r;
      if (k == 0 || (s.n && k == *s.n && k != 1)) size = 1;
      std::vector<IntMatrix> per;
      for (std::size_t i = 0; i < mats.size(); ++i) {
        std::string mp = path + "/" + std::to_string(i);
        IntMatrix m = read_matrix(mats[i], mp);
        if (!size) size = m.dim();
        if (m.dim() != *size)
          throw ParseError(mp, "degree " + key + " matrices must be " + std::to_string(*size) + "x" +
                                   std::to_string(*size));
        require_unimodular(m, mp, "degree " + key + " matrix");
        if (k == 1 && !(m == s.generators[i]))
          throw ParseError(mp, "degree 1 must repeat generator " + std::to_string(i + 1));
        per.push_back(std::move(m));
      }
      s.gradings[k] = std::move(per);
    }
  }

  if (doc.contains("cone")) {
    const json& c = doc["cone"];
    if (!c.is_array() || c.empty()) throw ParseError("/cone", "expected an array of rays");
    std::vector<RatVector> rays;
    for (std::size_t i = 0; i < c.size(); ++i) rays.push_back(read_vector(c[i], s.r, "/cone/" + std::to_string(i)));
    try {
      cone_from_rays(rays);
    } catch (const PreconditionError& e) {
      throw ParseError("/cone", e.what());
    }
    s.cone = std::move(rays);
  }

  if (doc.contains("fixed_classes")) {
    const json& f = doc["fixed_classes"];
    if (!f.is_array() || f.size() != s.generators.size())
      throw ParseError("/fixed_classes", "expected one class per generator");
    std::vector<RatVector> classes;
    for (std::size_t i = 0; i < f.size(); ++i)
      classes.push_back(read_vector(f[i], s.r, "/fixed_classes/" + std::to_string(i)));
    s.fixed_classes = std::move(classes);
  }

  if (doc.contains("kernel_abelian")) {
    if (!doc["kernel_abelian"].is_boolean()) throw ParseError("/kernel_abelian", "expected a boolean");
    s.kernel_abelian = doc["kernel_abelian"].get<bool>();
  }
  if (doc.contains("expect_violation")) {
    if (!doc["expect_violation"].is_boolean()) throw ParseError("/expect_violation", "expected a boolean");
    s.expect_violation = doc["expect_violation"].get<bool>();
  }
  if (doc.contains("expected")) {
    const json& ex = doc["expected"];
    if (!ex.is_object()) throw ParseError("/expected", "expected an object");
    for (const auto& [key, entry] : ex.items()) {
      std::string path = "/expected/" + key;
      if (!entry.is_object() || !entry.contains("value") || !entry.contains("provenance") ||
          !entry["provenance"].is_string())
        throw ParseError(path, "expected {\"value\": ..., \"provenance\": \"...\"}");
      s.expected[key] = {canonical(entry["value"]), entry["provenance"].get<std::string>()};
    }
  }
  return s;
}

std::string emit_spec(const MatrixGroupSpec& s) {
  json doc;
  doc["name"] = s.name;
  doc["r"] = s.r;
  if (s.n) doc["n"] = *s.n;
  doc["generators"] = json::array();
  for (const auto& g : s.generators) doc["generators"].push_back(matrix_json(g));
  if (!s.gradings.empty()) {
    json gr = json::object();
    for (const auto& [k, mats] : s.gradings) {
      json arr = json::array();
      for (const auto& m : mats) arr.push_back(matrix_json(m));
      gr[std::to_string(k)] = arr;
    }
    doc["gradings"] = gr;
  }
  if (s.cone) {
    doc["cone"] = json::array();
    for (const auto& r : *s.cone) doc["cone"].push_back(vector_json(r));
  }
  if (s.fixed_classes) {
    doc["fixed_classes"] = json::array();
    for (const auto& b : *s.fixed_classes) doc["fixed_classes"].push_back(vector_json(b));
  }
  if (s.kernel_abelian) doc["kernel_abelian"] = *s.kernel_abelian;
  if (s.expect_violation) doc["expect_violation"] = true;
  if (!s.expected.empty()) {
    json ex = json::object();
    for (const auto& [k, e] : s.expected) ex[k] = {{"value", e.value}, {"provenance", e.provenance}};
    doc["expected"] = ex;
  }
  return doc.dump(2) + "\n";
}

MatrixGroupSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace zeroent
