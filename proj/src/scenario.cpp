#include "dk/scenario.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "dk/error.hpp"
#include "scenario_internal.hpp"

namespace dk {

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

namespace scenario_detail {

namespace {

// Fields accepted per kind besides the common ones, and the tasks each kind runs.
struct KindSpec {
  std::set<std::string> fields;
  std::set<std::string> required;
  std::vector<std::string> tasks;
  std::vector<std::string> default_tasks;
};

const std::map<std::string, KindSpec>& kinds() {
  static const std::map<std::string, KindSpec> k{
      {"dgla_explicit",
       {{"lo", "dims", "differentials", "brackets", "artin"},
        {"dims"},
        {"axioms", "cohomology", "tangent", "lift"},
        {"axioms", "cohomology"}}},
      {"hom_complex",
       {{"complex", "artin"}, {"complex"}, {"axioms", "cohomology", "tangent", "lift"}, {"axioms", "cohomology", "tangent"}}},
      {"cocone",
       {{"complex", "section", "artin"},
        {"complex", "section"},
        {"axioms", "cohomology", "tangent", "lift", "les"},
        {"axioms", "cohomology", "les"}}},
      {"p1_triple", {{"d", "sigma", "resolution"}, {}, {"ti", "les", "forgetful", "descent"}, {"ti", "les"}}},
      {"descent", {{"d", "sigma", "resolution"}, {}, {"ti", "descent"}, {"descent"}}},
      {"affine_divisor", {{"space", "f"}, {"space", "f"}, {"tangent"}, {"tangent"}}},
      {"bracket_extension", {{"space", "Z", "complex", "degree"}, {"space", "Z"}, {"feasibility"}, {"feasibility"}}},
  };
  return k;
}

const std::set<std::string> kCommon{"kind", "name", "ring", "tasks", "options"};
const std::set<std::string> kAllTasks{"axioms", "cohomology", "ti", "les", "tangent", "lift", "feasibility", "forgetful",
                                      "descent"};

[[noreturn]] void fail(const std::string& ptr, const std::string& what) { throw SchemaError(ptr, what); }

std::string join(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string join(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

void expect_object(const Json& j, const std::string& ptr, const std::set<std::string>& allowed,
                   const std::set<std::string>& required) {
  if (!j.is_object()) fail(ptr, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(join(ptr, key), "unknown field");
  for (const auto& key : required)
    if (!j.contains(key)) fail(join(ptr, key), "missing required field");
}

int expect_int(const Json& j, const std::string& ptr, long lo, long hi) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  long v = j.get<long>();
  if (v < lo || v > hi) fail(ptr, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

std::string expect_string(const Json& j, const std::string& ptr) {
  if (!j.is_string()) fail(ptr, "expected a string");
  return j.get<std::string>();
}

const Json& expect_array(const Json& j, const std::string& ptr, std::size_t min_size = 0) {
  if (!j.is_array()) fail(ptr, "expected an array");
  if (j.size() < min_size) fail(ptr, "expected at least " + std::to_string(min_size) + " entries");
  return j;
}

Json canonical_rational(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return to_string(Rational(j.get<long>()));
  if (!j.is_string()) fail(ptr, "expected a rational as an integer or a \"num/den\" string");
  try {
    return to_string(parse_rational(j.get<std::string>()));
  } catch (const Error&) {
    fail(ptr, "malformed rational");
  }
}

Json canonical_vector(const Json& j, const std::string& ptr, std::optional<std::size_t> size) {
  expect_array(j, ptr);
  if (size && j.size() != *size) fail(ptr, "expected " + std::to_string(*size) + " entries");
  Json out = Json::array();
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(canonical_rational(j[i], join(ptr, i)));
  return out;
}

Json canonical_matrix(const Json& j, const std::string& ptr, std::size_t rows, std::size_t cols) {
  expect_array(j, ptr);
  if (j.size() != rows) fail(ptr, "expected " + std::to_string(rows) + " rows");
  Json out = Json::array();
  for (std::size_t r = 0; r < rows; ++r) out.push_back(canonical_vector(j[r], join(ptr, r), cols));
  return out;
}

std::string checked_polynomial(const Json& j, const std::string& ptr, const std::vector<std::string>& vars) {
  std::string s = expect_string(j, ptr);
  try {
    parse_polynomial(s, vars);
  } catch (const Error& e) {
    fail(ptr, std::string("malformed polynomial: ") + e.what());
  }
  return s;
}

// {lo, dims, differentials}: differentials[k] is dims[k+1] × dims[k].
Json canonical_complex(const Json& j, const std::string& ptr, const std::set<std::string>& extra = {}) {
  std::set<std::string> allowed{"lo", "dims", "differentials"};
  allowed.insert(extra.begin(), extra.end());
  expect_object(j, ptr, allowed, {"dims"});
  Json out = Json::object();
  out["lo"] = j.contains("lo") ? expect_int(j["lo"], join(ptr, "lo"), -8, 8) : 0;
  const Json& dims = expect_array(j["dims"], join(ptr, "dims"), 1);
  if (dims.size() > 8) fail(join(ptr, "dims"), "at most 8 terms");
  std::vector<std::size_t> d;
  for (std::size_t i = 0; i < dims.size(); ++i)
    d.push_back(static_cast<std::size_t>(expect_int(dims[i], join(join(ptr, "dims"), i), 0, 16)));
  out["dims"] = d;
  Json diffs = Json::array();
  if (j.contains("differentials")) {
    std::string dp = join(ptr, "differentials");
    const Json& arr = expect_array(j["differentials"], dp);
    if (arr.size() + 1 > d.size()) fail(dp, "expected at most " + std::to_string(d.size() - 1) + " matrices");
    for (std::size_t k = 0; k < arr.size(); ++k) diffs.push_back(canonical_matrix(arr[k], join(dp, k), d[k + 1], d[k]));
  }
  out["differentials"] = diffs;
  return out;
}

Json canonical_artin(const Json& j, const std::string& ptr) {
  expect_object(j, ptr, {"vars", "degree"}, {"vars", "degree"});
  const Json& vars = expect_array(j["vars"], join(ptr, "vars"), 1);
  if (vars.size() > 3) fail(join(ptr, "vars"), "at most 3 variables");
  Json out = Json::object();
  std::set<std::string> seen;
  Json vs = Json::array();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string v = expect_string(vars[i], join(join(ptr, "vars"), i));
    if (v.empty() || !seen.insert(v).second) fail(join(join(ptr, "vars"), i), "variable names must be distinct and nonempty");
    vs.push_back(v);
  }
  out["vars"] = vs;
  out["degree"] = expect_int(j["degree"], join(ptr, "degree"), 2, 6);
  return out;
}

Json canonical_brackets(const Json& j, const std::string& ptr, int lo, const std::vector<std::size_t>& dims) {
  expect_array(j, ptr);
  int hi = lo + static_cast<int>(dims.size()) - 1;
  auto dim = [&](int n) -> std::size_t { return n < lo || n > hi ? 0 : dims[static_cast<std::size_t>(n - lo)]; };
  auto ref = [&](const Json& r, const std::string& p) {
    expect_array(r, p);
    if (r.size() != 2) fail(p, "expected [degree, index]");
    int deg = expect_int(r[0], join(p, 0), lo, hi);
    int idx = expect_int(r[1], join(p, 1), 0, 15);
    if (static_cast<std::size_t>(idx) >= dim(deg)) fail(join(p, 1), "index exceeds the dimension in that degree");
    return std::pair<int, int>(deg, idx);
  };
  Json out = Json::array();
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string p = join(ptr, i);
    expect_object(j[i], p, {"left", "right", "value"}, {"left", "right", "value"});
    auto a = ref(j[i]["left"], join(p, "left")), b = ref(j[i]["right"], join(p, "right"));
    if (seen.count({a, b}) || seen.count({b, a})) fail(p, "bracket given twice");
    seen.insert({a, b});
    Json e = Json::object();
    e["left"] = {a.first, a.second};
    e["right"] = {b.first, b.second};
    e["value"] = canonical_vector(j[i]["value"], join(p, "value"), dim(a.first + b.first));
    out.push_back(e);
  }
  return out;
}

Json canonical_resolution(const Json& j, const std::string& ptr) {
  expect_object(j, ptr, {"lo", "twists", "differentials", "section"}, {"twists", "section"});
  Json out = Json::object();
  int lo = j.contains("lo") ? expect_int(j["lo"], join(ptr, "lo"), -4, 0) : 0;
  out["lo"] = lo;
  const Json& tw = expect_array(j["twists"], join(ptr, "twists"), 1);
  if (static_cast<int>(tw.size()) != 1 - lo) fail(join(ptr, "twists"), "expected one entry per degree lo..0");
  Json twists = Json::array();
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k < tw.size(); ++k) {
    std::string p = join(join(ptr, "twists"), k);
    expect_array(tw[k], p, 1);
    Json row = Json::array();
    for (std::size_t a = 0; a < tw[k].size(); ++a) row.push_back(expect_int(tw[k][a], join(p, a), -12, 12));
    ranks.push_back(tw[k].size());
    twists.push_back(row);
  }
  out["twists"] = twists;
  Json diffs = Json::array();
  std::string dp = join(ptr, "differentials");
  if (lo < 0 && !j.contains("differentials")) fail(dp, "missing required field");
  if (j.contains("differentials")) {
    const Json& arr = expect_array(j["differentials"], dp);
    if (arr.size() != ranks.size() - 1) fail(dp, "expected one matrix per degree lo..-1");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::string p = join(dp, k);
      expect_array(arr[k], p);
      if (arr[k].size() != ranks[k + 1]) fail(p, "expected " + std::to_string(ranks[k + 1]) + " rows");
      Json m = Json::array();
      for (std::size_t r = 0; r < ranks[k + 1]; ++r) {
        std::string rp = join(p, r);
        expect_array(arr[k][r], rp);
        if (arr[k][r].size() != ranks[k]) fail(rp, "expected " + std::to_string(ranks[k]) + " entries");
        Json row = Json::array();
        for (std::size_t c = 0; c < ranks[k]; ++c) row.push_back(checked_polynomial(arr[k][r][c], join(rp, c), {"t"}));
        m.push_back(row);
      }
      diffs.push_back(m);
    }
  }
  out["differentials"] = diffs;
  std::string sp = join(ptr, "section");
  expect_array(j["section"], sp);
  if (j["section"].size() != ranks.back()) fail(sp, "expected " + std::to_string(ranks.back()) + " entries");
  Json sec = Json::array();
  for (std::size_t a = 0; a < ranks.back(); ++a) sec.push_back(checked_polynomial(j["section"][a], join(sp, a), {"t"}));
  out["section"] = sec;
  return out;
}

}  // namespace

Json canonicalize(const Json& in, std::optional<int> window_override) {
  expect_object(in, "", {"kind", "name", "ring", "tasks", "options", "lo", "dims", "differentials", "brackets", "artin",
                         "complex", "section", "d", "sigma", "resolution", "space", "f", "Z", "degree"},
                {"kind"});
  std::string kind = expect_string(in["kind"], "/kind");
  auto it = kinds().find(kind);
  if (it == kinds().end()) fail("/kind", "unknown kind '" + kind + "'");
  const KindSpec& spec = it->second;
  for (const auto& [key, value] : in.items())
    if (!kCommon.count(key) && !spec.fields.count(key)) fail("/" + key, "field not allowed for kind '" + kind + "'");
  for (const auto& key : spec.required)
    if (!in.contains(key)) fail("/" + key, "missing required field");

  Json out = Json::object();
  out["kind"] = kind;
  if (in.contains("name")) out["name"] = expect_string(in["name"], "/name");
  out["ring"] = in.contains("ring") ? expect_string(in["ring"], "/ring") : "QQ";
  if (out["ring"] != "QQ") fail("/ring", "only the base ring QQ is supported");

  std::vector<std::string> tasks;
  if (in.contains("tasks")) {
    const Json& t = expect_array(in["tasks"], "/tasks", 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::string name = expect_string(t[i], join("/tasks", i));
      if (!kAllTasks.count(name)) fail(join("/tasks", i), "unknown task '" + name + "'");
      if (std::find(spec.tasks.begin(), spec.tasks.end(), name) == spec.tasks.end())
        fail(join("/tasks", i), "task '" + name + "' is not available for kind '" + kind + "'");
      if (std::find(tasks.begin(), tasks.end(), name) != tasks.end()) fail(join("/tasks", i), "duplicate task");
      tasks.push_back(name);
    }
  } else {
    tasks = spec.default_tasks;
  }
  // Execution order is fixed by the kind, not by the file.
  std::vector<std::string> ordered;
  for (const auto& t : spec.tasks)
    if (std::find(tasks.begin(), tasks.end(), t) != tasks.end()) ordered.push_back(t);
  out["tasks"] = ordered;

  Json options = Json::object();
  if (in.contains("options")) {
    expect_object(in["options"], "/options", {"window", "seed"}, {});
    if (in["options"].contains("window")) options["window"] = expect_int(in["options"]["window"], "/options/window", 1, 64);
    if (in["options"].contains("seed"))
      options["seed"] = expect_int(in["options"]["seed"], "/options/seed", 0, 2147483647);
  }
  if (window_override) {
    if (*window_override < 1 || *window_override > 64) fail("/options/window", "window override out of range [1, 64]");
    options["window"] = *window_override;
  }
  if (!options.contains("seed")) options["seed"] = 0;
  out["options"] = options;

  if (kind == "dgla_explicit") {
    Json c = canonical_complex(in, "", {"kind", "name", "ring", "tasks", "options", "brackets", "artin"});
    for (const auto& key : {"lo", "dims", "differentials"}) out[key] = c[key];
    out["brackets"] = in.contains("brackets")
                          ? canonical_brackets(in["brackets"], "/brackets", c["lo"].get<int>(),
                                               c["dims"].get<std::vector<std::size_t>>())
                          : Json::array();
  }
  if (kind == "hom_complex" || kind == "cocone") out["complex"] = canonical_complex(in["complex"], "/complex");
  if (kind == "cocone") {
    const Json& c = out["complex"];
    int lo = c["lo"].get<int>(), hi = lo + static_cast<int>(c["dims"].size()) - 1;
    std::size_t e0 = 0 >= lo && 0 <= hi ? c["dims"][static_cast<std::size_t>(-lo)].get<std::size_t>() : 0;
    out["section"] = canonical_vector(in["section"], "/section", e0);
  }
  if (spec.fields.count("artin"))
    out["artin"] = in.contains("artin") ? canonical_artin(in["artin"], "/artin") : Json{{"vars", {"t"}}, {"degree", 3}};

  if (kind == "p1_triple" || kind == "descent") {
    if (in.contains("resolution")) {
      if (in.contains("d") || in.contains("sigma")) fail("/resolution", "give either a resolution or d and sigma");
      out["resolution"] = canonical_resolution(in["resolution"], "/resolution");
    } else {
      if (!in.contains("d")) fail("/d", "missing required field");
      out["d"] = expect_int(in["d"], "/d", -12, 12);
      out["sigma"] = in.contains("sigma") ? checked_polynomial(in["sigma"], "/sigma", {"t"}) : "0";
    }
  }
  if (kind == "affine_divisor") {
    std::string space = expect_string(in["space"], "/space");
    if (space != "A1" && space != "A2") fail("/space", "expected \"A1\" or \"A2\"");
    out["space"] = space;
    out["f"] = checked_polynomial(in["f"], "/f", space == "A1" ? std::vector<std::string>{"t"}
                                                               : std::vector<std::string>{"x", "y"});
  }
  if (kind == "bracket_extension") {
    std::string space = expect_string(in["space"], "/space");
    if (space != "A1") fail("/space", "expected \"A1\"");
    out["space"] = space;
    out["Z"] = checked_polynomial(in["Z"], "/Z", {"t"});
    std::string cx = in.contains("complex") ? expect_string(in["complex"], "/complex") : "theta_to_normal";
    if (cx != "theta_to_normal" && cx != "principal_parts" && cx != "zero")
      fail("/complex", "expected \"theta_to_normal\", \"principal_parts\" or \"zero\"");
    out["complex"] = cx;
    out["degree"] = in.contains("degree") ? expect_int(in["degree"], "/degree", 0, 12) : 2;
  }
  return out;
}

}  // namespace scenario_detail

Scenario parse_scenario(const std::string& text, std::optional<int> window) {
  Json in;
  try {
    in = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  Scenario s;
  s.canonical = scenario_detail::canonicalize(in, window);
  s.kind = s.canonical["kind"].get<std::string>();
  s.tasks = s.canonical["tasks"].get<std::vector<std::string>>();
  if (s.canonical["options"].contains("window")) s.window = s.canonical["options"]["window"].get<int>();
  s.seed = s.canonical["options"]["seed"].get<unsigned>();
  s.hash = sha256_hex(canonical_dump(s.canonical));
  return s;
}

}  // namespace dk
