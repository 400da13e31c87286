#include <algorithm>

#include "dk/deligne.hpp"
#include "dk/error.hpp"
#include "scenario_internal.hpp"

namespace dk {

namespace {

using namespace scenario_detail;

std::optional<std::size_t> node_dim(const std::vector<LongExactSequence>& seqs, const std::string& label) {
  for (const auto& s : seqs)
    for (const auto& n : s.nodes)
      if (n.label == label) return n.dim;
  return std::nullopt;
}

std::string segment(const LongExactSequence& s, int k) {
  auto label = [&](int i) { return i < 0 || i >= static_cast<int>(s.nodes.size()) ? std::string("0") : s.nodes[i].label; };
  return label(k - 1) + " -> " + label(k) + " -> " + label(k + 1);
}

class Checker {
 public:
  explicit Checker(const Json& report) : report_(report) {}

  VerifyOutcome run() {
    try {
      check_all();
    } catch (const SchemaError& e) {
      fail(std::string("embedded scenario is invalid: ") + e.what());
    } catch (const std::exception& e) {
      fail(std::string("malformed report: ") + e.what());
    }
    out_.ok = out_.failures.empty();
    return out_;
  }

 private:
  void fail(const std::string& what) { out_.failures.push_back(what); }

  void check_all() {
    if (report_.at("tool") != kToolName) fail("report was not produced by " + std::string(kToolName));
    if (report_.at("version") != kToolVersion) fail("report version differs from " + std::string(kToolVersion));
    const Json& embedded = report_.at("scenario");
    scenario_ = parse_scenario(canonical_dump(embedded));
    if (canonical_dump(scenario_.canonical) != canonical_dump(embedded)) fail("embedded scenario is not canonical");
    if (report_.at("scenario_hash") != scenario_.hash) fail("scenario hash mismatch");

    results_ = report_.at("results");
    certs_ = report_.at("certificates");
    for (const auto& t : scenario_.tasks)
      if (!results_.contains(t)) fail("missing result for task '" + t + "'");
    for (const auto& [key, value] : results_.items())
      if (std::find(scenario_.tasks.begin(), scenario_.tasks.end(), key) == scenario_.tasks.end())
        fail("result for task '" + key + "' was not requested");

    if (certs_.contains("sequences")) check_sequences();
    if (certs_.contains("stabilization")) check_stabilization();
    if (results_.contains("ti")) check_ti();
    if (results_.contains("forgetful")) check_forgetful();
    if (results_.contains("descent")) check_descent();
    if (results_.contains("feasibility")) check_feasibility();
    check_recomputable();

    Json body = report_;
    body.erase("report_hash");
    if (report_.at("report_hash") != sha256_hex(canonical_dump(body))) fail("report hash mismatch");
  }

  void check_sequences() {
    bool all_exact = true, all_euler = true;
    for (const auto& j : certs_.at("sequences")) {
      LongExactSequence s = sequence_from(j);
      int k = first_inexact_node(s);
      if (k >= 0) {
        const auto& n = s.nodes[static_cast<std::size_t>(k)];
        fail("sequence '" + s.name + "' is not exact at segment " + segment(s, k) + " (dim " +
             std::to_string(n.dim) + " of " + n.label + ")");
      }
      if (j.at("exact").get<bool>() != (k < 0)) fail("sequence '" + s.name + "' carries a wrong exactness flag");
      all_exact = all_exact && k < 0;
      all_euler = all_euler && euler_identity(s);
      sequences_.push_back(std::move(s));
    }
    if (results_.contains("les")) {
      if (results_["les"].at("exact").get<bool>() != all_exact) fail("les: exactness verdict disagrees with the ranks");
      if (results_["les"].at("euler").get<bool>() != all_euler) fail("les: Euler verdict disagrees with the dimensions");
    }
  }

  void check_stabilization() {
    const Json& c = certs_.at("stabilization");
    auto rows = c.at("dims").get<std::vector<std::vector<std::size_t>>>();
    std::size_t n = rows.size();
    if (n < 3 || !c.at("stable").get<bool>()) {
      fail("stabilization certificate has fewer than three windows");
      return;
    }
    if (!(rows[n - 1] == rows[n - 2] && rows[n - 2] == rows[n - 3]))
      fail("stabilization: the last three windows disagree");
    for (std::size_t k = 0; k + 3 < n; ++k)
      if (rows[k] == rows[k + 1] && rows[k + 1] == rows[k + 2])
        fail("stabilization: an earlier window was already stable");
    if (results_.contains("ti") && results_["ti"].at("window") != c.at("window"))
      fail("ti: window differs from the stabilization certificate");
  }

  void check_ti() {
    const Json& ti = results_["ti"];
    int lo = ti.at("degrees")[0], hi = ti.at("degrees")[1];
    const std::vector<std::pair<std::string, std::string>> columns{
        {"triple", "T(X,F,s)^"}, {"pair", "T(X,F)^"},   {"ext", "Ext(F,F)^"},
        {"sheaf", "H(F)^"},      {"k", "H(K)^"},        {"theta", "H(Theta)^"}};
    for (const auto& [field, prefix] : columns) {
      auto values = ti.at(field).get<std::vector<std::size_t>>();
      if (values.size() != static_cast<std::size_t>(hi - lo + 1)) {
        fail("ti: " + field + " has the wrong length");
        continue;
      }
      for (int i = lo; i <= hi; ++i) {
        auto d = node_dim(sequences_, prefix + std::to_string(i));
        if (d && *d != values[static_cast<std::size_t>(i - lo)])
          fail("ti: " + field + " in degree " + std::to_string(i) + " disagrees with node " + prefix +
               std::to_string(i));
      }
    }
  }

  TIReport partial_report() const {
    TIReport r;
    r.sequences = sequences_;
    for (int i = r.lo; i <= r.hi; ++i) {
      r.triple.push_back(node_dim(sequences_, "T(X,F,s)^" + std::to_string(i)).value_or(0));
      r.pair.push_back(node_dim(sequences_, "T(X,F)^" + std::to_string(i)).value_or(0));
      r.sheaf.push_back(node_dim(sequences_, "H(F)^" + std::to_string(i)).value_or(0));
    }
    return r;
  }

  void check_forgetful() {
    ForgetfulReport f = forgetful_analysis(partial_report());
    Json expect = {{"h1_sheaf", f.h1_sheaf},
                   {"criterion_applies", f.criterion_applies},
                   {"tangent_rank", f.tangent_rank},
                   {"tangent_surjective", f.tangent_surjective},
                   {"tangent_injective", f.tangent_injective},
                   {"restriction_rank", f.restriction_rank},
                   {"obstruction_rank", f.obstruction_rank},
                   {"obstruction_injective", f.obstruction_injective},
                   {"smooth", f.smooth}};
    if (expect != results_["forgetful"]) fail("forgetful: verdicts disagree with the sequence ranks");
  }

  void check_descent() {
    const Json& d = results_["descent"];
    bool agrees = d.at("descent_dim") == d.at("t1") && d.at("representatives_valid").get<bool>();
    if (d.at("agrees").get<bool>() != agrees) fail("descent: agreement flag is inconsistent");
    auto t1 = node_dim(sequences_, "T(X,F,s)^1");
    if (t1 && d.at("t1") != *t1) fail("descent: T1 differs from the sequence node T(X,F,s)^1");
  }

  void check_feasibility() {
    TwoTermComplex c = build_two_term(scenario_.canonical);
    const Json& j = certs_.at("feasibility");
    FeasibilityCertificate cert = certificate_from(j, c);
    const Json& r = results_["feasibility"];
    if (r.at("verdict") != j.at("verdict")) fail("feasibility: verdict differs from the certificate");
    if (cert.verdict == FeasibilityVerdict::Undecided) return;
    if (!verify_certificate(c, cert)) {
      fail(cert.verdict == FeasibilityVerdict::Feasible
               ? "feasibility: witness bracket violates " + violated_constraint(c, cert.bracket).value_or("a constraint")
               : "feasibility: combination does not reproduce the contradiction");
      return;
    }
    if (cert.verdict == FeasibilityVerdict::Infeasible && r.at("contradiction") != to_string(cert.contradiction))
      fail("feasibility: reported contradiction differs from the certificate");
  }

  // Small algebra tasks are re-derived outright.
  void check_recomputable() {
    const std::string& kind = scenario_.kind;
    if (kind == "affine_divisor") {
      if (results_.at("tangent") != affine_result(scenario_.canonical)) fail("tangent: result differs from recomputation");
      return;
    }
    if (kind != "dgla_explicit" && kind != "hom_complex" && kind != "cocone") return;
    AlgebraModel m = build_algebra(scenario_.canonical);
    const DGLieAlgebra& l = *m.algebra;
    if (results_.contains("axioms") && results_["axioms"] != axioms_result(l))
      fail("axioms: result differs from recomputation");
    if (results_.contains("cohomology") && results_["cohomology"] != cohomology_result(l.complex()))
      fail("cohomology: result differs from recomputation");
    if (results_.contains("tangent") && results_["tangent"] != tangent_result(l))
      fail("tangent: result differs from recomputation");
    if (results_.contains("lift")) {
      bool unobstructed = results_["lift"].at("unobstructed");
      if (unobstructed != certs_.contains("lift")) fail("lift: certificate presence disagrees with the verdict");
      if (certs_.contains("lift")) {
        ArtinLocalAlgebra a = build_artin(scenario_.canonical);
        TensorDGLA t(l, a);
        RatVector x = vector_from(certs_["lift"].at("solution"));
        if (x.size() != t.dim(1) || !mc_check(t, x)) fail("lift: solution is not a Maurer-Cartan element");
      }
    }
  }

  const Json& report_;
  VerifyOutcome out_;
  Scenario scenario_;
  Json results_, certs_;
  std::vector<LongExactSequence> sequences_;
};

}  // namespace

VerifyOutcome verify_report(const Json& report) { return Checker(report).run(); }

}  // namespace dk
