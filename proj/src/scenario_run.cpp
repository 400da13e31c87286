#include <algorithm>
#include <random>

#include "dk/deligne.hpp"
#include "dk/error.hpp"
#include "scenario_internal.hpp"

namespace dk {

namespace scenario_detail {

namespace {

bool wants(const Scenario& s, const std::string& task) {
  return std::find(s.tasks.begin(), s.tasks.end(), task) != s.tasks.end();
}

// Model construction failures are input errors: reported like schema errors at
// the field that carries the offending data.
template <class F>
auto guarded(const std::string& pointer, F&& build) {
  try {
    return build();
  } catch (const ComplexError& e) {
    throw SchemaError(pointer, e.what());
  } catch (const PreconditionError& e) {
    throw SchemaError(pointer, e.what());
  }
}

std::string payload_pointer(const Json& sc) {
  const std::string kind = sc["kind"];
  if (kind == "dgla_explicit") return "/brackets";
  if (kind == "hom_complex") return "/complex";
  if (kind == "cocone") return "/section";
  if (kind == "bracket_extension") return "/Z";
  return sc.contains("resolution") ? "/resolution" : "/sigma";
}

Json lift_task(const Scenario& s, const DGLieAlgebra& l, Json& certificates) {
  ArtinLocalAlgebra a = build_artin(s.canonical);
  TensorDGLA t(l, a);
  RatMatrix reps = tangent_space(l);
  std::mt19937 rng(s.seed);
  RatVector x1 = t.zero(1);
  Json first = Json::array();
  for (std::size_t al = 0; al < a.dim(); ++al) {
    if (a.order(al) != 1) continue;
    RatVector v = zero_vector(l.dim(1));
    RatVector coeff;
    for (std::size_t j = 0; j < reps.cols(); ++j) {
      coeff.push_back(Rational(static_cast<long>(rng() % 5) - 2));
      add_scaled(v, coeff.back(), reps.column(j));
    }
    x1 += t.embed(1, v, al);
    first.push_back({{"monomial", a.monomial_name(al)}, {"class", to_json(coeff)}});
  }
  auto steps = lift_order_by_order(t, x1);
  Json js = Json::array();
  bool lifted = true;
  for (const auto& st : steps) {
    Json obs = Json::array();
    for (const auto& [mono, cls] : st.obstruction)
      if (!is_zero(cls)) obs.push_back({{"monomial", a.monomial_name(mono)}, {"class", to_json(cls)}});
    js.push_back({{"order", st.order},
                  {"lifted", st.lifted},
                  {"residual_is_cocycle", st.residual_is_cocycle},
                  {"obstruction", obs}});
    lifted = lifted && st.lifted;
  }
  if (lifted) certificates["lift"] = {{"solution", to_json(steps.empty() ? x1 : steps.back().solution)}};
  return {{"nilpotency", a.nilpotency()}, {"tangent_dim", reps.cols()}, {"first_order", first}, {"steps", js},
          {"unobstructed", lifted}};
}

Json algebra_tasks(const Scenario& s, Json& certificates) {
  AlgebraModel m = guarded(payload_pointer(s.canonical), [&] { return build_algebra(s.canonical); });
  const DGLieAlgebra& l = *m.algebra;
  Json results = Json::object();
  if (wants(s, "axioms")) results["axioms"] = axioms_result(l);
  if (wants(s, "cohomology")) results["cohomology"] = cohomology_result(l.complex());
  if (wants(s, "tangent")) results["tangent"] = tangent_result(l);
  if (wants(s, "lift")) results["lift"] = lift_task(s, l, certificates);
  if (wants(s, "les")) {
    const CoconeDGLA& c = *m.cocone;
    GradedComplex e1 = c.shifted_module();
    const GradedComplex& mc = c.algebra().complex();
    const GradedComplex& base = c.base().algebra.complex();
    int first = std::min({e1.lo(), mc.lo(), base.lo()}) - 1;
    int last = std::max({e1.hi(), mc.hi(), base.hi()}) + 1;
    auto seq = long_exact_sequence(e1, mc, base, c.inclusion(), c.projection(), first, last, "E[-1] -> C -> L",
                                   "H(E[-1])", "H(C)", "H(L)");
    certificates["sequences"] = Json::array({sequence_to_json(seq)});
    results["les"] = {{"exact", seq.all_exact()}, {"euler", euler_identity(seq)}, {"sequences", {seq.name}}};
  }
  return results;
}

Json triple_tasks(const Scenario& s, Json& certificates) {
  P1Resolution r = guarded(payload_pointer(s.canonical), [&] {
    P1Resolution res = build_resolution(s.canonical);
    validate_resolution(res, default_window(res.max_abs_twist()));
    return res;
  });
  TIReport rep = compute_TI(r, s.window);
  certificates["stabilization"] = stabilization_to_json(rep.certificate);
  Json seqs = Json::array(), names = Json::array();
  for (const auto& q : rep.sequences) {
    seqs.push_back(sequence_to_json(q));
    names.push_back(q.name);
  }
  certificates["sequences"] = seqs;

  Json results = Json::object();
  if (wants(s, "ti"))
    results["ti"] = {{"degrees", {rep.lo, rep.hi}},
                     {"triple", rep.triple},
                     {"pair", rep.pair},
                     {"ext", rep.ext},
                     {"sheaf", rep.sheaf},
                     {"k", rep.k},
                     {"theta", rep.theta},
                     {"support", {rep.support_lo, rep.support_hi}},
                     {"window", rep.certificate.window}};
  if (wants(s, "les")) {
    bool exact = std::all_of(rep.sequences.begin(), rep.sequences.end(),
                             [](const LongExactSequence& q) { return q.all_exact(); });
    results["les"] = {{"exact", exact}, {"euler", rep.euler}, {"sequences", names}};
  }
  if (wants(s, "forgetful")) {
    ForgetfulReport f = forgetful_analysis(rep);
    results["forgetful"] = {{"h1_sheaf", f.h1_sheaf},
                            {"criterion_applies", f.criterion_applies},
                            {"tangent_rank", f.tangent_rank},
                            {"tangent_surjective", f.tangent_surjective},
                            {"tangent_injective", f.tangent_injective},
                            {"restriction_rank", f.restriction_rank},
                            {"obstruction_rank", f.obstruction_rank},
                            {"obstruction_injective", f.obstruction_injective},
                            {"smooth", f.smooth}};
  }
  if (wants(s, "descent")) {
    TangentDescent d = tangent_via_descent(r, rep.certificate.window);
    results["descent"] = {{"descent_dim", d.descent_dim},
                          {"t1", d.t1},
                          {"representatives_valid", d.representatives_valid},
                          {"agrees", d.agrees()},
                          {"window", rep.certificate.window}};
  }
  return results;
}

Json feasibility_task(const Scenario& s, Json& certificates) {
  TwoTermComplex c = guarded(payload_pointer(s.canonical), [&] { return build_two_term(s.canonical); });
  FeasibilityCertificate cert = bracket_extension_feasibility(c);
  certificates["feasibility"] = certificate_to_json(cert);
  Json out = {{"complex", c.name}, {"verdict", to_string(cert.verdict)}, {"checked", verify_certificate(c, cert)}};
  if (cert.verdict == FeasibilityVerdict::Infeasible) {
    out["contradiction"] = to_string(cert.contradiction);
    Json derived = Json::array();
    for (const auto& d : cert.derived) derived.push_back(d.label + " = " + display(d.value));
    out["derived"] = derived;
  }
  if (cert.verdict == FeasibilityVerdict::Feasible) out["witness_source"] = cert.witness_source;
  return {{"feasibility", out}};
}

}  // namespace

}  // namespace scenario_detail

Json run_scenario(const Scenario& s) {
  using namespace scenario_detail;
  Json certificates = Json::object();
  Json results;
  if (s.kind == "dgla_explicit" || s.kind == "hom_complex" || s.kind == "cocone")
    results = algebra_tasks(s, certificates);
  else if (s.kind == "p1_triple" || s.kind == "descent")
    results = triple_tasks(s, certificates);
  else if (s.kind == "affine_divisor")
    results = {{"tangent", guarded("/f", [&] { return affine_result(s.canonical); })}};
  else
    results = feasibility_task(s, certificates);

  Json report = {{"tool", kToolName},
                 {"version", kToolVersion},
                 {"scenario_hash", s.hash},
                 {"scenario", s.canonical},
                 {"results", results},
                 {"certificates", certificates}};
  report["report_hash"] = sha256_hex(canonical_dump(report));
  return report;
}

}  // namespace dk
