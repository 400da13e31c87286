#include <algorithm>

#include "dk/deligne.hpp"
#include "dk/error.hpp"
#include "scenario_internal.hpp"

namespace dk::scenario_detail {

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

RatVector vector_from(const Json& j) {
  if (!j.is_array()) throw VerificationError("expected an array of rationals");
  RatVector v;
  for (const auto& x : j) {
    if (!x.is_string()) throw VerificationError("expected a rational string");
    v.push_back(parse_rational(x.get<std::string>()));
  }
  return v;
}

RatMatrix matrix_from(const Json& j, std::size_t rows, std::size_t cols) {
  RatMatrix m(rows, cols);
  if (!j.is_array() || j.size() != rows) throw VerificationError("matrix has the wrong number of rows");
  for (std::size_t r = 0; r < rows; ++r) {
    RatVector row = vector_from(j[r]);
    if (row.size() != cols) throw VerificationError("matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

namespace {

GradedComplex complex_from(const Json& c) {
  auto dims = c["dims"].get<std::vector<std::size_t>>();
  std::vector<RatMatrix> diffs;
  for (std::size_t k = 0; k < c["differentials"].size(); ++k)
    diffs.push_back(matrix_from(c["differentials"][k], dims[k + 1], dims[k]));
  GradedComplex g(c["lo"].get<int>(), dims, diffs);
  g.validate();
  return g;
}

Poly univariate(const Json& j) { return parse_polynomial(j.get<std::string>(), {"t"}).univariate(); }

}  // namespace

AlgebraModel build_algebra(const Json& sc) {
  AlgebraModel m;
  const std::string kind = sc["kind"];
  if (kind == "dgla_explicit") {
    GradedComplex g = complex_from(sc);
    auto l = std::make_shared<DGLieAlgebra>(g);
    for (const auto& b : sc["brackets"]) {
      int p = b["left"][0], q = b["right"][0];
      auto i = b["left"][1].get<std::size_t>(), j = b["right"][1].get<std::size_t>();
      RatVector v = vector_from(b["value"]);
      l->set_bracket(p, i, q, j, sparsify(v));
      // graded antisymmetry fills in the mirrored entry
      if (p != q || i != j) l->set_bracket(q, j, p, i, sparsify((p * q) % 2 == 0 ? -v : v));
    }
    m.owned = l;
    m.algebra = l.get();
    return m;
  }
  m.hom = std::make_shared<HomComplexDGLA>(complex_from(sc["complex"]));
  if (kind == "hom_complex") {
    m.algebra = &m.hom->algebra();
    return m;
  }
  m.cocone = std::make_shared<CoconeDGLA>(ActingDGLA::full(m.hom), vector_from(sc["section"]));
  m.algebra = &m.cocone->algebra();
  return m;
}

ArtinLocalAlgebra build_artin(const Json& sc) {
  return make_truncated(sc["artin"]["vars"].get<std::vector<std::string>>(), sc["artin"]["degree"].get<int>());
}

P1Resolution build_resolution(const Json& sc) {
  if (!sc.contains("resolution")) return P1Resolution::line_bundle(sc["d"].get<int>(), univariate(sc["sigma"]));
  const Json& j = sc["resolution"];
  P1Resolution r;
  r.lo = j["lo"];
  r.twists = j["twists"].get<std::vector<std::vector<int>>>();
  for (const auto& m : j["differentials"]) {
    PolyMatrix pm;
    for (const auto& row : m) {
      std::vector<Poly> pr;
      for (const auto& e : row) pr.push_back(univariate(e));
      pm.push_back(pr);
    }
    r.diffs.push_back(pm);
  }
  for (const auto& s : j["section"]) r.section.push_back(univariate(s));
  return r;
}

TwoTermComplex build_two_term(const Json& sc) {
  const std::string cx = sc["complex"];
  if (cx == "zero") return zero_two_term_complex();
  Poly z = univariate(sc["Z"]);
  int degree = sc["degree"];
  return cx == "principal_parts" ? principal_parts_to_line(z, degree) : theta_to_normal_a1(z, degree);
}

// ---------------------------------------------------------------------------

Json sequence_to_json(const LongExactSequence& seq) {
  Json nodes = Json::array(), ranks = Json::array(), zero = Json::array();
  for (const auto& n : seq.nodes) nodes.push_back({{"label", n.label}, {"degree", n.degree}, {"dim", n.dim}});
  for (const auto& m : seq.maps) {
    ranks.push_back(m.rank);
    zero.push_back(m.composes_to_zero);
  }
  return {{"name", seq.name},          {"nodes", nodes},
          {"ranks", ranks},            {"composes_to_zero", zero},
          {"rank_in", seq.boundary_in_rank}, {"rank_out", seq.boundary_out_rank},
          {"exact", seq.all_exact()}};
}

LongExactSequence sequence_from(const Json& j) {
  LongExactSequence seq;
  seq.name = j.at("name").get<std::string>();
  for (const auto& n : j.at("nodes"))
    seq.nodes.push_back({n.at("label").get<std::string>(), n.at("degree").get<int>(), n.at("dim").get<std::size_t>()});
  const Json& ranks = j.at("ranks");
  const Json& zero = j.at("composes_to_zero");
  if (seq.nodes.empty() || ranks.size() + 1 != seq.nodes.size() || zero.size() != ranks.size())
    throw VerificationError("sequence '" + seq.name + "' needs one map between consecutive nodes");
  for (std::size_t k = 0; k < ranks.size(); ++k) seq.maps.push_back({ranks[k].get<std::size_t>(), zero[k].get<bool>()});
  seq.boundary_in_rank = j.at("rank_in").get<std::size_t>();
  seq.boundary_out_rank = j.at("rank_out").get<std::size_t>();
  return seq;
}

Json stabilization_to_json(const StabilizationCertificate& c) {
  return {{"window", c.window}, {"dims", c.dims}, {"stable", c.stable}};
}

// ---------------------------------------------------------------------------

Json certificate_to_json(const FeasibilityCertificate& c) {
  Json out = {{"verdict", to_string(c.verdict)}, {"unknowns", c.unknowns}, {"linear_rows", c.linear_rows}};
  if (c.verdict == FeasibilityVerdict::Feasible) {
    Json b = Json::array();
    for (const auto& m : c.bracket) b.push_back(to_json(m));
    out["bracket"] = b;
    out["witness_source"] = c.witness_source;
  }
  if (c.verdict == FeasibilityVerdict::Infeasible) {
    Json comb = Json::array();
    for (const auto& [row, w] : c.combination)
      comb.push_back({{"kind", row.kind},
                      {"slots", row.slots},
                      {"component", row.component},
                      {"weight", to_string(w)},
                      {"constraint", row.text}});
    out["combination"] = comb;
    out["contradiction"] = to_string(c.contradiction);
    Json derived = Json::array();
    for (const auto& d : c.derived)
      derived.push_back({{"label", d.label}, {"unknown", d.unknown}, {"value", to_string(d.value)}});
    out["derived"] = derived;
  }
  return out;
}

FeasibilityCertificate certificate_from(const Json& j, const TwoTermComplex& c) {
  FeasibilityCertificate cert;
  const std::string v = j.at("verdict");
  cert.verdict = v == "feasible"     ? FeasibilityVerdict::Feasible
                 : v == "infeasible" ? FeasibilityVerdict::Infeasible
                                     : FeasibilityVerdict::Undecided;
  cert.unknowns = j.at("unknowns");
  cert.linear_rows = j.at("linear_rows");
  if (cert.verdict == FeasibilityVerdict::Feasible) {
    if (j.at("bracket").size() != c.dim0()) throw VerificationError("bracket needs one matrix per basis vector of L0");
    for (const auto& m : j.at("bracket")) cert.bracket.push_back(matrix_from(m, c.codomain1(), c.domain1));
  }
  if (cert.verdict == FeasibilityVerdict::Infeasible) {
    auto rows = linear_constraints(c);
    for (const auto& e : j.at("combination")) {
      ConstraintRow row;
      row.kind = e.at("kind");
      row.slots = e.at("slots").get<std::vector<std::size_t>>();
      row.component = e.at("component");
      auto it = std::find_if(rows.begin(), rows.end(), [&](const ConstraintRow& r) {
        return r.kind == row.kind && r.slots == row.slots && r.component == row.component;
      });
      if (it != rows.end()) row = *it;
      cert.combination.push_back({row, parse_rational(e.at("weight").get<std::string>())});
    }
    cert.contradiction = parse_rational(j.at("contradiction").get<std::string>());
  }
  return cert;
}

// ---------------------------------------------------------------------------

Json axioms_result(const DGLieAlgebra& l) {
  AxiomReport r = check_axioms(l);
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json w = Json::array();
    for (const auto& b : x.witness) w.push_back({b.degree, b.index});
    v.push_back({{"identity", x.identity}, {"witness", w}});
  }
  return {{"pass", r.pass()}, {"violations", v}};
}

Json cohomology_result(const GradedComplex& c) {
  CohomologyReport h = cohomology(c);
  Json dims = Json::object();
  Json degrees = Json::array(), values = Json::array();
  for (int n : h.degrees()) {
    degrees.push_back(n);
    values.push_back(h.dim(n));
  }
  return {{"degrees", degrees}, {"dims", values}, {"euler_characteristic", h.euler_characteristic()}};
}

Json tangent_result(const DGLieAlgebra& l) {
  FirstOrderClasses f = def_over_dual_numbers(l);
  std::size_t h1 = tangent_space(l).cols();
  return {{"first_order_classes", f.dimension},
          {"cycle_dim", f.cycle_dim},
          {"orbit_dim", f.orbit_dim},
          {"h1", h1},
          {"agrees", f.dimension == h1}};
}

Json affine_result(const Json& sc) {
  std::optional<int> window;
  if (sc["options"].contains("window")) window = sc["options"]["window"].get<int>();
  if (sc["space"] == "A1") {
    Poly f = univariate(sc["f"]);
    auto z = affine_divisor_a1(f, window.value_or(default_window(f.degree())));
    return {{"normal_dim", z.normal_dim},
            {"gamma_rank", z.gamma_rank},
            {"t1", z.t1_dim},
            {"oracle_t1", z.oracle_t1},
            {"agrees", z.t1_dim == z.oracle_t1}};
  }
  auto r = tjurina_number(parse_polynomial(sc["f"].get<std::string>(), {"x", "y"}), window.value_or(4));
  return {{"t1", r.tau}, {"stabilization", stabilization_to_json(r.certificate)}};
}

}  // namespace dk::scenario_detail
