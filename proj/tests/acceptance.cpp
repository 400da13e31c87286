// Acceptance run: one PASS/FAIL line per criterion, with wall time against its limit.
// Usage: acceptance <scenario-dir>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dk/deligne.hpp"
#include "dk/error.hpp"
#include "dk/feasibility.hpp"
#include "dk/geom.hpp"
#include "dk/scenario.hpp"
#include "dk/triples.hpp"
#include "fixtures.hpp"

using namespace dk;

namespace {

Poly poly(const std::string& s) { return parse_polynomial(s, {"t"}).univariate(); }

const char* kQuartic = "t^4-6t^3+11t^2-6t";

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

RatVector unit(std::size_t n, std::size_t j) {
  RatVector v = zero_vector(n);
  v[j] = 1;
  return v;
}

// 1. Random cocones: axioms and the exact sequence 0 → E[−1] → M → L → 0.
Outcome cocone_axioms() {
  Outcome o;
  std::mt19937 rng(1001);
  for (int trial = 0; trial < 100 && o.ok; ++trial) {
    int terms = 1 + static_cast<int>(rng() % 3);
    int lo = -static_cast<int>(rng() % static_cast<unsigned>(terms));
    GradedComplex e = testing::random_complex(rng, lo, terms, 4);
    auto hom = std::make_shared<HomComplexDGLA>(e);
    CoconeDGLA c(ActingDGLA::full(hom), testing::random_cycle(rng, e, 0));
    auto report = check_axioms(c.algebra());
    o.require(report.pass(), "instance " + std::to_string(trial) + " violates " +
                                 (report.pass() ? std::string() : report.violations.front().identity));
    try {
      const GradedComplex& m = c.algebra().complex();
      GradedComplex e1 = c.shifted_module();
      const GradedComplex& l = hom->algebra().complex();
      auto seq = long_exact_sequence(e1, m, l, c.inclusion(), c.projection(), m.lo() - 1, m.hi() + 1, "E[-1] -> M -> L",
                                     "H(E[-1])", "H(M)", "H(L)");
      o.require(seq.all_exact(), "instance " + std::to_string(trial) + ": cohomology sequence not exact");
      check_dgla_morphism(c.algebra(), hom->algebra(), c.projection());
    } catch (const Error& e) {
      o.require(false, "instance " + std::to_string(trial) + ": " + e.what());
    }
  }
  if (o.ok) o.detail = "100 instances";
  return o;
}

// 2. Stabilizer identity for every basis ν and the BCH action law over K[t]/(t⁴).
Outcome gauge_calculus() {
  Outcome o;
  std::mt19937 rng(2002);
  auto a = make_truncated({"t"}, 4);
  std::size_t checked = 0;
  for (int trial = 0; trial < 20 && o.ok; ++trial) {
    auto hom = std::make_shared<HomComplexDGLA>(testing::random_complex(rng, -1, 3, 2));
    TensorDGLA t(hom->algebra(), a);
    RatVector x = testing::random_mc(rng, t);
    o.require(mc_check(t, x), "instance " + std::to_string(trial) + ": base point is not Maurer-Cartan");
    for (std::size_t j = 0; j < t.dim(-1); ++j) {
      RatVector nu = unit(t.dim(-1), j);
      RatVector w = t.d(-1, nu) + t.bracket(1, x, -1, nu);
      o.require(gauge_act(t, w, x) == x, "instance " + std::to_string(trial) + ": stabilizer fails");
      ++checked;
    }
    RatVector g = testing::random_vector(rng, t.dim(0)), h = testing::random_vector(rng, t.dim(0));
    o.require(gauge_act(t, gauge_compose(t, g, h), x) == gauge_act(t, g, gauge_act(t, h, x)),
              "instance " + std::to_string(trial) + ": action law fails");
  }
  if (o.ok) o.detail = "20 instances, " + std::to_string(checked) + " stabilizer directions";
  return o;
}

// 3. Conjugation and membership identities of the gauge-affine lemma over K[t]/(t³).
Outcome gauge_affine() {
  Outcome o;
  std::mt19937 rng(3003);
  auto a = make_truncated({"t"}, 3);
  for (int trial = 0; trial < 20 && o.ok; ++trial) {
    GradedComplex e = testing::random_complex(rng, -1, 2, 2);
    auto hom = std::make_shared<HomComplexDGLA>(e);
    CoconeDGLA c(ActingDGLA::full(hom), testing::random_cycle(rng, e, 0));
    TensorDGLA t(c.algebra(), a);
    RatVector ut = testing::random_mc(rng, t);
    RatVector g = testing::random_vector(rng, t.dim(0));
    auto chk = check_gauge_affine(c, t, ut, g);
    o.require(chk.conjugation, "instance " + std::to_string(trial) + ": conjugation fails");
    o.require(chk.membership, "instance " + std::to_string(trial) + ": membership fails");
  }
  if (o.ok) o.detail = "20 instances";
  return o;
}

// 4. Čech cohomology of O(d) against monomial counting.
Outcome line_bundles() {
  Outcome o;
  for (int d = -6; d <= 6; ++d) {
    auto h = line_bundle_cohomology(d);
    auto [h0, h1] = line_bundle_oracle(d);
    o.require(h.h0 == h0 && h.h1 == h1 && h.certificate.stable, "d = " + std::to_string(d));
  }
  if (o.ok) o.detail = "d in [-6, 6]";
  return o;
}

struct Divisor {
  int d;
  const char* sigma;
};

const std::vector<Divisor> kDivisors{{2, "t^2-1"}, {4, kQuartic}};

// 5. T⁰, T¹, T² for two and four points, against O(2−d) and against Θ → N.
Outcome triple_invariants() {
  Outcome o;
  const std::vector<std::vector<std::size_t>> expected{{1, 0, 0}, {0, 1, 0}};
  for (std::size_t k = 0; k < kDivisors.size(); ++k) {
    auto [d, s] = kDivisors[k];
    auto r = compute_TI(P1Resolution::line_bundle(d, poly(s)));
    std::string tag = "d = " + std::to_string(d);
    o.require(std::vector<std::size_t>{r.t(0), r.t(1), r.t(2)} == expected[k], tag + ": (T0,T1,T2) differs");
    auto [h0, h1] = line_bundle_oracle(2 - d);
    o.require(r.t(0) == h0 && r.t(1) == h1 && r.t(2) == 0, tag + ": O(2-d) oracle differs");
    auto g = p1_triple_diagram(d, poly(s));
    g.set_window(r.certificate.window);
    auto tn = hypercohomology(g, P1Complex{0, {"Theta", "N"}, {"gamma"}, {}});
    for (int i = -1; i <= 3; ++i) o.require(r.t(i) == tn.dim(i), tag + ": Theta -> N differs in degree " + std::to_string(i));
  }
  if (o.ok) o.detail = "(1,0,0) and (0,1,0)";
  return o;
}

// 6. Every node of the three sequences satisfies rank in + rank out = dim.
Outcome exact_sequences() {
  Outcome o;
  std::vector<Divisor> cases = kDivisors;
  cases.push_back({2, "0"});
  cases.push_back({4, "0"});
  cases.push_back({-2, "0"});
  std::size_t segments = 0;
  for (auto [d, s] : cases) {
    auto r = compute_TI(P1Resolution::line_bundle(d, poly(s)));
    for (const auto& q : r.sequences) {
      int k = first_inexact_node(q);
      o.require(k < 0 && q.all_exact(), q.name + " fails for d = " + std::to_string(d) + ", sigma = " + s);
      segments += q.nodes.size();
    }
    o.require(r.euler, "Euler identity fails for d = " + std::to_string(d));
    if (std::string(s) == "0")
      for (int i = 0; i <= 3; ++i)
        o.require(r.t(i) == r.pair_dim(i) + r.sheaf_dim(i - 1), "sigma = 0 does not split for d = " + std::to_string(d));
  }
  if (o.ok) o.detail = std::to_string(segments) + " segments in " + std::to_string(cases.size()) + " scenarios";
  return o;
}

// 7. dim T¹ against first-order descent classes on the two-chart cover.
Outcome tangent_descent() {
  Outcome o;
  std::string dims;
  for (auto [d, s] : kDivisors) {
    auto r = P1Resolution::line_bundle(d, poly(s));
    auto ti = compute_TI(r);
    auto td = tangent_via_descent(r, ti.certificate.window);
    o.require(td.t1 == ti.t(1) && td.agrees(), "d = " + std::to_string(d));
    dims += (dims.empty() ? "" : ", ") + std::to_string(td.descent_dim) + "=" + std::to_string(ti.t(1));
  }
  if (o.ok) o.detail = "descent = T1: " + dims;
  return o;
}

// 8. Θ → N on A¹ admits no DG-Lie extension; P(X,L) → L does.
Outcome non_dg_lie() {
  Outcome o;
  for (int degree = 2; degree <= 5; ++degree) {
    auto c = theta_to_normal_a1(poly("t"), degree);
    auto cert = bracket_extension_feasibility(c);
    std::string tag = "D = " + std::to_string(degree);
    o.require(cert.verdict == FeasibilityVerdict::Infeasible, tag + ": not infeasible");
    o.require(verify_certificate(c, cert), tag + ": certificate does not verify");
    o.require(cert.contradiction == -2, tag + ": contradiction is not -2a = 0");
    auto value = [&](const std::string& label) -> std::optional<Rational> {
      for (const auto& dv : cert.derived)
        if (dv.label == label) return dv.value;
      return std::nullopt;
    };
    o.require(value("[t∂, 1]") == Rational(-1), tag + ": [t∂,a] = -a not derived");
    o.require(value("[∂, 1]") == Rational(0), tag + ": [∂,a] = 0 not derived");
  }
  auto p = principal_parts_to_line(poly("t"), 2);
  auto cert = bracket_extension_feasibility(p);
  o.require(cert.verdict == FeasibilityVerdict::Feasible && cert.witness_source == "cocone bracket" &&
                verify_certificate(p, cert),
            "P(X,L) -> L is not feasible with the cocone witness");
  if (o.ok) o.detail = "infeasible for D = 2..5 (-2a = 0), P -> L feasible";
  return o;
}

// 9. Surjective on T¹ and injective on T² for d ≥ −1.
Outcome forgetful_smooth() {
  Outcome o;
  const std::vector<Divisor> cases{{-1, "0"}, {0, "1"}, {1, "t"}, {2, "t^2-1"}, {3, "t^3-t"}, {4, kQuartic},
                                   {5, "0"},  {6, "t^6-1"}};
  for (auto [d, s] : cases) {
    auto f = forgetful_analysis(compute_TI(P1Resolution::line_bundle(d, poly(s))));
    o.require(f.criterion_applies && f.tangent_surjective && f.obstruction_injective,
              "d = " + std::to_string(d) + ", sigma = " + s);
  }
  if (o.ok) o.detail = "d = -1..6";
  return o;
}

// 10. Two runs of the corpus give identical report bytes.
Outcome determinism(const std::filesystem::path& dir) {
  Outcome o;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  o.require(!files.empty(), "no scenarios found in " + dir.string());
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    auto first = run_scenario(parse_scenario(ss.str())).dump(2);
    auto second = run_scenario(parse_scenario(ss.str())).dump(2);
    o.require(first == second, f.filename().string() + " differs between runs");
  }
  if (o.ok) o.detail = std::to_string(files.size()) + " scenarios";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path corpus = argc > 1 ? argv[1] : "scenarios";
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "cocone axiom suite", 10, cocone_axioms},
      {2, "gauge stabilizer and BCH action law", 10, gauge_calculus},
      {3, "gauge-affine identities", 10, gauge_affine},
      {4, "line-bundle oracle", 5, line_bundles},
      {5, "triple invariants on P1", 60, triple_invariants},
      {6, "long exact sequences", 30, exact_sequences},
      {7, "tangent identification by descent", 60, tangent_descent},
      {8, "non-DG-Lie example", 5, non_dg_lie},
      {9, "forgetful smoothness for d >= -1", 30, forgetful_smooth},
      {10, "determinism of the corpus", 0, [&] { return determinism(corpus); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.limit == 0 || secs < c.limit;
    if (!in_time) o.require(false, "over the time limit");
    bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    char timing[64];
    if (c.limit > 0)
      std::snprintf(timing, sizeof timing, "%.2f s < %.0f s", secs, c.limit);
    else
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::printf("criterion %2d %-4s %-38s %-16s %s\n", c.id, pass ? "PASS" : "FAIL", c.name, timing, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
