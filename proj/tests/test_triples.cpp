#include "doctest.h"

#include "dk/error.hpp"
#include "dk/triples.hpp"

using namespace dk;

namespace {

Poly poly(const std::string& s) { return parse_polynomial(s, {"t"}).univariate(); }

const char* kQuartic = "t^4-6t^3+11t^2-6t";

std::vector<std::size_t> t012(const TIReport& r) { return {r.t(0), r.t(1), r.t(2)}; }

}  // namespace

TEST_CASE("smooth divisors on P1") {
  auto a = compute_TI(P1Resolution::line_bundle(2, poly("t^2-1")));
  CHECK(t012(a) == std::vector<std::size_t>{1, 0, 0});
  auto b = compute_TI(P1Resolution::line_bundle(4, poly(kQuartic)));
  CHECK(t012(b) == std::vector<std::size_t>{0, 1, 0});
  for (const auto* r : {&a, &b}) {
    CHECK(r->certificate.stable);
    CHECK(r->euler);
    for (const auto& s : r->sequences) {
      CAPTURE(s.name);
      CHECK(s.all_exact());
      CHECK(first_inexact_node(s) == -1);
    }
  }
}

TEST_CASE("tangent and obstruction spaces follow O(2-d)") {
  for (auto [d, s] : std::vector<std::pair<int, std::string>>{{1, "t-1"}, {2, "t^2-1"}, {3, "t^3-t"}, {4, kQuartic}}) {
    CAPTURE(d);
    auto r = compute_TI(P1Resolution::line_bundle(d, poly(s)));
    auto [h0, h1] = line_bundle_oracle(2 - d);
    CHECK(r.t(-1) == 0);
    CHECK(r.t(0) == h0);
    CHECK(r.t(1) == h1);
    CHECK(r.t(2) == 0);
    CHECK(r.t(3) == 0);

    // same numbers through Θ → N_{Z|X}
    auto g = p1_triple_diagram(d, poly(s));
    g.set_window(r.certificate.window);
    auto tn = hypercohomology(g, P1Complex{0, {"Theta", "N"}, {"gamma"}, {}});
    for (int i = -1; i <= 3; ++i) CHECK(r.t(i) == tn.dim(i));
  }
}

TEST_CASE("pair invariants and sheaf cohomology") {
  auto r = compute_TI(P1Resolution::line_bundle(2, poly("t^2-1")));
  CHECK(r.ext[1] == 1);    // Ext⁰(O(2), O(2))
  CHECK(r.pair[1] == 4);   // gl₁ ⊕ sl₂
  CHECK(r.sheaf[1] == 3);  // H⁰(O(2))
  CHECK(r.theta[1] == 3);
  CHECK(r.k[2] == 2);
  CHECK(r.support_lo == 0);
  CHECK(r.support_hi == 1);
}

TEST_CASE("zero section splits the cocone") {
  for (int d : {-3, 0, 2}) {
    CAPTURE(d);
    auto r = compute_TI(P1Resolution::line_bundle(d, Poly()));
    for (int i = 0; i <= 3; ++i) CHECK(r.t(i) == r.pair_dim(i) + r.sheaf_dim(i - 1));
    for (const auto& s : r.sequences) CHECK(s.all_exact());
  }
}

TEST_CASE("forgetful map") {
  auto a = forgetful_analysis(compute_TI(P1Resolution::line_bundle(4, poly(kQuartic))));
  CHECK(a.criterion_applies);
  CHECK(a.tangent_surjective);
  CHECK(a.obstruction_injective);
  CHECK(a.smooth);
  CHECK(a.tangent_rank == 0);  // T¹(X,F) = 0 for O(4) on P¹
  CHECK_FALSE(a.tangent_injective);

  auto b = forgetful_analysis(compute_TI(P1Resolution::line_bundle(-3, Poly())));
  CHECK(b.h1_sheaf == 2);
  CHECK_FALSE(b.criterion_applies);
  CHECK_FALSE(b.smooth);
}

TEST_CASE("first-order descent reproduces T1") {
  for (auto [d, s] : std::vector<std::pair<int, std::string>>{{2, "t^2-1"}, {4, kQuartic}}) {
    CAPTURE(d);
    auto r = P1Resolution::line_bundle(d, poly(s));
    auto ti = compute_TI(r);
    auto td = tangent_via_descent(r, ti.certificate.window);
    CHECK(td.t1 == ti.t(1));
    CHECK(td.agrees());
  }
}

TEST_CASE("invariants do not depend on the resolution") {
  auto a = P1Resolution::line_bundle(4, poly(kQuartic));
  auto b = a.with_acyclic_pair(1);
  CHECK_NOTHROW(validate_resolution(b, 12));
  auto v = resolution_independence_check(a, b, acyclic_pair_inclusion(a));
  CHECK(v.chain_map);
  CHECK(v.section_matches);
  CHECK(v.injective_locally_free);
  CHECK(v.equal_invariants);
  CHECK(v.ok());

  // moving the lift by a boundary
  auto c = b;
  c.section[1] = poly("1+2t");
  auto w = resolution_independence_check(b, c, identity_comparison(b));
  CHECK(w.ok());

  // a lift of a different section is rejected
  auto e = b;
  e.section[0] = poly("t^4-6t^3+11t^2-6t+1");
  CHECK_FALSE(resolution_independence_check(b, e, identity_comparison(b)).section_matches);
}

TEST_CASE("Euler sequence resolves O(1)") {
  P1Resolution r;
  r.lo = -1;
  r.twists = {{-1}, {0, 0}};
  r.diffs = {{{poly("t")}, {poly("-1")}}};
  r.section = {poly("-1"), poly("1")};  // maps to t - 1
  CHECK_NOTHROW(validate_resolution(r, 10));
  auto euler = compute_TI(r);
  auto direct = compute_TI(P1Resolution::line_bundle(1, poly("t-1")));
  CHECK(euler.triple == direct.triple);
  CHECK(euler.pair == direct.pair);
  CHECK(euler.sheaf == direct.sheaf);
  for (const auto& s : euler.sequences) CHECK(s.all_exact());
  CHECK(euler.euler);
}

TEST_CASE("invalid resolutions are rejected") {
  P1Resolution r;
  r.lo = -1;
  r.twists = {{0}, {0}};
  r.diffs = {{{poly("t")}}};  // t is not a section of O(0)
  r.section = {poly("1")};
  CHECK_THROWS_AS(validate_resolution(r, 10), PreconditionError);

  P1Resolution z;
  z.lo = -1;
  z.twists = {{0}, {0}};
  z.diffs = {{{Poly()}}};  // not injective
  z.section = {poly("1")};
  CHECK_THROWS_AS(validate_resolution(z, 10), ComplexError);

  P1Resolution two;
  two.lo = -2;
  two.twists = {{0}, {0}, {0}};
  two.diffs = {{{poly("1")}}, {{poly("1")}}};  // ∂² ≠ 0
  two.section = {poly("1")};
  CHECK_THROWS_AS(validate_resolution(two, 10), ComplexError);
}

TEST_CASE("forgetful map is smooth for d >= -1") {
  for (auto [d, s] : std::vector<std::pair<int, std::string>>{{-1, "0"}, {0, "1"}, {1, "t"}, {2, "t^2-1"}, {3, "0"}}) {
    CAPTURE(d);
    auto r = compute_TI(P1Resolution::line_bundle(d, poly(s)));
    auto a = forgetful_analysis(r);
    CHECK(a.criterion_applies);
    CHECK(a.tangent_surjective);
    CHECK(a.obstruction_injective);
    CHECK(a.smooth);
  }
}

TEST_CASE("split case: surjectivity on T1 matches the restriction to H1") {
  for (int d : {-4, -3, -2, 1}) {
    CAPTURE(d);
    auto r = compute_TI(P1Resolution::line_bundle(d, Poly()));
    auto a = forgetful_analysis(r);
    CHECK(a.tangent_surjective == (a.restriction_rank == 0));
    // with σ = 0 the sequence splits, so T¹(X,F) → H¹(X,F) vanishes
    CHECK(a.restriction_rank == 0);
    CHECK(a.tangent_rank == r.pair_dim(1));
  }
}
