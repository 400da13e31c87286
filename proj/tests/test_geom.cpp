#include "doctest.h"

#include "dk/error.hpp"
#include "dk/geom.hpp"

using namespace dk;

namespace {

Poly poly(const std::string& s) { return parse_polynomial(s, {"t"}).univariate(); }

const char* kQuartic = "t^4-6t^3+11t^2-6t";

}  // namespace

TEST_CASE("line bundles match the monomial oracle") {
  for (int d = -6; d <= 6; ++d) {
    CAPTURE(d);
    auto h = line_bundle_cohomology(d);
    auto [h0, h1] = line_bundle_oracle(d);
    CHECK(h.h0 == h0);
    CHECK(h.h1 == h1);
    CHECK(h.certificate.stable);
    CHECK(h.certificate.dims.size() == 3);
  }
  CHECK(line_bundle_cohomology(3).h0 == 4);
  CHECK(line_bundle_cohomology(-3).h1 == 2);
}

TEST_CASE("chart sections of O(0) at window 5") {
  P1Diagram g;
  g.add_sheaf(P1Sheaf::line_bundle(0));
  g.set_window(5);
  CHECK(g.sections("O(0)").dim(P1Open::U0) == 6);
  CHECK(g.sections("O(0)").dim(P1Open::U01) == 11);
}

TEST_CASE("tangent sheaf") {
  P1Diagram g;
  g.add_sheaf(P1Sheaf::tangent());
  g.set_window(8);
  auto h = hypercohomology(g, P1Complex{0, {"Theta"}, {}, {}});
  CHECK(h.dim(0) == 3);
  CHECK(h.dim(1) == 0);

  // chain rule on basis monomials: s^k ∂_s acts on t^m = s^{-m} as −m s^{k-m-1},
  // which is −m t^{m+1-k}; the transition gives −t^{2-k} ∂_t.
  const auto& sec = g.sections("Theta");
  for (std::size_t k = 0; k < sec.dim(P1Open::U1); ++k) {
    RatVector img = sec.restriction(P1Open::U1).column(k);
    auto comps = sec.decode(P1Open::U01, img);
    for (int m = -3; m <= 3; ++m) {
      Laurent via_transition = Rational(m) * comps[0] * Laurent::monomial(m - 1);
      Laurent direct = Laurent::monomial(m + 1 - static_cast<int>(k), Rational(-m));
      CHECK(via_transition == direct);
    }
  }
}

TEST_CASE("transitions are invertible and principal parts couple through d") {
  for (int d = -3; d <= 4; ++d) {
    CHECK(P1Sheaf::principal_parts(d).transition_invertible());
    CHECK(P1Sheaf::line_bundle(d).transition_invertible());
  }
  CHECK_THROWS_AS(P1Sheaf::locally_free("bad", {{Laurent::monomial(0) + Laurent::monomial(1)}}),
                  PreconditionError);
  auto p = P1Sheaf::principal_parts(3);
  CHECK(p.transition()[0][1] == Laurent::monomial(1, Rational(3)));
  CHECK(P1Sheaf::principal_parts(0).transition()[0][1].is_zero());
}

TEST_CASE("triple diagram maps commute with restrictions") {
  for (auto [d, s] : std::vector<std::pair<int, std::string>>{{1, "t"}, {2, "t^2-1"}, {4, kQuartic}, {3, "0"}}) {
    CAPTURE(d);
    auto g = p1_triple_diagram(d, poly(s));
    g.set_window(default_window(d));
    for (const char* m : {"incl", "anchor", "sigma", "eval", "id_L", "id_P"}) CHECK_NOTHROW(g.check_compatible(m));
    if (s != "0") CHECK_NOTHROW(g.check_compatible("gamma"));
  }
}

TEST_CASE("Atiyah sequence is exact on every open") {
  auto g = p1_triple_diagram(4, poly(kQuartic));
  g.set_window(12);
  for (P1Open u : {P1Open::U0, P1Open::U1, P1Open::U01}) {
    RatMatrix incl = g.matrix("incl", u), anchor = g.matrix("anchor", u);
    CHECK(rank(incl) == incl.cols());
    CHECK(rank(anchor) == anchor.rows());
    CHECK((anchor * incl).is_zero());
    CHECK(incl.rows() == incl.cols() + anchor.rows());
  }
}

TEST_CASE("evaluation and gamma complexes are quasi-isomorphic") {
  for (auto [d, s] : std::vector<std::pair<int, std::string>>{{2, "t^2-1"}, {4, kQuartic}, {3, "t^3-t"}}) {
    CAPTURE(d);
    auto g = p1_triple_diagram(d, poly(s));
    g.set_window(default_window(d));
    auto pl = hypercohomology(g, P1Complex{0, {"P", "L"}, {"eval"}, {}});
    auto tn = hypercohomology(g, P1Complex{0, {"Theta", "N"}, {"gamma"}, {}});
    auto [o0, o1] = line_bundle_oracle(2 - d);
    for (int i = -1; i <= 3; ++i) CHECK(pl.dim(i) == tn.dim(i));
    CHECK(tn.dim(0) == o0);
    CHECK(tn.dim(1) == o1);
  }
}

TEST_CASE("sigma = 0 and evaluation vanish together") {
  auto g = p1_triple_diagram(2, Poly());
  g.set_window(10);
  CHECK(g.matrix("eval", P1Open::U0).is_zero());
  auto pl = hypercohomology(g, P1Complex{0, {"P", "L"}, {"eval"}, {}});
  auto p = hypercohomology(g, P1Complex{0, {"P"}, {}, {}});
  auto l = hypercohomology(g, P1Complex{0, {"L"}, {}, {}});
  CHECK(pl.dim(0) == p.dim(0));
  CHECK(pl.dim(1) == p.dim(1) + l.dim(0));
}

TEST_CASE("smooth divisor on P1 has no T1") {
  auto g = p1_triple_diagram(4, poly(kQuartic));
  g.set_window(12);
  for (P1Open u : {P1Open::U0, P1Open::U1, P1Open::U01}) {
    RatMatrix gm = g.matrix("gamma", u);
    CHECK(rank(gm) == gm.rows());
  }
  CHECK(g.sections("N").dim(P1Open::U0) == 4);
  CHECK(g.sections("N").dim(P1Open::U1) == 3);
  CHECK(g.sections("N").dim(P1Open::U01) == 3);
}

TEST_CASE("affine divisors on A1") {
  auto z = affine_divisor_a1(poly("t"), 6);
  CHECK(z.normal_dim == 1);
  CHECK(z.gamma(0, 0) == 1);  // γ(∂_t) = 1
  CHECK(z.t1_dim == 0);
  CHECK(z.log_fields.cols() == 6);  // t·K[t]∂_t in the window
  for (std::size_t c = 0; c < z.log_fields.cols(); ++c) CHECK(z.log_fields(0, c) == 0);

  auto z2 = affine_divisor_a1(poly("t^2"), 6);
  CHECK(z2.normal_dim == 2);
  CHECK(z2.gamma_rank == 1);
  CHECK(z2.t1_dim == 1);
  CHECK(z2.oracle_t1 == 1);

  auto z3 = affine_divisor_a1(poly("t^3 - t^2"), 8);
  CHECK(z3.t1_dim == z3.oracle_t1);
}

TEST_CASE("Tjurina numbers of plane curves") {
  std::vector<std::string> xy{"x", "y"};
  CHECK(tjurina_number(parse_polynomial("xy", xy)).tau == 1);
  CHECK(tjurina_number(parse_polynomial("y^2 - x^2", xy)).tau == 1);
  CHECK(tjurina_number(parse_polynomial("y^2 - x^3", xy)).tau == 2);
  CHECK(tjurina_number(parse_polynomial("y - x^2", xy)).tau == 0);
  CHECK(tjurina_number(parse_polynomial("y^2 - x^3", xy)).certificate.stable);
}

TEST_CASE("stabilization failure is reported") {
  int calls = 0;
  CHECK_THROWS_AS(stabilize(0, 6, [&](int n) { ++calls; return std::vector<std::size_t>{static_cast<std::size_t>(n)}; }),
                  StabilizationError);
  CHECK(calls > 0);
}
