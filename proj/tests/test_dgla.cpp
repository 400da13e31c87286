#include "doctest.h"

#include <memory>
#include <random>

#include "dk/dgla.hpp"
#include "dk/error.hpp"
#include "fixtures.hpp"

using namespace dk;

namespace {

// Basis order h, e, f.
DGLieAlgebra sl2(Rational ef_coeff = 1, Rational hf_coeff = -2) {
  DGLieAlgebra l(GradedComplex(0, {3}, {}));
  auto set = [&](std::size_t i, std::size_t j, SparseVec v) {
    SparseVec neg;
    for (auto& [k, c] : v) neg.emplace_back(k, -c);
    l.set_bracket(0, i, 0, j, v);
    l.set_bracket(0, j, 0, i, neg);
  };
  set(0, 1, {{1, Rational(2)}});
  set(0, 2, {{2, hf_coeff}});
  set(1, 2, {{0, ef_coeff}});
  return l;
}

RatVector e_vec(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("abelian algebra passes") {
  GradedComplex c(0, {1, 1}, {RatMatrix(1, 1, {Rational(3)})});
  CHECK(check_axioms(DGLieAlgebra(c)).pass());
}

TEST_CASE("sl2 passes and a broken variant reports a Jacobi witness") {
  CHECK(check_axioms(sl2()).pass());
  // [e,f] = 2h is only a rescaling of f and still a Lie algebra
  CHECK(check_axioms(sl2(2)).pass());
  auto rep = check_axioms(sl2(1, -1));
  REQUIRE_FALSE(rep.pass());
  CHECK(rep.violations[0].identity == "jacobi");
  REQUIRE(rep.violations[0].witness.size() == 3);
  CHECK(rep.violations[0].witness[0].index == 0);
  CHECK(rep.violations[0].witness[1].index == 1);
  CHECK(rep.violations[0].witness[2].index == 2);
}

TEST_CASE("antisymmetry violation is reported") {
  DGLieAlgebra l(GradedComplex(0, {2}, {}));
  l.set_bracket(0, 0, 0, 1, {{0, Rational(1)}});
  auto rep = check_axioms(l);
  REQUIRE_FALSE(rep.pass());
  CHECK(rep.violations[0].identity == "antisymmetry");
}

TEST_CASE("hom complex of a one-term complex is the matrix algebra") {
  HomComplexDGLA h(GradedComplex(0, {2}, {}));
  CHECK(h.algebra().dim(0) == 4);
  CHECK(check_axioms(h.algebra()).pass());
  // [E11, E12] = E12
  auto v = h.algebra().bracket_basis(0, 0, 0, 1);
  REQUIRE(v.size() == 1);
  CHECK(v[0].first == 1);
  CHECK(v[0].second == 1);
}

TEST_CASE("hom complex of Q --2--> Q") {
  GradedComplex e(-1, {1, 1}, {RatMatrix(1, 1, {Rational(2)})});
  HomComplexDGLA h(e);
  const auto& a = h.algebra();
  CHECK(a.dim(-1) == 1);
  CHECK(a.dim(0) == 2);
  CHECK(a.dim(1) == 1);
  CHECK(check_axioms(a).pass());
  // Hom^0 blocks: k=-1 then k=0, so (f_{-1}, f_0) ↦ ∂f_{-1} − f_0∂ = 2f_{-1} − 2f_0
  CHECK(a.d(0, e_vec({1, 0})) == e_vec({2}));
  CHECK(a.d(0, e_vec({0, 1})) == e_vec({-2}));
  auto coh = cohomology(a.complex());
  // E is acyclic, so Hom*(E,E) is too: the identity is a cycle and a boundary
  CHECK(coh.dim(-1) == 0);
  CHECK(coh.dim(0) == 0);
  CHECK(coh.dim(1) == 0);
  CHECK(is_zero(a.d(0, h.identity_element())));
  CHECK(coh.solve_membership(0, h.identity_element()));
}

TEST_CASE("hom complex with zero differential has zero differential") {
  GradedComplex e(0, {2, 1}, {RatMatrix(1, 2)});
  HomComplexDGLA h(e);
  for (int n = h.algebra().lo(); n <= h.algebra().hi(); ++n) CHECK(h.algebra().complex().d(n).is_zero());
}

TEST_CASE("cocone with s = 0 has no evaluation term") {
  auto hom = std::make_shared<HomComplexDGLA>(GradedComplex(0, {1}, {}));
  CoconeDGLA c(ActingDGLA::full(hom), e_vec({0}));
  CHECK(c.algebra().complex().d(0).is_zero());
}

TEST_CASE("cocone of Hom(Q,Q) at s = 1") {
  auto hom = std::make_shared<HomComplexDGLA>(GradedComplex(0, {1}, {}));
  CoconeDGLA c(ActingDGLA::full(hom), e_vec({1}));
  CHECK(c.algebra().dim(0) == 1);
  CHECK(c.algebra().dim(1) == 1);
  CHECK(c.algebra().d(0, e_vec({1})) == e_vec({-1}));
  auto coh = cohomology(c.algebra().complex());
  CHECK(coh.dim(0) == 0);
  CHECK(coh.dim(1) == 0);
  CHECK(check_axioms(c.algebra()).pass());
}

TEST_CASE("cocone rejects a non-cycle section") {
  auto hom = std::make_shared<HomComplexDGLA>(GradedComplex(0, {1, 1}, {RatMatrix::identity(1)}));
  CHECK_THROWS_AS(CoconeDGLA(ActingDGLA::full(hom), e_vec({1})), PreconditionError);
}

TEST_CASE("randomized cocones: axioms, projection and inclusion") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    int terms = 1 + static_cast<int>(rng() % 3);
    int lo = -static_cast<int>(rng() % static_cast<unsigned>(terms));
    GradedComplex e = testing::random_complex(rng, lo, terms, 3);
    auto hom = std::make_shared<HomComplexDGLA>(e);
    RatVector s = testing::random_cycle(rng, e, 0);
    CoconeDGLA c(ActingDGLA::full(hom), s);
    CHECK(check_axioms(c.algebra()).pass());
    check_dgla_morphism(c.algebra(), hom->algebra(), c.projection());
    check_chain_map(c.shifted_module(), c.algebra().complex(), c.inclusion());
    for (int i = c.algebra().lo(); i <= c.algebra().hi(); ++i)
      CHECK(c.algebra().dim(i) == hom->algebra().dim(i) + e.dim(i - 1));
  }
}

TEST_CASE("twist isomorphism") {
  GradedComplex e(-1, {1, 1}, {RatMatrix::identity(1)});
  auto hom = std::make_shared<HomComplexDGLA>(e);
  RatVector s = e_vec({1}), r = e_vec({1});
  CoconeDGLA c(ActingDGLA::full(hom), s);
  CoconeDGLA c2(ActingDGLA::full(hom), s + e.d(-1) * r);

  ChainMap f = twist_iso(c, r);
  check_dgla_morphism(c.algebra(), c2.algebra(), f);

  // direct evaluation on M^0 = Hom^0 ⊕ E^{-1}: basis (u_{-1}, u_0, x)
  // u = u_{-1} (on E^{-1}): u(r) = 1 lands in E^{-1}
  RatVector img = f.maps[static_cast<std::size_t>(0 - f.lo)] * e_vec({1, 0, 0});
  CHECK(img == e_vec({1, 0, 1}));
  img = f.maps[static_cast<std::size_t>(0 - f.lo)] * e_vec({0, 1, 0});
  CHECK(img == e_vec({0, 1, 0}));

  ChainMap back = twist_iso(c2, -r);
  for (int i = c.algebra().lo(); i <= c.algebra().hi(); ++i) {
    std::size_t k = static_cast<std::size_t>(i - f.lo);
    CHECK(back.maps[k] * f.maps[k] == RatMatrix::identity(c.algebra().dim(i)));
  }
  ChainMap id = twist_iso(c, e_vec({0}));
  for (const auto& m : id.maps) CHECK(m == RatMatrix::identity(m.rows()));
}

TEST_CASE("randomized twist isomorphisms are DG-Lie morphisms") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    GradedComplex e = testing::random_complex(rng, -1, 2, 3);
    auto hom = std::make_shared<HomComplexDGLA>(e);
    RatVector s = testing::random_cycle(rng, e, 0);
    RatVector r = testing::random_vector(rng, e.dim(-1));
    CoconeDGLA c(ActingDGLA::full(hom), s);
    CoconeDGLA c2(ActingDGLA::full(hom), s + e.d(-1) * r);
    check_dgla_morphism(c.algebra(), c2.algebra(), twist_iso(c, r));
  }
}

TEST_CASE("anchor compatibility is checked") {
  // L = Hom(Q,Q) anchored to itself by the identity; then by a non-bracket map
  auto hom = std::make_shared<HomComplexDGLA>(GradedComplex(0, {2}, {}));
  DGLieAlgebra l = hom->algebra();
  auto target = std::make_shared<DGLieAlgebra>(hom->algebra());
  l.set_anchor({target, ChainMap{0, {RatMatrix::identity(4)}}});
  CHECK(check_axioms(l).pass());
  RatMatrix twice = Rational(2) * RatMatrix::identity(4);
  l.set_anchor({target, ChainMap{0, {twice}}});
  auto rep = check_axioms(l);
  REQUIRE_FALSE(rep.pass());
  CHECK(rep.violations[0].identity == "anchor-bracket");
}
