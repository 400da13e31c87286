#include "doctest.h"

#include <memory>
#include <random>

#include "dk/deligne.hpp"
#include "dk/error.hpp"
#include "fixtures.hpp"

using namespace dk;

namespace {

RatVector vec(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

RatVector unit(std::size_t n, std::size_t i) {
  RatVector v = zero_vector(n);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("mc_check basics") {
  auto l = testing::sl2();
  auto a = make_truncated({"t"}, 3);
  TensorDGLA t(l, a);
  CHECK(mc_check(t, t.zero(1)));

  // abelian L = (0 → Q) in degree 1: any cycle is MC over dual numbers
  DGLieAlgebra ab(GradedComplex(1, {1}, {}));
  auto eps = dual_numbers();
  TensorDGLA te(ab, eps);
  CHECK(mc_check(te, vec({5})));
}

TEST_CASE("Hom complex MC is (∂+x)² = 0") {
  // E = (Q --0--> Q) in degrees 0,1; u ∈ Hom^1 is the single map E^0 → E^1
  auto hom = std::make_shared<HomComplexDGLA>(GradedComplex(0, {1, 1}, {RatMatrix(1, 1)}));
  auto a = make_truncated({"t"}, 3);
  TensorDGLA t(hom->algebra(), a);
  ModuleOverArtin mod(*hom, a);
  RatVector x = t.embed(1, vec({1}), 0);
  CHECK(mc_check(t, x));  // u∘u = 0 automatically
  RatMatrix D = mod.differential() + mod.operator_of(1, x);
  CHECK((D * D).is_zero());

  // E = Q² in degree 0 and 1, u nilpotent vs non-nilpotent
  auto hom2 = std::make_shared<HomComplexDGLA>(GradedComplex(0, {1, 1, 1}, {RatMatrix(1, 1), RatMatrix(1, 1)}));
  TensorDGLA t2(hom2->algebra(), a);
  ModuleOverArtin mod2(*hom2, a);
  // u = (E^0→E^1: 1, E^1→E^2: 1): u∘u ≠ 0 so [u,u]⊗t² ≠ 0
  RatVector u = hom2->from_blocks(1, {{0, RatMatrix(1, 1, {Rational(1)})}, {1, RatMatrix(1, 1, {Rational(1)})}});
  RatVector x2 = t2.embed(1, u, 0);
  CHECK_FALSE(mc_check(t2, x2));
  RatMatrix D2 = mod2.differential() + mod2.operator_of(1, x2);
  CHECK_FALSE((D2 * D2).is_zero());
}

TEST_CASE("gauge action on an abelian algebra fixes 0 for closed a") {
  DGLieAlgebra ab(GradedComplex(0, {1, 1}, {RatMatrix(1, 1)}));
  auto a = make_truncated({"t"}, 3);
  TensorDGLA t(ab, a);
  CHECK(is_zero(gauge_act(t, vec({1, 2}), t.zero(1))));
}

TEST_CASE("stabilizer, action law and MC preservation on random Hom algebras") {
  std::mt19937 rng(41);
  auto a = make_truncated({"t"}, 4);
  for (int trial = 0; trial < 6; ++trial) {
    auto hom = std::make_shared<HomComplexDGLA>(testing::random_complex(rng, -1, 3, 2));
    TensorDGLA t(hom->algebra(), a);
    RatVector x = testing::random_mc(rng, t);
    REQUIRE(mc_check(t, x));
    for (std::size_t j = 0; j < t.dim(-1); ++j) {
      RatVector nu = unit(t.dim(-1), j);
      RatVector w = t.d(-1, nu) + t.bracket(1, x, -1, nu);
      CHECK(gauge_act(t, w, x) == x);
    }
    RatVector g = testing::random_vector(rng, t.dim(0)), h = testing::random_vector(rng, t.dim(0));
    RatVector y = gauge_act(t, h, x);
    CHECK(mc_check(t, y));
    CHECK(gauge_act(t, gauge_compose(t, g, h), x) == gauge_act(t, g, y));
    CHECK(gauge_act(t, gauge_compose(t, g, -g), x) == x);
    CHECK(gauge_compose(t, g, t.zero(0)) == g);
  }
}

TEST_CASE("Hom gauge action is conjugation of ∂ + u") {
  std::mt19937 rng(8);
  auto a = make_truncated({"t"}, 3);
  for (int trial = 0; trial < 5; ++trial) {
    auto hom = std::make_shared<HomComplexDGLA>(testing::random_complex(rng, -1, 2, 2));
    TensorDGLA t(hom->algebra(), a);
    ModuleOverArtin mod(*hom, a);
    RatVector u = testing::random_mc(rng, t);
    RatVector f = testing::random_vector(rng, t.dim(0));
    RatVector y = gauge_act(t, f, u);
    RatMatrix F = mod.operator_of(0, f);
    RatMatrix lhs = mod.differential() + mod.operator_of(1, y);
    RatMatrix rhs = nilpotent_exp(F) * (mod.differential() + mod.operator_of(1, u)) * nilpotent_exp(Rational(-1) * F);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("morphism equality") {
  std::mt19937 rng(12);
  auto a = make_truncated({"t"}, 3);
  auto hom = std::make_shared<HomComplexDGLA>(GradedComplex(-1, {1, 2}, {RatMatrix(2, 1, {Rational(1), Rational(0)})}));
  TensorDGLA t(hom->algebra(), a);
  RatVector x = testing::random_mc(rng, t);
  RatVector g = testing::random_vector(rng, t.dim(0));
  auto v = morphism_equal(t, g, g, x);
  CHECK(v.equal);

  for (std::size_t j = 0; j < t.dim(-1); ++j) {
    RatVector nu = testing::random_vector(rng, t.dim(-1));
    RatVector w = t.d(-1, nu) + t.bracket(1, x, -1, nu);
    RatVector b = gauge_compose(t, g, w);
    auto ve = morphism_equal(t, b, g, x);
    REQUIRE(ve.equal);
    REQUIRE(ve.nu);
    CHECK(t.d(-1, *ve.nu) + t.bracket(1, x, -1, *ve.nu) == bch(t, -g, b));
  }
  CHECK_THROWS_AS(morphism_equal(t, g, g + t.embed(0, hom->identity_element(), 0) + g, x), PreconditionError);
}

TEST_CASE("distinct morphisms when L^-1 = 0") {
  // abelian L in degrees 0,1 with zero differential: every a fixes x = 0
  DGLieAlgebra ab(GradedComplex(0, {1, 1}, {RatMatrix(1, 1)}));
  auto a = make_truncated({"t"}, 3);
  TensorDGLA t(ab, a);
  auto v = morphism_equal(t, t.embed(0, vec({1}), 0), t.embed(0, vec({2}), 0), t.zero(1));
  CHECK_FALSE(v.equal);
}

TEST_CASE("first-order classes") {
  DGLieAlgebra ab(GradedComplex(1, {1}, {}));
  CHECK(def_over_dual_numbers(ab).dimension == 1);

  DGLieAlgebra acyclic(GradedComplex(0, {1, 1}, {RatMatrix::identity(1)}));
  CHECK(def_over_dual_numbers(acyclic).dimension == 0);

  std::mt19937 rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    GradedComplex e = testing::random_complex(rng, -1, 2, 3);
    auto hom = std::make_shared<HomComplexDGLA>(e);
    CoconeDGLA c(ActingDGLA::full(hom), testing::random_cycle(rng, e, 0));
    auto fo = def_over_dual_numbers(c.algebra());
    CHECK(fo.dimension == cohomology(c.algebra().complex()).dim(1));
    CHECK(fo.representatives.cols() == fo.dimension);
    CHECK(tangent_space(c.algebra()).cols() == fo.dimension);
  }
}

TEST_CASE("order-by-order lifting") {
  SUBCASE("abelian algebra lifts with zero corrections") {
    DGLieAlgebra ab(GradedComplex(1, {2}, {}));
    auto a = make_truncated({"t"}, 5);
    TensorDGLA t(ab, a);
    auto steps = lift_order_by_order(t, t.embed(1, vec({1, 3}), 0));
    REQUIRE(steps.size() == 3);
    for (const auto& s : steps) {
      CHECK(s.lifted);
      CHECK(is_zero(s.correction));
    }
  }
  SUBCASE("obstruction equals the class of half the bracket") {
    // L^1 = Q·x, L^2 = Q·y with [x,x] = 2y and zero differential: H² = Q
    DGLieAlgebra l(GradedComplex(1, {1, 1}, {RatMatrix(1, 1)}));
    l.set_bracket(1, 0, 1, 0, {{0, Rational(2)}});
    CHECK(check_axioms(l).pass());
    auto a = make_truncated({"t"}, 3);
    TensorDGLA t(l, a);
    auto steps = lift_order_by_order(t, t.embed(1, vec({1}), 0));
    REQUIRE(steps.size() == 1);
    CHECK_FALSE(steps[0].lifted);
    CHECK(steps[0].residual_is_cocycle);
    REQUIRE(steps[0].obstruction.size() == 1);
    auto h = cohomology(l.complex());
    CHECK(steps[0].obstruction[0].second == h.class_of(2, vec({1})));
  }
  SUBCASE("d = 0 and [x1,x1] = 0 lifts trivially") {
    auto hom = std::make_shared<HomComplexDGLA>(GradedComplex(0, {1, 1}, {RatMatrix(1, 1)}));
    auto a = make_truncated({"t"}, 4);
    TensorDGLA t(hom->algebra(), a);
    RatVector x1 = t.embed(1, vec({1}), 0);
    auto steps = lift_order_by_order(t, x1);
    for (const auto& s : steps) {
      CHECK(s.lifted);
      CHECK(is_zero(s.correction));
    }
    CHECK(steps.back().solution == x1);
  }
  SUBCASE("nontrivial corrections produce MC elements") {
    std::mt19937 rng(4);
    auto a = make_truncated({"x", "y"}, 4);
    int lifted = 0;
    for (int trial = 0; trial < 6; ++trial) {
      auto hom = std::make_shared<HomComplexDGLA>(testing::random_complex(rng, -1, 3, 2));
      TensorDGLA t(hom->algebra(), a);
      RatMatrix z = kernel_basis(hom->algebra().complex().d(1));
      if (z.cols() == 0) continue;
      RatVector x1 = t.embed(1, testing::random_combination(rng, z), 0) +
                     t.embed(1, testing::random_combination(rng, z), 1);
      auto steps = lift_order_by_order(t, x1);
      for (const auto& s : steps) CHECK(s.residual_is_cocycle);
      if (steps.back().lifted) {
        CHECK(mc_check(t, steps.back().solution));
        ++lifted;
      }
    }
    CHECK(lifted > 0);
  }
}

TEST_CASE("materialize: trivial deformation and gauge invariance of the section class") {
  // E = (O^1 --0--> ...) kept tiny: E^{-1} = Q, E^0 = Q², ∂ = (1,0)ᵀ, F = Q
  GradedComplex e(-1, {1, 2}, {RatMatrix(2, 1, {Rational(1), Rational(0)})});
  auto hom = std::make_shared<HomComplexDGLA>(e);
  CoconeDGLA c(ActingDGLA::full(hom), vec({0, 1}));
  auto a = make_truncated({"t"}, 3);
  TensorDGLA t(c.algebra(), a);

  auto p0 = materialize_deformation(c, t, t.zero(1));
  CHECK(p0.flat);
  CHECK(p0.exact);
  CHECK(p0.fiber_dim == 1);
  CHECK(p0.module_dim == 3);
  CHECK(p0.section_is_cycle);

  std::mt19937 rng(21);
  ModuleOverArtin mod(*hom, a);
  for (int trial = 0; trial < 5; ++trial) {
    RatVector ut = testing::random_mc(rng, t);
    auto p = materialize_deformation(c, t, ut);
    CHECK(p.squares_to_zero);
    CHECK(p.flat);
    CHECK(p.exact);
    CHECK(p.section_is_cycle);

    // (0,b) action: F_A unchanged and section class unchanged
    RatVector b = testing::random_vector(rng, e.dim(-1) * a.dim());
    RatVector g = t.zero(0);
    for (std::size_t i = 0; i < e.dim(-1); ++i)
      for (std::size_t al = 0; al < a.dim(); ++al) g[t.index(c.l_dim(0) + i, al)] = b[i * a.dim() + al];
    auto q = materialize_deformation(c, t, gauge_act(t, g, ut));
    CHECK(q.deformed_differential == p.deformed_differential);
    CHECK(same_section_class(p, p.section, q.section));
  }
}

TEST_CASE("gauge-affine identities on random cocones") {
  std::mt19937 rng(303);
  auto a = make_truncated({"t"}, 3);
  for (int trial = 0; trial < 6; ++trial) {
    GradedComplex e = testing::random_complex(rng, -1, 2, 2);
    auto hom = std::make_shared<HomComplexDGLA>(e);
    CoconeDGLA c(ActingDGLA::full(hom), testing::random_cycle(rng, e, 0));
    TensorDGLA t(c.algebra(), a);
    RatVector ut = testing::random_mc(rng, t);
    RatVector g = testing::random_vector(rng, t.dim(0));
    auto chk = check_gauge_affine(c, t, ut, g);
    CHECK(chk.conjugation);
    CHECK(chk.membership);
  }
}
