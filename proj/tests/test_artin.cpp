#include "doctest.h"

#include <random>

#include "dk/artin.hpp"
#include "dk/error.hpp"
#include "fixtures.hpp"

using namespace dk;

namespace {

// 2×2 matrices over A = K ⊕ m; an A-element is indexed 0 (the unit) then 1 + α.
using AElem = RatVector;
using AMat = std::vector<AElem>;  // row-major, 4 entries

struct MatrixModel {
  const ArtinLocalAlgebra& a;
  std::size_t n() const { return a.dim() + 1; }

  AElem mul(const AElem& x, const AElem& y) const {
    AElem z = zero_vector(n());
    for (std::size_t i = 0; i < n(); ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n(); ++j) {
        if (is_zero(y[j])) continue;
        if (i == 0) z[j] += x[i] * y[j];
        else if (j == 0) z[i] += x[i] * y[j];
        else if (int g = a.product(i - 1, j - 1); g >= 0) z[static_cast<std::size_t>(g) + 1] += x[i] * y[j];
      }
    }
    return z;
  }
  AMat mul(const AMat& x, const AMat& y) const {
    AMat z(4, zero_vector(n()));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k) z[r * 2 + c] += mul(x[r * 2 + k], y[k * 2 + c]);
    return z;
  }
  AMat identity() const {
    AMat z(4, zero_vector(n()));
    z[0][0] = 1;
    z[3][0] = 1;
    return z;
  }
  AMat scale(const Rational& c, AMat x) const {
    for (auto& e : x) e = c * e;
    return x;
  }
  AMat add(AMat x, const AMat& y) const {
    for (int i = 0; i < 4; ++i) x[i] += y[i];
    return x;
  }
  // sl2 ⊗ m → matrices; basis h = diag(1,-1), e = E12, f = E21
  AMat rep(const TensorDGLA& t, const RatVector& v) const {
    AMat z(4, zero_vector(n()));
    for (std::size_t al = 0; al < a.dim(); ++al) {
      RatVector x = t.coefficient(0, v, al);
      z[0][al + 1] += x[0];
      z[3][al + 1] -= x[0];
      z[1][al + 1] += x[1];
      z[2][al + 1] += x[2];
    }
    return z;
  }
  AMat exp(const AMat& x) const {
    AMat out = identity(), term = identity();
    for (int k = 1; k <= a.nilpotency(); ++k) {
      term = scale(ratio(1, k), mul(term, x));
      out = add(out, term);
    }
    return out;
  }
  AMat log(const AMat& g) const {
    AMat y = add(g, scale(-1, identity()));
    AMat out(4, zero_vector(n())), pw = identity();
    for (int k = 1; k <= a.nilpotency(); ++k) {
      pw = mul(pw, y);
      out = add(out, scale(Rational((k % 2) ? 1 : -1) / k, pw));
    }
    return out;
  }
};

}  // namespace

TEST_CASE("truncated algebras") {
  auto d = dual_numbers();
  CHECK(d.dim() == 1);
  CHECK(d.product(0, 0) == -1);
  CHECK(d.nilpotency() == 2);

  auto t3 = make_truncated({"t"}, 3);
  REQUIRE(t3.dim() == 2);
  CHECK(t3.monomial_name(0) == "t");
  CHECK(t3.monomial_name(1) == "t^2");
  CHECK(t3.product(0, 0) == 1);
  CHECK(t3.product(0, 1) == -1);

  auto xy = make_truncated({"x", "y"}, 2);
  CHECK(xy.dim() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(xy.product(i, j) == -1);

  auto box = make_truncated({"x", "y"}, std::nullopt, std::vector<int>{2, 3});
  CHECK(box.dim() == 5);  // x, y, xy, y^2, xy^2
  CHECK(box.nilpotency() == 4);
  auto f = box.filtration_dims();
  CHECK(f == std::vector<std::size_t>{5, 3, 1, 0});

  CHECK_THROWS_AS(make_truncated({"t"}, std::nullopt), PreconditionError);
  CHECK_THROWS_AS(make_truncated({"t"}, 0), PreconditionError);
}

TEST_CASE("multiplication is commutative and associative") {
  auto a = make_truncated({"x", "y"}, 4, std::vector<int>{3, 2});
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      CHECK(a.product(i, j) == a.product(j, i));
      for (std::size_t k = 0; k < a.dim(); ++k) {
        int ij = a.product(i, j), jk = a.product(j, k);
        int l = ij < 0 ? -1 : a.product(static_cast<std::size_t>(ij), k);
        int r = jk < 0 ? -1 : a.product(i, static_cast<std::size_t>(jk));
        CHECK(l == r);
      }
    }
}

TEST_CASE("sl2 tensor K[t]/(t^3)") {
  auto l = testing::sl2();
  auto a = make_truncated({"t"}, 3);
  TensorDGLA t(l, a);
  RatVector e = t.embed(0, {0, 1, 0}, 0), f = t.embed(0, {0, 0, 1}, 0);
  RatVector f2 = t.embed(0, {0, 0, 1}, 1), e2 = t.embed(0, {0, 1, 0}, 1);
  CHECK(t.bracket(0, e, 0, f) == t.embed(0, {1, 0, 0}, 1));
  CHECK(is_zero(t.bracket(0, e2, 0, f)));
  CHECK(is_zero(t.bracket(0, e2, 0, f2)));
  CHECK(check_axioms(t.materialize()).pass());

  auto dn = dual_numbers();
  TensorDGLA td(l, dn);
  CHECK(is_zero(td.bracket(0, td.embed(0, {0, 1, 0}, 0), 0, td.embed(0, {0, 0, 1}, 0))));
}

TEST_CASE("tensor with a cocone passes the axioms and multiplies dimensions") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    GradedComplex e = testing::random_complex(rng, -1, 2, 2);
    auto hom = std::make_shared<HomComplexDGLA>(e);
    CoconeDGLA c(ActingDGLA::full(hom), testing::random_cycle(rng, e, 0));
    auto a = make_truncated({"t"}, 3);
    TensorDGLA t(c.algebra(), a);
    auto m = t.materialize();
    for (int n = m.lo(); n <= m.hi(); ++n) CHECK(m.dim(n) == c.algebra().dim(n) * a.dim());
    CHECK(check_axioms(m).pass());
  }
}

TEST_CASE("bernoulli numbers") {
  auto b = bernoulli_numbers(6);
  CHECK(b[1] == ratio(-1, 2));
  CHECK(b[2] == ratio(1, 6));
  CHECK(b[3] == 0);
  CHECK(b[4] == ratio(-1, 30));
  CHECK(b[6] == ratio(1, 42));
}

TEST_CASE("bch basics") {
  auto l = testing::sl2();
  auto a = make_truncated({"t"}, 3);
  TensorDGLA t(l, a);
  RatVector x = t.embed(0, {1, 2, -1}, 0) + t.embed(0, {0, 1, 3}, 1);
  CHECK(bch(t, x, t.zero(0)) == x);
  CHECK(is_zero(bch(t, x, -x)));

  RatVector av = t.embed(0, {1, 0, 2}, 0), bv = t.embed(0, {0, 1, 1}, 0);
  RatVector expect = av + bv + ratio(1, 2) * t.bracket(0, av, 0, bv);
  CHECK(bch(t, av, bv) == expect);
}

TEST_CASE("bch agrees with the matrix exponential in the defining representation") {
  auto l = testing::sl2();
  std::mt19937 rng(17);
  for (int cut : {3, 4, 5}) {
    auto a = make_truncated({"t"}, cut);
    TensorDGLA t(l, a);
    MatrixModel mm{a};
    for (int trial = 0; trial < 5; ++trial) {
      RatVector x = testing::random_vector(rng, t.dim(0)), y = testing::random_vector(rng, t.dim(0));
      AMat lhs = mm.rep(t, bch(t, x, y));
      AMat rhs = mm.log(mm.mul(mm.exp(mm.rep(t, x)), mm.exp(mm.rep(t, y))));
      CHECK(lhs == rhs);
      CHECK(t.truncate(0, bch(t, x, y), 1) == t.truncate(0, x + y, 1));
    }
  }
  auto two = make_truncated({"x", "y"}, 4);
  TensorDGLA t(l, two);
  MatrixModel mm{two};
  for (int trial = 0; trial < 5; ++trial) {
    RatVector x = testing::random_vector(rng, t.dim(0)), y = testing::random_vector(rng, t.dim(0));
    CHECK(mm.rep(t, bch(t, x, y)) == mm.log(mm.mul(mm.exp(mm.rep(t, x)), mm.exp(mm.rep(t, y)))));
  }
}

TEST_CASE("iterated brackets vanish past the nilpotency index") {
  auto l = testing::sl2();
  auto a = make_truncated({"t"}, 4);
  TensorDGLA t(l, a);
  std::mt19937 rng(3);
  RatVector x = testing::random_vector(rng, t.dim(0));
  for (int k = 0; k < a.nilpotency() - 1; ++k) x = t.bracket(0, testing::random_vector(rng, t.dim(0)), 0, x);
  CHECK(is_zero(x));
}
