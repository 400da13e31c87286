#include "doctest.h"

#include "dk/error.hpp"
#include "dk/polynomial.hpp"

using namespace dk;

TEST_CASE("parse univariate") {
  Poly p = parse_polynomial("t^4-6t^3+11t^2-6t", {"t"}).univariate();
  CHECK(p.degree() == 4);
  CHECK(p.coeff(1) == -6);
  for (long r : {0, 1, 2, 3}) CHECK(p.eval(Rational(r)) == 0);
  CHECK(p.to_string() == "t^4 - 6*t^3 + 11*t^2 - 6*t");
  CHECK(parse_polynomial("(t-1)(t+1)", {"t"}).univariate() == parse_polynomial("t^2 - 1", {"t"}).univariate());
  CHECK(parse_polynomial("3/2 t", {"t"}).univariate().coeff(1) == ratio(3, 2));
}

TEST_CASE("parse multivariate and errors") {
  MPoly f = parse_polynomial("y^2 - x^3", {"x", "y"});
  CHECK(f.total_degree() == 3);
  CHECK(f.derivative(0) == Rational(-3) * parse_polynomial("x^2", {"x", "y"}));
  CHECK(parse_polynomial("xy", {"x", "y"}) == parse_polynomial("x*y", {"x", "y"}));
  CHECK_THROWS_AS(parse_polynomial("t + z", {"t"}), PreconditionError);
  CHECK_THROWS_AS(parse_polynomial("t^", {"t"}), PreconditionError);
  CHECK_THROWS_AS(parse_polynomial("(t", {"t"}), PreconditionError);
}

TEST_CASE("division, gcd and inverses") {
  Poly f = parse_polynomial("t^3 - t", {"t"}).univariate();
  Poly g = parse_polynomial("t^2 - 2t + 1", {"t"}).univariate();
  auto [q, r] = divide(f, g);
  CHECK(q * g + r == f);
  CHECK(r.degree() < g.degree());
  CHECK(poly_gcd(f, g) == parse_polynomial("t - 1", {"t"}).univariate());
  Poly h = parse_polynomial("t^2 - 3t + 2", {"t"}).univariate();
  Poly inv = poly_inverse_mod(Poly::monomial(1), h);
  CHECK(poly_mod(inv * Poly::monomial(1), h) == Poly::constant(1));
  CHECK_THROWS_AS(poly_inverse_mod(parse_polynomial("t-1", {"t"}).univariate(), h), PreconditionError);
  CHECK(f.derivative() == parse_polynomial("3t^2 - 1", {"t"}).univariate());
  CHECK(f.reversed(3) == parse_polynomial("1 - t^2", {"t"}).univariate());
}

TEST_CASE("Laurent arithmetic") {
  Laurent a = Laurent::monomial(-2, Rational(-1)) + Laurent::monomial(1);
  Laurent b = Laurent::monomial(2);
  CHECK((a * b).low() == 0);
  CHECK((a * b).high() == 3);
  Poly p = parse_polynomial("1 + 2t", {"t"}).univariate();
  CHECK(Laurent::from_poly_inverted(p, 1) == Laurent::monomial(1) + Laurent::monomial(0, Rational(2)));
  LaurentMatrix m{{Laurent::monomial(0), Laurent::monomial(1, Rational(3))}, {Laurent(), Laurent::monomial(2, Rational(-1))}};
  auto sq = laurent_product(m, m);
  CHECK(sq[0][1] == Laurent::monomial(1, Rational(3)) + Laurent::monomial(3, Rational(-3)));
}
