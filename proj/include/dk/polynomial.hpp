#pragma once

// Exact polynomials: univariate (dense), Laurent (sparse), and multivariate
// (sparse, exponent vectors), with a small infix parser.

#include <map>
#include <string>
#include <vector>

#include "dk/rational.hpp"

namespace dk {

/// Dense univariate polynomial; coeffs[k] multiplies x^k, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly monomial(int k, const Rational& c = Rational(1));

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// −1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(int k) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  /// Largest k with x^k dividing p (0 for the zero polynomial).
  int valuation() const;

  Poly derivative() const;
  Rational eval(const Rational& x) const;
  /// x^deg · p(1/x), the reversed polynomial at a given formal degree.
  Poly reversed(int deg) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct PolyDivision {
  Poly quotient, remainder;
};
PolyDivision divide(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly poly_gcd(Poly a, Poly b);
/// Inverse of a modulo m; throws PreconditionError if they are not coprime.
Poly poly_inverse_mod(const Poly& a, const Poly& m);

/// Sparse Laurent polynomial in one variable.
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int k, const Rational& c = Rational(1));
  static Laurent from_poly(const Poly& p, int shift = 0);
  /// p(1/x) · x^shift.
  static Laurent from_poly_inverted(const Poly& p, int shift = 0);

  const std::map<int, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int low() const;
  int high() const;
  Rational coeff(int k) const;

  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator-(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Rational& c, const Laurent& a);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.t_ == b.t_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void add(int k, const Rational& c);
  std::map<int, Rational> t_;
};

using LaurentMatrix = std::vector<std::vector<Laurent>>;
using PolyMatrix = std::vector<std::vector<Poly>>;

LaurentMatrix laurent_product(const LaurentMatrix& a, const LaurentMatrix& b);

/// Sparse multivariate polynomial over named variables.
class MPoly {
 public:
  using Exponents = std::vector<int>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  static MPoly constant(std::vector<std::string> vars, const Rational& c);
  static MPoly variable(std::vector<std::string> vars, std::size_t i);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int total_degree() const;  // −1 for zero
  void add_term(const Exponents& e, const Rational& c);

  MPoly derivative(std::size_t var) const;
  /// Univariate view; throws PreconditionError unless at most one variable.
  Poly univariate() const;

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rational& c, const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  std::map<Exponents, Rational> t_;
};

/// Parses sums of products of rationals, variables, parentheses and
/// nonnegative integer powers, e.g. "t^4-6t^3+11t^2-6t" or "y^2 - x^3".
/// Implicit multiplication is allowed. Throws PreconditionError with the
/// offending position on bad input or unknown variables.
MPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

}  // namespace dk
