#include "dk/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "dk/error.hpp"

namespace dk {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }

Poly Poly::monomial(int k, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

int Poly::valuation() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return 0;
}

Poly Poly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(Rational(static_cast<long>(k)) * c_[k]);
  return Poly(std::move(d));
}

Rational Poly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Poly Poly::reversed(int deg) const {
  if (degree() > deg) throw PreconditionError("reversal degree below polynomial degree");
  std::vector<Rational> v(static_cast<std::size_t>(deg) + 1, Rational(0));
  for (int k = 0; k <= degree(); ++k) v[static_cast<std::size_t>(deg - k)] = coeff(k);
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + Rational(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly operator*(const Rational& c, const Poly& a) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= c;
  return Poly(std::move(v));
}

namespace {

std::string term_string(const Rational& c, const std::string& mono, bool first) {
  std::string out;
  Rational a = c < 0 ? Rational(-c) : c;
  if (c < 0) out += first ? "-" : " - ";
  else if (!first) out += " + ";
  if (mono.empty()) return out + display(a);
  if (a != 1) out += display(a) + "*";
  return out + mono;
}

std::string power(const std::string& var, int k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return var + "^" + std::to_string(k);
}

}  // namespace

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (coeff(k) == 0) continue;
    out += term_string(coeff(k), power(var, k), first);
    first = false;
  }
  return out;
}

PolyDivision divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  Poly r = a, q;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Poly m = Poly::monomial(r.degree() - b.degree(), r.leading() / b.leading());
    q = q + m;
    r = r - m * b;
  }
  return {q, r};
}

Poly poly_mod(const Poly& a, const Poly& b) { return divide(a, b).remainder; }

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (Rational(1) / a.leading()) * a;
}

Poly poly_inverse_mod(const Poly& a, const Poly& m) {
  // extended Euclid keeping only the coefficient of a
  Poly r0 = m, r1 = poly_mod(a, m), s0, s1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divide(r0, r1);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw PreconditionError("polynomial is not invertible modulo " + m.to_string());
  return poly_mod((Rational(1) / r0.leading()) * s0, m);
}

// ---------------------------------------------------------------------------

void Laurent::add(int k, const Rational& c) {
  if (c == 0) return;
  Rational& x = t_[k];
  x += c;
  if (x == 0) t_.erase(k);
}

Laurent Laurent::monomial(int k, const Rational& c) {
  Laurent l;
  l.add(k, c);
  return l;
}

Laurent Laurent::from_poly(const Poly& p, int shift) {
  Laurent l;
  for (int k = 0; k <= p.degree(); ++k) l.add(k + shift, p.coeff(k));
  return l;
}

Laurent Laurent::from_poly_inverted(const Poly& p, int shift) {
  Laurent l;
  for (int k = 0; k <= p.degree(); ++k) l.add(shift - k, p.coeff(k));
  return l;
}

int Laurent::low() const { return t_.empty() ? 0 : t_.begin()->first; }
int Laurent::high() const { return t_.empty() ? 0 : t_.rbegin()->first; }

Rational Laurent::coeff(int k) const {
  auto it = t_.find(k);
  return it == t_.end() ? Rational(0) : it->second;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  Laurent r = a;
  for (const auto& [k, c] : b.t_) r.add(k, c);
  return r;
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + Rational(-1) * b; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [i, x] : a.t_)
    for (const auto& [j, y] : b.t_) r.add(i + j, x * y);
  return r;
}

Laurent operator*(const Rational& c, const Laurent& a) {
  Laurent r;
  for (const auto& [k, x] : a.t_) r.add(k, c * x);
  return r;
}

std::string Laurent::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    out += term_string(it->second, power(var, it->first), first);
    first = false;
  }
  return out;
}

LaurentMatrix laurent_product(const LaurentMatrix& a, const LaurentMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  LaurentMatrix r(n, std::vector<Laurent>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) r[i][j] = r[i][j] + a[i][l] * b[l][j];
  return r;
}

// ---------------------------------------------------------------------------

MPoly MPoly::constant(std::vector<std::string> vars, const Rational& c) {
  MPoly p(std::move(vars));
  p.add_term(Exponents(p.vars_.size(), 0), c);
  return p;
}

MPoly MPoly::variable(std::vector<std::string> vars, std::size_t i) {
  MPoly p(std::move(vars));
  Exponents e(p.vars_.size(), 0);
  e[i] = 1;
  p.add_term(e, Rational(1));
  return p;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  Rational& x = t_[e];
  x += c;
  if (x == 0) t_.erase(e);
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly r(vars_);
  for (const auto& [e, c] : t_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    r.add_term(f, Rational(e[var]) * c);
  }
  return r;
}

Poly MPoly::univariate() const {
  if (vars_.size() > 1) throw PreconditionError("polynomial has more than one variable");
  std::vector<Rational> v;
  for (const auto& [e, c] : t_) {
    auto k = static_cast<std::size_t>(e.empty() ? 0 : e[0]);
    if (v.size() <= k) v.resize(k + 1, Rational(0));
    v[k] += c;
  }
  return Poly(std::move(v));
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly r = a;
  if (r.vars_.empty()) r.vars_ = b.vars_;
  for (const auto& [e, c] : b.t_) r.add_term(e, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + Rational(-1) * b; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.vars_.empty() ? b.vars_ : a.vars_);
  for (const auto& [e, x] : a.t_)
    for (const auto& [f, y] : b.t_) {
      MPoly::Exponents g = e;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += f[i];
      r.add_term(g, x * y);
    }
  return r;
}

MPoly operator*(const Rational& c, const MPoly& a) {
  MPoly r(a.vars_);
  for (const auto& [e, x] : a.t_) r.add_term(e, c * x);
  return r;
}

std::string MPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    std::string mono;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      std::string p = power(vars_[i], it->first[i]);
      if (p.empty()) continue;
      mono += (mono.empty() ? "" : "*") + p;
    }
    out += term_string(it->second, mono, first);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  MPoly parse() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("polynomial \"" + s_ + "\": " + what + " at position " +
                            std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '(';
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 18) fail("integer too long");
    return std::stol(s_.substr(start, pos_ - start));
  }

  MPoly expr() {
    MPoly p(vars_);
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (peek('+') || peek('-')) {
        if (s_[pos_] == '-') sign = -1;
        ++pos_;
      } else if (!first) {
        break;
      }
      p = p + sign * term();
      first = false;
    }
    return p;
  }

  MPoly term() {
    MPoly p = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        p = p * factor();
      } else if (peek('/')) {
        ++pos_;
        long d = integer();
        if (d == 0) fail("division by zero");
        p = Rational(1) / Rational(d) * p;
      } else if (starts_factor()) {
        p = p * factor();
      } else {
        return p;
      }
    }
  }

  MPoly factor() {
    MPoly base = primary();
    if (peek('^')) {
      ++pos_;
      long e = integer();
      if (e > 64) fail("exponent too large");
      MPoly r = MPoly::constant(vars_, Rational(1));
      for (long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  MPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return MPoly::constant(vars_, Rational(integer()));
    std::size_t best = vars_.size(), best_len = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (s_.compare(pos_, vars_[i].size(), vars_[i]) == 0 && vars_[i].size() > best_len) {
        best = i;
        best_len = vars_[i].size();
      }
    if (best == vars_.size()) fail("unknown variable");
    pos_ += best_len;
    return MPoly::variable(vars_, best);
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

}  // namespace dk
