#include "dk/rational.hpp"

#include <cctype>

#include "dk/error.hpp"

namespace dk {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string s(text.substr(b, e - b));
  if (s.empty()) throw Error("empty rational literal");
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

RatVector zero_vector(std::size_t n) { return RatVector(n); }

RatVector operator+(const RatVector& a, const RatVector& b) {
  RatVector r(a);
  r += b;
  return r;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  RatVector r(a);
  r -= b;
  return r;
}

RatVector operator-(const RatVector& a) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

RatVector operator*(const Rational& c, const RatVector& v) {
  RatVector r(v.size());
  if (sgn(c) == 0) return r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) r[i] = c * v[i];
  return r;
}

RatVector& operator+=(RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error("vector size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(b[i]) != 0) a[i] += b[i];
  return a;
}

RatVector& operator-=(RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error("vector size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(b[i]) != 0) a[i] -= b[i];
  return a;
}

void add_scaled(RatVector& y, const Rational& c, const RatVector& x) {
  if (y.size() != x.size()) throw Error("vector size mismatch");
  if (sgn(c) == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += c * x[i];
}

RatVector densify(const SparseVec& s, std::size_t n) {
  RatVector v(n);
  for (const auto& [i, c] : s) v.at(i) = c;
  return v;
}

SparseVec sparsify(const RatVector& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.emplace_back(i, v[i]);
  return s;
}

}  // namespace dk

namespace dk {

std::string display(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace dk
