#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dk {

using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Canonical "num/den" text form; the denominator is always written.
std::string to_string(const Rational& q);

/// Human form: "n" for integers, "n/d" otherwise.
std::string display(const Rational& q);

/// num/den in lowest terms (the two-argument mpq constructor does not reduce).
Rational ratio(long num, long den);

/// Accepts "n", "-n", "n/d" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

bool is_zero(const RatVector& v);

RatVector zero_vector(std::size_t n);

RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a);
RatVector operator*(const Rational& c, const RatVector& v);
RatVector& operator+=(RatVector& a, const RatVector& b);
RatVector& operator-=(RatVector& a, const RatVector& b);

/// Axpy in place: y += c * x.
void add_scaled(RatVector& y, const Rational& c, const RatVector& x);

/// Sparse vector with strictly increasing indices and nonzero values.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

RatVector densify(const SparseVec& s, std::size_t n);
SparseVec sparsify(const RatVector& v);

}  // namespace dk
