#pragma once

// Random small complexes and algebras shared by unit and acceptance tests.

#include <random>

#include "dk/deligne.hpp"
#include "dk/dgla.hpp"

namespace dk::testing {

inline Rational small_rational(std::mt19937& rng, int spread = 2) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  return Rational(dist(rng));
}

inline RatVector random_vector(std::mt19937& rng, std::size_t n, int spread = 2) {
  RatVector v(n);
  for (auto& x : v) x = small_rational(rng, spread);
  return v;
}

/// Random combination of the columns of `basis` (a cycle if basis spans cycles).
inline RatVector random_combination(std::mt19937& rng, const RatMatrix& basis) {
  RatVector v = zero_vector(basis.rows());
  for (std::size_t j = 0; j < basis.cols(); ++j) add_scaled(v, small_rational(rng), basis.column(j));
  return v;
}

/// Complex in degrees [lo, lo+terms-1] with dims in [0, max_dim] and d² = 0 by
/// construction: each differential's rows are drawn from the left kernel of the
/// previous one.
inline GradedComplex random_complex(std::mt19937& rng, int lo, int terms, std::size_t max_dim) {
  std::vector<std::size_t> dims;
  for (int t = 0; t < terms; ++t) dims.push_back(rng() % (max_dim + 1));
  std::vector<RatMatrix> diffs;
  RatMatrix prev(dims[0], 0);
  for (int t = 0; t + 1 < terms; ++t) {
    std::size_t a = dims[static_cast<std::size_t>(t)], b = dims[static_cast<std::size_t>(t + 1)];
    RatMatrix left = kernel_basis(prev.transposed());  // a × k, columns annihilate im prev
    RatMatrix d(b, a);
    for (std::size_t i = 0; i < b; ++i) {
      RatVector row = random_combination(rng, left);
      for (std::size_t j = 0; j < a; ++j) d(i, j) = row[j];
    }
    diffs.push_back(d);
    prev = d;
  }
  return GradedComplex(lo, dims, diffs);
}

inline RatVector random_cycle(std::mt19937& rng, const GradedComplex& e, int n) {
  RatMatrix z = kernel_basis(e.d(n));
  if (z.rows() != e.dim(n)) return zero_vector(e.dim(n));
  return random_combination(rng, z);
}

}  // namespace dk::testing

namespace dk::testing {

/// sl₂ in degree 0 with basis h, e, f: [h,e] = 2e, [h,f] = −2f, [e,f] = h.
inline DGLieAlgebra sl2() {
  DGLieAlgebra l(GradedComplex(0, {3}, {}));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long c) {
    l.set_bracket(0, i, 0, j, {{k, Rational(c)}});
    l.set_bracket(0, j, 0, i, {{k, Rational(-c)}});
  };
  set(0, 1, 1, 2);
  set(0, 2, 2, -2);
  set(1, 2, 0, 1);
  return l;
}

}  // namespace dk::testing

namespace dk::testing {

/// A Maurer–Cartan element of L ⊗ m: a random first-order cycle lifted order
/// by order (retrying on obstructions), then moved by a random gauge element.
inline RatVector random_mc(std::mt19937& rng, const TensorDGLA& t) {
  const auto& l = t.base();
  RatMatrix z = kernel_basis(l.complex().d(1));
  for (int attempt = 0; attempt < 20; ++attempt) {
    RatVector x1 = t.zero(1);
    if (z.rows() == l.dim(1) && z.cols() > 0)
      for (std::size_t al = 0; al < t.ring().dim(); ++al)
        if (t.ring().order(al) == 1) x1 += t.embed(1, random_combination(rng, z), al);
    auto steps = lift_order_by_order(t, x1);
    if (!steps.empty() && !steps.back().lifted) continue;
    RatVector x = steps.empty() ? x1 : steps.back().solution;
    return gauge_act(t, random_vector(rng, t.dim(0), 1), x);
  }
  return gauge_act(t, random_vector(rng, t.dim(0), 1), t.zero(1));
}

}  // namespace dk::testing
