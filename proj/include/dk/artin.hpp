#pragma once

// Local Artin algebras given by monomial truncations of K[x_1..x_r], and the
// nilpotent DG-Lie algebras L ⊗ m_A built from them.

#include <optional>
#include <string>
#include <vector>

#include "dk/dgla.hpp"

namespace dk {

class ArtinLocalAlgebra {
 public:
  using Exponents = std::vector<int>;

  ArtinLocalAlgebra() = default;

  const std::vector<std::string>& vars() const { return vars_; }
  /// Dimension of the maximal ideal.
  std::size_t dim() const { return monomials_.size(); }
  const Exponents& monomial(std::size_t i) const { return monomials_[i]; }
  /// Total degree of basis monomial i (its m-adic order).
  int order(std::size_t i) const { return orders_[i]; }
  /// Index of m_i·m_j, or -1 when the product vanishes.
  int product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  /// Smallest N with m^N = 0.
  int nilpotency() const { return nilpotency_; }
  /// dim m^k for k = 1..N (the last entry is 0).
  std::vector<std::size_t> filtration_dims() const;

  std::optional<std::size_t> index_of(const Exponents& e) const;
  std::string monomial_name(std::size_t i) const;

  friend ArtinLocalAlgebra make_truncated(std::vector<std::string> vars,
                                          std::optional<int> total_degree,
                                          std::optional<std::vector<int>> exponents);

 private:
  std::vector<std::string> vars_;
  std::vector<Exponents> monomials_;  // sorted by total degree, then lexicographically descending
  std::vector<int> orders_;
  std::vector<int> table_;
  int nilpotency_ = 1;
};

/// K[vars] modulo all monomials of total degree ≥ total_degree and x_v^{e_v}.
/// At least one bound must make the quotient finite-dimensional.
ArtinLocalAlgebra make_truncated(std::vector<std::string> vars, std::optional<int> total_degree,
                                 std::optional<std::vector<int>> exponents = std::nullopt);

inline ArtinLocalAlgebra dual_numbers() { return make_truncated({"e"}, 2); }

/// L ⊗ m_A. An element of degree n is a vector indexed by i·dim(m) + α for
/// x_i ∈ L^n and α a monomial of m. Holds references: L and A must outlive it.
class TensorDGLA {
 public:
  TensorDGLA(const DGLieAlgebra& l, const ArtinLocalAlgebra& a);

  const DGLieAlgebra& base() const { return *l_; }
  const ArtinLocalAlgebra& ring() const { return *a_; }
  std::size_t dim(int n) const { return l_->dim(n) * a_->dim(); }
  std::size_t index(std::size_t i, std::size_t alpha) const { return i * a_->dim() + alpha; }

  RatVector zero(int n) const { return zero_vector(dim(n)); }
  /// x ⊗ m_alpha.
  RatVector embed(int n, const RatVector& x, std::size_t alpha) const;
  /// L-component multiplying monomial alpha.
  RatVector coefficient(int n, const RatVector& v, std::size_t alpha) const;

  RatVector bracket(int p, const RatVector& x, int q, const RatVector& y) const;
  RatVector d(int n, const RatVector& x) const;

  /// Keep only monomials of order ≤ k (i.e. reduce modulo m^{k+1}).
  RatVector truncate(int n, const RatVector& x, int k) const;
  /// Keep only monomials of order exactly k.
  RatVector homogeneous(int n, const RatVector& x, int k) const;
  /// Smallest order of a monomial with nonzero coefficient, or nilpotency() if x = 0.
  int valuation(int n, const RatVector& x) const;

  /// Σ_k ad(a)^k x / k! for a of degree 0 and x of degree n.
  RatVector exp_ad(const RatVector& a, int n, const RatVector& x) const;

  /// L ⊗ m as an explicit DG-Lie algebra (for exhaustive axiom checks).
  DGLieAlgebra materialize() const;

 private:
  const DGLieAlgebra* l_;
  const ArtinLocalAlgebra* a_;
};

/// Bernoulli numbers B_0..B_n with B_1 = −1/2.
std::vector<Rational> bernoulli_numbers(int n);

/// Baker–Campbell–Hausdorff product of degree-0 elements, log(e^a e^b),
/// by the recursive commutator formula, truncated by nilpotency.
RatVector bch(const TensorDGLA& t, const RatVector& a, const RatVector& b);

}  // namespace dk
