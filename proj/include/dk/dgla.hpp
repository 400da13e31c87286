#pragma once

// Differential graded Lie algebras given by structure constants, the
// endomorphism algebra Hom*(E,E) of a complex, and the mapping cocone that
// extends an acting algebra L by E[-1] with differential twisted by a section.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "dk/exactlin.hpp"

namespace dk {

/// Homogeneous basis element: (degree, index within degree).
struct BasisRef {
  int degree = 0;
  std::size_t index = 0;
};

class DGLieAlgebra {
 public:
  DGLieAlgebra() = default;
  explicit DGLieAlgebra(GradedComplex complex);

  const GradedComplex& complex() const { return complex_; }
  int lo() const { return complex_.lo(); }
  int hi() const { return complex_.hi(); }
  std::size_t dim(int n) const { return complex_.dim(n); }

  /// [e_i (deg p), e_j (deg q)] = v (deg p+q). Missing entries are zero.
  void set_bracket(int p, std::size_t i, int q, std::size_t j, SparseVec v);
  const SparseVec& bracket_basis(int p, std::size_t i, int q, std::size_t j) const;
  /// True when some bracket of degrees (p, q) may be nonzero.
  bool has_bracket(int p, int q) const;

  RatVector bracket(int p, const RatVector& x, int q, const RatVector& y) const;
  SparseVec bracket(int p, const SparseVec& x, int q, const SparseVec& y) const;
  RatVector d(int n, const RatVector& x) const;
  SparseVec d(int n, const SparseVec& x) const;

  /// Optional anchor: a DG-Lie morphism to a designated target algebra.
  struct Anchor {
    std::shared_ptr<const DGLieAlgebra> target;
    ChainMap map;
  };
  void set_anchor(Anchor a) { anchor_ = std::make_shared<Anchor>(std::move(a)); }
  const Anchor* anchor() const { return anchor_.get(); }

 private:
  std::vector<SparseVec>* table(int p, int q);
  const std::vector<SparseVec>* table(int p, int q) const;

  GradedComplex complex_;
  // tables_[(p-lo)*span + (q-lo)] has dim(p)*dim(q) entries or is empty.
  std::vector<std::vector<SparseVec>> tables_;
  std::vector<RatMatrix> diffs_;
  std::shared_ptr<const Anchor> anchor_;
};

/// Sum of scaled sparse vectors, merged and with zeros dropped.
SparseVec sparse_combine(std::vector<std::pair<std::size_t, Rational>> terms);

struct AxiomViolation {
  std::string identity;  // "d^2", "antisymmetry", "jacobi", "leibniz", "anchor-d", "anchor-bracket"
  std::vector<BasisRef> witness;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Exhaustive check over basis tuples. At most `max_violations` are collected.
AxiomReport check_axioms(const DGLieAlgebra& l, std::size_t max_violations = 16);

/// Throws ComplexError unless f commutes with d and with brackets on all basis pairs.
void check_dgla_morphism(const DGLieAlgebra& src, const DGLieAlgebra& tgt, const ChainMap& f);

// ---------------------------------------------------------------------------

/// Hom*(E,E) with df = ∂f − (−1)^f f∂ and [f,g] = fg − (−1)^{fg} gf.
/// Hom^n is ⊕_k Hom(E^k, E^{k+n}); each block is stored row-major, blocks in
/// increasing k.
class HomComplexDGLA {
 public:
  explicit HomComplexDGLA(GradedComplex e);

  const DGLieAlgebra& algebra() const { return algebra_; }
  const GradedComplex& source() const { return e_; }

  struct Block {
    int k;               // source degree
    std::size_t offset;  // position within Hom^n
    std::size_t rows, cols;
  };
  const std::vector<Block>& blocks(int n) const;

  /// The Hom(E^k, E^{k+n}) block of f ∈ Hom^n.
  RatMatrix block(int n, const RatVector& f, int k) const;
  RatVector from_blocks(int n, const std::vector<std::pair<int, RatMatrix>>& blocks) const;

  /// f(v) for f ∈ Hom^n, v ∈ E^k.
  RatVector apply(int n, const RatVector& f, int k, const RatVector& v) const;

  /// f as an endomorphism of the total space ⊕E^k (blocks in increasing k).
  RatMatrix total_matrix(int n, const RatVector& f) const;
  /// Total matrix of ∂.
  RatMatrix total_differential() const;
  std::size_t total_dim() const;
  std::size_t total_offset(int k) const;

  /// ∂ itself as an element of Hom^1, handy for writing ∂ + u.
  RatVector differential_element() const;
  RatVector identity_element() const;

 private:
  GradedComplex e_;
  DGLieAlgebra algebra_;
  std::vector<std::vector<Block>> blocks_;  // indexed by n - lo
  int lo_ = 0;
};

/// A DG-Lie algebra L together with a DG-Lie inclusion into Hom*(E,E).
struct ActingDGLA {
  DGLieAlgebra algebra;
  std::shared_ptr<const HomComplexDGLA> hom;
  ChainMap inclusion;  // L^n → Hom^n

  static ActingDGLA full(std::shared_ptr<const HomComplexDGLA> hom);

  /// x(v) for x ∈ L^n, v ∈ E^k.
  RatVector act(int n, const RatVector& x, int k, const RatVector& v) const;
  RatVector to_hom(int n, const RatVector& x) const;
};

/// Mapping cocone M^i = L^i ⊕ E^{i−1}:
///   [(f,v),(g,w)] = ([f,g], f(w) − (−1)^{fg} g(v)),
///   d(f,v) = ([∂,f], ∂v − (−1)^f f(s)).
/// Basis of M^i: L^i first, then E^{i−1}.
class CoconeDGLA {
 public:
  CoconeDGLA(ActingDGLA l, RatVector s);

  const DGLieAlgebra& algebra() const { return algebra_; }
  const ActingDGLA& base() const { return base_; }
  const RatVector& section() const { return s_; }
  const GradedComplex& module() const { return base_.hom->source(); }

  std::size_t l_dim(int i) const { return base_.algebra.dim(i); }
  std::size_t e_dim(int i) const { return module().dim(i - 1); }

  RatVector pack(int i, const RatVector& l_part, const RatVector& e_part) const;
  RatVector l_part(int i, const RatVector& m) const;
  RatVector e_part(int i, const RatVector& m) const;

  /// Projection ρ: M → L.
  ChainMap projection() const;
  /// ι: E[−1] → M, x ∈ E^{i−1} ↦ (−1)^i (0, x). E[−1] carries −∂.
  ChainMap inclusion() const;
  GradedComplex shifted_module() const;

 private:
  ActingDGLA base_;
  RatVector s_;
  DGLieAlgebra algebra_;
};

/// Isomorphism C(s) → C(s + ∂r), (u,x) ↦ (u, x − [r,u]) = (u, x + u(r)).
ChainMap twist_iso(const CoconeDGLA& c, const RatVector& r);

}  // namespace dk
