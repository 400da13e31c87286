#pragma once

// Exact rational linear algebra and cohomology of finite-dimensional cochain
// complexes. Everything here is value-typed and immutable after construction.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dk/rational.hpp"

namespace dk {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_columns(std::size_t rows, const std::vector<RatVector>& columns);
  static RatMatrix from_rows(std::size_t cols, const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RatVector row(std::size_t r) const;
  RatVector column(std::size_t c) const;
  void set_column(std::size_t c, const RatVector& v);

  bool is_zero() const;
  RatMatrix transposed() const;

  /// Columns side by side; both operands must have equal row counts.
  RatMatrix hstack(const RatMatrix& right) const;
  RatMatrix vstack(const RatMatrix& below) const;

  /// Rectangular sub-block.
  RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RatMatrix& m);

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatVector operator*(const RatMatrix& a, const RatVector& v);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& c, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; pivots are chosen as the first nonzero entry of the
/// current column scanning rows top to bottom.
struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

RowEchelon rref(RatMatrix m);

/// Rank by row elimination.
std::size_t rank(const RatMatrix& m);
/// Rank by column elimination; must agree with rank().
std::size_t rank_by_columns(const RatMatrix& m);

/// Basis of the null space, as columns (cols × nullity).
RatMatrix kernel_basis(const RatMatrix& m);

/// Indices of a maximal linearly independent prefix-greedy set of columns.
std::vector<std::size_t> independent_columns(const RatMatrix& m);

/// Canonical solution of m·x = b (free variables set to zero), or nullopt.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);

/// Solves m·x = b for every column b of rhs at once; nullopt if any is inconsistent.
std::optional<RatMatrix> solve_many(const RatMatrix& m, const RatMatrix& rhs);

/// Left annihilator witness: y with yᵀ·m = 0 and yᵀ·b ≠ 0, when m·x = b is
/// inconsistent (Fredholm alternative). Returns nullopt when consistent.
std::optional<RatVector> inconsistency_witness(const RatMatrix& m, const RatVector& b);

// ---------------------------------------------------------------------------

/// Bounded cochain complex over the rationals with degree-+1 differential.
/// Degrees outside [lo, hi] are zero.
class GradedComplex {
 public:
  GradedComplex() = default;
  /// `diffs[k]` is d_{lo+k}: V^{lo+k} → V^{lo+k+1}; the last one may be omitted.
  GradedComplex(int lo, std::vector<std::size_t> dims, std::vector<RatMatrix> diffs);

  static GradedComplex zero() { return GradedComplex(0, {}, {}); }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return dims_.empty(); }

  std::size_t dim(int n) const;
  /// d_n with the correct (possibly empty) shape for any n.
  RatMatrix d(int n) const;

  /// Throws ComplexError naming the first degree where d_{n+1}·d_n ≠ 0.
  void validate() const;

  /// Σ (−1)^n dim V^n.
  long euler_characteristic() const;

  /// Same complex with degrees shifted: result^n = this^{n+k}, differential scaled by (−1)^k.
  GradedComplex shifted(int k) const;

  /// Direct sum of complexes.
  static GradedComplex direct_sum(const std::vector<GradedComplex>& parts);

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<RatMatrix> diffs_;
};

struct CohomologyDegree {
  int degree = 0;
  std::size_t dim = 0;
  std::size_t cocycle_dim = 0;
  std::size_t boundary_dim = 0;
  /// dims[n] × dim matrix; columns are cocycle representatives.
  RatMatrix representatives;
  /// [boundary basis | representatives], used to project cocycles to classes.
  RatMatrix adapted_basis;
};

class CohomologyReport {
 public:
  CohomologyReport() = default;
  CohomologyReport(GradedComplex complex, std::vector<CohomologyDegree> degrees);

  const GradedComplex& complex() const { return complex_; }
  std::size_t dim(int n) const;
  const CohomologyDegree* degree(int n) const;
  std::vector<int> degrees() const;
  long euler_characteristic() const;

  /// Coordinates of the class of cocycle z ∈ V^n in the representative basis.
  /// Throws PreconditionError when z is not a cocycle.
  RatVector class_of(int n, const RatVector& z) const;

  /// Preimage u ∈ V^{n−1} with d(u) = v when v ∈ im d_{n−1}.
  std::optional<RatVector> solve_membership(int n, const RatVector& v) const;

  /// Cocycle realizing class coordinates c.
  RatVector representative(int n, const RatVector& c) const;

 private:
  GradedComplex complex_;
  std::vector<CohomologyDegree> degrees_;
};

CohomologyReport cohomology(const GradedComplex& c);

// ---------------------------------------------------------------------------

/// Double complex V^{p,q} with commuting horizontal dh: (p,q)→(p+1,q) and
/// vertical dv: (p,q)→(p,q+1). Totalization applies the sign (−1)^p to dv.
struct DoubleComplex {
  int p_lo = 0, q_lo = 0;
  std::size_t p_count = 0, q_count = 0;
  /// dims[p][q] (indices relative to p_lo, q_lo).
  std::vector<std::vector<std::size_t>> dims;
  /// horizontal[p][q]: V^{p,q} → V^{p+1,q}; may be empty for the last column.
  std::vector<std::vector<RatMatrix>> horizontal;
  /// vertical[p][q]: V^{p,q} → V^{p,q+1}.
  std::vector<std::vector<RatMatrix>> vertical;

  std::size_t dim(int p, int q) const;
  RatMatrix dh(int p, int q) const;
  RatMatrix dv(int p, int q) const;
};

/// Tot with d = dh + (−1)^p dv. Throws ComplexError on the first square that
/// does not commute (degree reported is p + q) or row/column with d² ≠ 0.
GradedComplex total_complex(const DoubleComplex& dc);

/// Offsets of the (p, q) blocks inside total degree n = p + q, ordered by p.
std::vector<std::pair<int, std::size_t>> total_block_offsets(const DoubleComplex& dc, int n);

// ---------------------------------------------------------------------------

/// Degree-preserving linear map between complexes, one matrix per degree.
struct ChainMap {
  int lo = 0;
  std::vector<RatMatrix> maps;

  RatMatrix at(int n, std::size_t rows, std::size_t cols) const;
};

/// Throws ComplexError on the first degree where f∘d ≠ d∘f.
void check_chain_map(const GradedComplex& src, const GradedComplex& tgt, const ChainMap& f);

/// Matrix of H^n(f): H^n(src) → H^n(tgt) in representative coordinates.
RatMatrix induced_map(const CohomologyReport& src, const CohomologyReport& tgt,
                      const ChainMap& f, int n);

struct SequenceNode {
  std::string label;  // e.g. "T^1(X,F,s)"
  int degree = 0;
  std::size_t dim = 0;
};

struct SequenceMap {
  std::size_t rank = 0;
  bool composes_to_zero = true;  // with the next map
};

/// One row per node: ... → node_k → node_{k+1} → ...
struct LongExactSequence {
  std::string name;
  std::vector<SequenceNode> nodes;
  /// maps[k]: nodes[k] → nodes[k+1].
  std::vector<SequenceMap> maps;
  /// Rank of the connecting map entering nodes.front() and of the map leaving
  /// nodes.back(); both are computed so exactness is decided at every node.
  std::size_t boundary_in_rank = 0;
  std::size_t boundary_out_rank = 0;
  std::vector<bool> exact;
  bool all_exact() const;
};

/// Long exact cohomology sequence of 0 → A --ι--> B --ρ--> C → 0 over degrees
/// [first, last]. Labels give the node prefix for A, B and C.
/// Verifies ι, ρ are chain maps, ι injective, ρ surjective, im ι = ker ρ.
LongExactSequence long_exact_sequence(const GradedComplex& a, const GradedComplex& b,
                                      const GradedComplex& c, const ChainMap& iota,
                                      const ChainMap& rho, int first, int last,
                                      const std::string& name, const std::string& label_a,
                                      const std::string& label_b, const std::string& label_c);

/// Recomputes exactness flags from dims and ranks alone (certificate check).
/// Returns the index of the first node where rank_in + rank_out ≠ dim, or -1.
int first_inexact_node(const LongExactSequence& seq);

}  // namespace dk
