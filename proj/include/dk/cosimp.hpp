#pragma once

// Semicosimplicial complexes and DG-Lie algebras, Čech nerves of covers, total
// cochain complexes and the descent groupoid of Maurer–Cartan data.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dk/artin.hpp"

namespace dk {

using ChartTuple = std::vector<std::size_t>;

/// faces[n-1][i]: level n-1 → level n for i = 0..n.
struct SemicosimplicialComplex {
  std::vector<GradedComplex> levels;
  std::vector<std::vector<ChainMap>> faces;
  /// Chart tuple labelling each block of a level, when built from a cover.
  std::vector<std::vector<ChartTuple>> tuples;

  std::size_t level_count() const { return levels.size(); }
  RatMatrix face(std::size_t n, std::size_t i, int degree) const;  // level n-1 → n
  /// Per-level block complexes (one per tuple) when built from a cover.
  std::vector<std::vector<GradedComplex>> blocks;
  /// Offset of block b of level n in degree q.
  std::size_t block_offset(std::size_t n, std::size_t b, int degree) const;
};

struct SemicosimplicialDGLA {
  std::vector<DGLieAlgebra> levels;
  std::vector<std::vector<ChainMap>> faces;
  std::vector<std::vector<ChartTuple>> tuples;

  SemicosimplicialComplex underlying() const;
};

/// δ_j δ_i = δ_i δ_{j−1} for i < j on every stored level, and each face a chain
/// map. Throws ComplexError naming (level, i, j); `degree()` is the level.
void check_cosimplicial_identities(const SemicosimplicialComplex& s);
/// Also checks that every face is a DG-Lie morphism.
void check_cosimplicial_identities(const SemicosimplicialDGLA& s);

enum class Nerve {
  Ordered,  // strictly increasing chart tuples (alternating Čech cochains)
  Full,     // all tuples, degenerate ones included
};

/// Sections over the intersection of a sorted set of charts, and restriction
/// from a subset to a superset.
struct ComplexPresheaf {
  std::size_t charts = 0;
  std::function<GradedComplex(const ChartTuple&)> sections;
  std::function<ChainMap(const ChartTuple& from, const ChartTuple& to)> restriction;
};

struct DGLAPresheaf {
  std::size_t charts = 0;
  std::function<DGLieAlgebra(const ChartTuple&)> sections;
  std::function<ChainMap(const ChartTuple& from, const ChartTuple& to)> restriction;
};

/// Throws ComplexError naming the first chart sets A ⊂ B ⊂ C with
/// res(B→C)∘res(A→B) ≠ res(A→C).
void check_restrictions(const ComplexPresheaf& f);

/// Levels 0..levels-1 of the Čech nerve. The ordered nerve of k charts vanishes
/// from level k on.
SemicosimplicialComplex build_cech_complex(const ComplexPresheaf& f, Nerve nerve,
                                           std::size_t levels);
SemicosimplicialDGLA build_cech_scdgla(const DGLAPresheaf& f, Nerve nerve, std::size_t levels);

/// Direct product of DG-Lie algebras, brackets componentwise.
DGLieAlgebra product(const std::vector<DGLieAlgebra>& parts);
/// A complex with zero bracket.
DGLieAlgebra abelian(const GradedComplex& c);

struct TotalCochain {
  GradedComplex complex;
  DoubleComplex grid;  // p = level, q = internal degree
  /// Total degrees whose cohomology does not see the missing levels.
  int reliable_through = 0;
};

/// Tot with horizontal δ = Σ_i (−1)^i δ_i. `complete` says the stored levels are
/// all nonzero levels (true for an ordered nerve built to `charts` levels).
TotalCochain total_cochain(const SemicosimplicialComplex& s, bool complete);

/// Chain map Tot(a) → Tot(b) induced by per-level chain maps commuting with
/// the faces (level p of a → level p of b).
ChainMap total_cochain_map(const TotalCochain& a, const TotalCochain& b,
                           const std::vector<ChainMap>& levels);

// ---------------------------------------------------------------------------
// Descent data over A: l ∈ L_0^1 ⊗ m, m ∈ L_1^0 ⊗ m.

struct DescentVerdict {
  bool maurer_cartan = false;
  bool gluing = false;   // e^m ∗ δ_0 l = δ_1 l
  bool cocycle = false;  // δ_2 m ∘ δ_0 m = δ_1 m as morphisms
  std::optional<RatVector> nu;
  bool valid() const { return maurer_cartan && gluing && cocycle; }
};

/// Applies a face to a tensor element, coefficientwise in m.
RatVector apply_face(const ChainMap& face, int degree, const TensorDGLA& src, const TensorDGLA& tgt,
                     const RatVector& x);

DescentVerdict descent_check(const SemicosimplicialDGLA& s, const ArtinLocalAlgebra& a,
                             const RatVector& l, const RatVector& m);

/// Whether a ∈ L_0^0 ⊗ m is a morphism (l,m) → (l',m'): e^a ∗ l = l' and
/// δ_1 a ∘ m = m' ∘ δ_0 a as morphisms leaving δ_0 l.
bool descent_morphism_check(const SemicosimplicialDGLA& s, const ArtinLocalAlgebra& a,
                            const RatVector& g, const RatVector& l, const RatVector& m,
                            const RatVector& l2, const RatVector& m2);

/// Isomorphism classes of descent data over K[ε]. Objects are (l,m,ν) with
/// dl = 0, δ_0 l − δ_1 l = dm and δ_0 m + δ_2 m − δ_1 m = dν; the classes are
/// their (l,m) projections modulo (−da, δ_1 a − δ_0 a) and (0, dμ).
struct DescentClasses {
  std::size_t dimension = 0;
  std::size_t object_dim = 0;
  std::size_t orbit_dim = 0;
  /// Columns (l, m) in L_0^1 ⊕ L_1^0 spanning a complement of the orbit.
  RatMatrix representatives;
  std::size_t l_dim = 0, m_dim = 0;
};

DescentClasses first_order_descent_classes(const SemicosimplicialComplex& s);

}  // namespace dk
