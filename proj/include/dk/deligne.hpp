#pragma once

// Maurer–Cartan elements, the gauge action and the Deligne groupoid of L ⊗ m_A,
// first-order classes, order-by-order lifting, and the dictionary between MC
// elements of a cocone and deformed presentations (F_A, σ_A).

#include <optional>
#include <vector>

#include "dk/artin.hpp"

namespace dk {

/// dx + ½[x,x] for x of degree 1.
RatVector mc_residual(const TensorDGLA& t, const RatVector& x);
bool mc_check(const TensorDGLA& t, const RatVector& x);

/// e^a ∗ x = x + Σ_{n≥0} ad(a)^n/(n+1)! ([a,x] − da).
RatVector gauge_act(const TensorDGLA& t, const RatVector& a, const RatVector& x);

/// [a]∘[b] = [bch(a,b)].
RatVector gauge_compose(const TensorDGLA& t, const RatVector& a, const RatVector& b);

/// Matrix of the linear map ν ↦ dν + [x,ν] from degree −1 to degree 0.
RatMatrix stabilizer_map(const TensorDGLA& t, const RatVector& x);

struct MorphismVerdict {
  bool equal = false;
  /// ν with dν + [x,ν] = bch(−b, a) when equal.
  std::optional<RatVector> nu;
};

/// Decides e^a = e^b e^{dν+[x,ν]} for some ν. Both morphisms must leave from x
/// and reach the same target (PreconditionError otherwise). Since ν ↦ dν + [x,ν]
/// is linear for fixed x, membership of bch(−b,a) is one linear solve.
MorphismVerdict morphism_equal(const TensorDGLA& t, const RatVector& a, const RatVector& b,
                               const RatVector& x);

/// Classes of MC elements over K[ε] modulo gauge: cycles of degree 1 modulo the
/// orbit directions e^a ∗ 0 = −da. Computed through the gauge action rather
/// than through cohomology().
struct FirstOrderClasses {
  std::size_t dimension = 0;
  std::size_t cycle_dim = 0;
  std::size_t orbit_dim = 0;
  RatMatrix representatives;  // columns in L^1
};

FirstOrderClasses def_over_dual_numbers(const DGLieAlgebra& l);

/// Basis of H^1(L) (representative cocycles as columns).
RatMatrix tangent_space(const DGLieAlgebra& l);

struct ObstructionReport {
  int order = 0;
  /// Residual of MC modulo m^{order+1}: homogeneous of this order, a cocycle.
  RatVector residual;
  bool residual_is_cocycle = false;
  bool lifted = false;
  /// Correction y (homogeneous of this order) with dy = −residual when lifted.
  RatVector correction;
  /// Class coordinates in H²(L) per order-`order` monomial (monomial index, coords).
  std::vector<std::pair<std::size_t, RatVector>> obstruction;
  /// The partial solution after this order (x mod m^{order+1}).
  RatVector solution;
};

/// Lifts a first-order solution x₁ (taken mod m²) order by order, choosing the
/// canonical membership preimage as correction. Stops at the first nonzero
/// obstruction class.
std::vector<ObstructionReport> lift_order_by_order(const TensorDGLA& t, const RatVector& x1);

// ---------------------------------------------------------------------------

/// Operators and vectors on E ⊗ A, with A = K ⊕ m. Index e·dim(A) + β where β = 0
/// is the unit and β = 1 + α the monomial α. E runs through its total space.
class ModuleOverArtin {
 public:
  ModuleOverArtin(const HomComplexDGLA& hom, const ArtinLocalAlgebra& a);

  std::size_t dim() const;
  std::size_t ring_dim() const { return a_->dim() + 1; }
  std::size_t offset(int k) const;  // start of E^k ⊗ A

  /// Σ_α f_α ⊗ m_α for f ∈ Hom^n ⊗ m (TensorDGLA layout).
  RatMatrix operator_of(int n, const RatVector& f_hom) const;
  /// ∂ ⊗ 1.
  RatMatrix differential() const;
  /// v ⊗ 1 for v ∈ E^k, and x ∈ E^k ⊗ m embedded.
  RatVector constant(int k, const RatVector& v) const;
  RatVector from_maximal(int k, const RatVector& x) const;
  /// Restriction of a total vector to E^k ⊗ A, and of an operator to E^k⊗A → E^l⊗A.
  RatVector component(int k, const RatVector& v) const;
  RatMatrix block(int l, int k, const RatMatrix& op) const;

 private:
  const HomComplexDGLA* hom_;
  const ArtinLocalAlgebra* a_;
};

/// exp of a nilpotent square matrix.
RatMatrix nilpotent_exp(const RatMatrix& m);

struct DeformationPresentation {
  RatMatrix deformed_differential;  // ∂ + u on E ⊗ A
  std::size_t fiber_dim = 0;        // dim_K F, F = coker(∂: E^{-1} → E^0)
  std::size_t module_dim = 0;       // dim_K F_A
  bool flat = false;                // module_dim = fiber_dim · dim A
  bool squares_to_zero = false;
  /// H^i(E ⊗ A, ∂+u) = 0 wherever H^i(E) = 0 in negative degrees.
  bool exact = false;
  RatMatrix image;                  // basis of (∂+u)(E^{-1} ⊗ A) inside E^0 ⊗ A
  RatVector section;                // s ⊗ 1 + t in E^0 ⊗ A
  bool section_is_cycle = false;
};

/// (u,t) ∈ C¹ ⊗ m is an MC element of the cocone (checked). Builds the deformed
/// presentation of F_A = coker(∂+u) and the section q(s+t).
DeformationPresentation materialize_deformation(const CoconeDGLA& c, const TensorDGLA& t,
                                                const RatVector& ut);

/// v − w ∈ image of the presentation, for v, w ∈ E^0 ⊗ A.
bool same_section_class(const DeformationPresentation& p, const RatVector& v, const RatVector& w);

/// For (u',t') = e^{(f,a)} ∗ (u,t) on a cocone over Hom*(E,E)-acting L:
/// ∂+u' = e^f(∂+u)e^{−f}, and s + t' − e^f(s+t) = (∂+u')(b) for some b ∈ E^{−1} ⊗ m.
struct GaugeAffineCheck {
  bool conjugation = false;
  bool membership = false;
  std::optional<RatVector> witness;  // b, in E^{-1} ⊗ m layout (i·dim m + α)
};

GaugeAffineCheck check_gauge_affine(const CoconeDGLA& c, const TensorDGLA& t, const RatVector& ut,
                                    const RatVector& g);

}  // namespace dk
