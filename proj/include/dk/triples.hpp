#pragma once

// Triples (P¹, F, σ): a resolution E* of F by sums of line bundles with a
// section lift s, the sheaf complexes Hom*(E,E), P*(E), K, C*(E,s) on the
// two-chart cover, the invariants T^i and the three hypercohomology sequences.

#include <optional>
#include <string>
#include <vector>

#include "dk/geom.hpp"

namespace dk {

/// E^{lo} → ... → E^0 with E^k = ⊕_α O(twists[k-lo][α]). Differential entries
/// and section components are global sections written on U₀ (polynomials in t
/// of degree ≤ the twist difference).
struct P1Resolution {
  int lo = 0;
  std::vector<std::vector<int>> twists;
  std::vector<PolyMatrix> diffs;  // diffs[k-lo]: E^k → E^{k+1}, rows index E^{k+1}
  std::vector<Poly> section;      // s ∈ H⁰(E⁰)

  std::size_t rank(int k) const;
  int max_abs_twist() const;

  /// (F, σ) with F = O(d) locally free: the resolution is F itself.
  static P1Resolution line_bundle(int d, const Poly& sigma);
  /// E ⊕ (O(e) --1--> O(e)) in degrees −1, 0; the section is unchanged.
  P1Resolution with_acyclic_pair(int e) const;
};

/// ∂² = 0, global sections, exactness in negative degrees on both charts at the
/// given window. Throws ComplexError or PreconditionError.
void validate_resolution(const P1Resolution& r, int window);

/// The sheaves and maps of all complexes attached to a triple, plus the
/// complexes and morphisms of the three short exact sequences
/// K → C → Θ, Hom → P → Θ and E[−1] → C → P.
struct TripleModel {
  P1Diagram diagram;
  P1Complex resolution, shifted, hom, pair, k, cocone, theta;
  P1Morphism k_to_c, c_to_theta, hom_to_p, p_to_theta, e_to_c, c_to_p;
};

TripleModel build_triple_model(const P1Resolution& r, int window);

struct TIReport {
  int lo = -1, hi = 3;  // reported degree range
  std::vector<std::size_t> triple;  // T^i(X,F,σ), i = lo..hi
  std::vector<std::size_t> pair;    // T^i(X,F)
  std::vector<std::size_t> ext;     // Ext^i(F,F)
  std::vector<std::size_t> sheaf;   // H^i(X,F)
  std::vector<std::size_t> k;       // H^i(X,K)
  std::vector<std::size_t> theta;   // H^i(Θ)
  /// Lowest and highest degree where one of the complexes above has cohomology.
  int support_lo = 0, support_hi = 0;
  std::vector<LongExactSequence> sequences;
  bool euler = false;  // alternating sums vanish along every sequence
  StabilizationCertificate certificate;

  std::size_t t(int i) const;
  std::size_t pair_dim(int i) const;
  std::size_t sheaf_dim(int i) const;
};

TIReport compute_TI(const P1Resolution& r, std::optional<int> window = std::nullopt);

/// Σ (−1)^k dim(node_k) over a complete sequence.
bool euler_identity(const LongExactSequence& seq);

/// Certified facts about π: T_triple → T_pair from the sequence
/// ⋯ → T^i(X,F,σ) → T^i(X,F) → H^i(X,F) → ⋯.
struct ForgetfulReport {
  std::size_t h1_sheaf = 0;
  bool criterion_applies = false;  // H¹(X,F) = 0
  std::size_t tangent_rank = 0;    // rank T¹ → T¹
  bool tangent_surjective = false;
  bool tangent_injective = false;
  std::size_t restriction_rank = 0;  // rank T¹(X,F) → H¹(X,F); zero iff surjective on T¹
  std::size_t obstruction_rank = 0;  // rank T² → T²
  bool obstruction_injective = false;
  bool smooth = false;  // criterion applies, surjective on T¹ and injective on T²
};

ForgetfulReport forgetful_analysis(const TIReport& r);

/// First-order descent classes of the Čech cocone over K[ε] (ordered two-chart
/// nerve) and their check through the descent groupoid.
struct TangentDescent {
  std::size_t descent_dim = 0;
  std::size_t t1 = 0;
  bool representatives_valid = false;
  bool agrees() const { return descent_dim == t1 && representatives_valid; }
};

TangentDescent tangent_via_descent(const P1Resolution& r, int window);

/// Comparison E → E' given per term by global polynomial matrices (on U₀).
struct ResolutionComparison {
  std::vector<PolyMatrix> maps;  // maps[k-lo], lo the lower of the two ranges: E^k → E'^k
};

struct IndependenceVerdict {
  bool chain_map = false;
  bool section_matches = false;
  bool injective_locally_free = false;
  bool equal_invariants = false;
  std::vector<std::size_t> first, second;  // T^i for i = −1..3
  bool ok() const { return chain_map && section_matches && injective_locally_free && equal_invariants; }
};

IndependenceVerdict resolution_independence_check(const P1Resolution& a, const P1Resolution& b,
                                                  const ResolutionComparison& f,
                                                  std::optional<int> window = std::nullopt);

/// Identity comparison between two resolutions with the same terms.
ResolutionComparison identity_comparison(const P1Resolution& a);
/// The inclusion E → E ⊕ (O(e) --1--> O(e)).
ResolutionComparison acyclic_pair_inclusion(const P1Resolution& a);

}  // namespace dk
