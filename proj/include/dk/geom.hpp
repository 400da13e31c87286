#pragma once

// Desk-scale geometry: sheaves on P¹ = U₀ ∪ U₁ (coordinates t and s = 1/t) as
// truncated section spaces with restriction maps, their Čech hypercohomology
// with stabilization certificates, and divisor data on A¹, A² and P¹.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dk/cosimp.hpp"
#include "dk/polynomial.hpp"

namespace dk {

enum class P1Open { U0 = 0, U1 = 1, U01 = 2 };

/// Locally free sheaves are frames e₀ on U₀ and e₁ on U₁ with e₁ = M(t)·e₀:
/// column j of the transition holds frame vector j of U₁ in U₀-coordinates.
/// A torsion sheaf O_Z ⊗ O(d) has Z = {f₀ = 0} on U₀ and {f₁ = 0} on U₁,
/// f₁(s) = s^d f₀(1/s), with the transition of O(d).
class P1Sheaf {
 public:
  static P1Sheaf locally_free(std::string name, LaurentMatrix transition);
  /// O(d): e₀ = t^{−d} e₁, so a global section (f₀, f₁) has f₁(s) = s^d f₀(1/s).
  static P1Sheaf line_bundle(int d);
  /// Θ: ∂_s = −t² ∂_t.
  static P1Sheaf tangent();
  /// P(X, O(d)) with coordinates (scalar, symbol): b + q∂_s = (b + d·t·q) + (−t² q)∂_t.
  static P1Sheaf principal_parts(int d);
  /// O_Z ⊗ O(d) for σ = f₀ e₀ a section of O(d) (deg f₀ ≤ d).
  static P1Sheaf torsion(std::string name, const Poly& f0, int d);

  const std::string& name() const { return name_; }
  bool is_torsion() const { return torsion_; }
  std::size_t rank() const { return transition_.size(); }
  const LaurentMatrix& transition() const { return transition_; }
  /// Torsion data: relation on U₀, on U₁, and on the overlap (f₀ without its t-factors).
  const Poly& relation(P1Open u) const;
  int twist() const { return twist_; }

  /// det M is a unit c·t^k of K[t, t^{−1}].
  bool transition_invertible() const;

 private:
  std::string name_;
  LaurentMatrix transition_;
  bool torsion_ = false;
  int twist_ = 0;
  Poly rel_[3];
};

/// O-linear map given by polynomial matrices on each chart (the overlap uses
/// the U₀ matrix, in U₀-coordinates).
struct P1Map {
  std::string name;
  std::string source, target;
  PolyMatrix on_u0;  // in t
  PolyMatrix on_u1;  // in s
};

/// A sheaf together with its truncation: on U₀ component i has degrees
/// 0..n0[i], on U₁ degrees 0..n1[i], and on the overlap the window [lo[i], hi[i]]
/// spanned by both images.
class P1Sections {
 public:
  P1Sections(const P1Sheaf& sheaf, std::vector<int> n0, std::vector<int> n1);

  const P1Sheaf& sheaf() const { return sheaf_; }
  std::size_t dim(P1Open u) const;
  /// U₀ → U₀₁ or U₁ → U₀₁.
  const RatMatrix& restriction(P1Open from) const;

  /// Coordinates of a section given by its components (Laurent in the chart
  /// variable); throws WindowOverflow when it leaves the truncation.
  RatVector encode(P1Open u, const std::vector<Laurent>& comps) const;
  /// Components of basis vector k.
  std::vector<Laurent> basis(P1Open u, std::size_t k) const;
  /// Components of a coordinate vector.
  std::vector<Laurent> decode(P1Open u, const RatVector& v) const;

  const std::vector<int>& n0() const { return n0_; }
  const std::vector<int>& n1() const { return n1_; }
  const std::vector<int>& lo() const { return lo_; }
  const std::vector<int>& hi() const { return hi_; }

 private:
  std::size_t ring_dim(P1Open u) const;
  Poly reduce(P1Open u, const Laurent& x) const;

  P1Sheaf sheaf_;
  std::vector<int> n0_, n1_, lo_, hi_;
  Poly t_inverse_;  // t^{−1} modulo the overlap relation (torsion)
  RatMatrix res0_, res1_;
};

/// Sheaves and maps sharing one truncation. Sheaves must be added before any
/// map into them and in an order where maps point forward; truncations are
/// chosen so every map sends truncated sections into truncated sections.
/// Summands carrying the same atom label (e.g. Hom⁰ inside K⁰ and C⁰) get the
/// same truncation, so block inclusions and projections stay exact.
class P1Diagram {
 public:
  void add_sheaf(P1Sheaf s, std::vector<std::string> atoms = {});
  void add_map(P1Map m);

  /// Chooses truncations for base window N (locally free sources get N on both
  /// charts). Throws WindowOverflow if no admissible truncation is found.
  void set_window(int n);
  int window() const { return window_; }

  const P1Sections& sections(const std::string& sheaf) const;
  const P1Sheaf& sheaf(const std::string& name) const;
  const P1Map& map(const std::string& name) const;
  /// Matrix of a map on an open.
  RatMatrix matrix(const std::string& map, P1Open u) const;
  /// res∘φ = φ∘res on both chart restrictions; throws ComplexError naming the map.
  void check_compatible(const std::string& map) const;

 private:
  RatMatrix build_matrix(const P1Map& m, P1Open u) const;

  std::vector<P1Sheaf> sheaves_;
  std::vector<P1Map> maps_;
  std::map<std::string, std::vector<std::string>> atoms_;
  std::map<std::string, P1Sections> sections_;
  std::map<std::string, std::map<int, RatMatrix>> matrices_;
  int window_ = -1;
};

/// A bounded complex of sheaves in the diagram: terms[k] sits in degree lo + k
/// and diffs[k] names the map terms[k] → terms[k+1] ("" for zero).
/// Coefficient c scales a differential (e.g. −1 for a cocone).
struct P1Complex {
  int lo = 0;
  std::vector<std::string> terms;
  std::vector<std::string> diffs;
  std::vector<Rational> scale;  // optional, one per diff
};

/// Per-degree maps of a morphism of complexes ("" for zero).
struct P1Morphism {
  int lo = 0;
  std::vector<std::string> maps;
};

ComplexPresheaf p1_presheaf(const P1Diagram& d, const P1Complex& c);

struct Hypercohomology {
  SemicosimplicialComplex cech;
  TotalCochain total;
  CohomologyReport cohomology;
  std::size_t dim(int n) const { return cohomology.dim(n); }
};

Hypercohomology hypercohomology(const P1Diagram& d, const P1Complex& c);

/// Chain map on total complexes induced by a morphism of complexes.
ChainMap hypercohomology_map(const P1Diagram& d, const P1Complex& src, const Hypercohomology& hs,
                             const P1Complex& tgt, const Hypercohomology& ht,
                             const P1Morphism& f);

/// Window N at which the dims were certified, and the dims at N, N+1, N+2.
struct StabilizationCertificate {
  int window = 0;
  std::vector<std::vector<std::size_t>> dims;  // one row per tried window
  bool stable = false;
};

/// Evaluates `dims(N)` for N = start, start+1, ... and returns the first N with
/// equal values at N, N+1, N+2. WindowOverflow at some N moves on to N+1.
/// Throws StabilizationError after max_window.
StabilizationCertificate stabilize(int start, int max_window,
                                   const std::function<std::vector<std::size_t>(int)>& dims);

/// Default base window: 8 + max|d|.
int default_window(int max_abs_degree);

struct LineBundleCohomology {
  int d = 0;
  std::size_t h0 = 0, h1 = 0;
  StabilizationCertificate certificate;
};

/// Čech H⁰, H¹ of O(d) through the truncated two-chart complex.
LineBundleCohomology line_bundle_cohomology(int d, std::optional<int> window = std::nullopt);

/// Independent oracle by monomial counting.
std::pair<std::size_t, std::size_t> line_bundle_oracle(int d);

/// e_σ on one chart: (a, p) ↦ a·f + p·f'.
PolyMatrix evaluation_matrix(const Poly& f);

/// The diagram of the P¹ triple (O(d), σ): sheaves "O", "Theta", "P", "L" and,
/// when σ ≠ 0, "N" (O_Z ⊗ O(d), identified with N_{Z|X} through σ), with
/// maps "incl" O → P, "anchor" P → Θ, "sigma" O → L, "eval" P → L,
/// "id_L" L → L, "id_P" P → P, "id_O" O → O, "id_Theta" Θ → Θ, and
/// "gamma" Θ → N.
P1Diagram p1_triple_diagram(int d, const Poly& sigma);

// ---------------------------------------------------------------------------
// Affine divisors.

/// Z = {f = 0} ⊂ A¹: N = K[t]/(f) via f, γ(p∂_t) = p·f' mod f on vector
/// fields of degree ≤ window.
struct AffineDivisorA1 {
  Poly f;
  int window = 0;
  RatMatrix gamma;        // deg f × (window + 1)
  std::size_t normal_dim = 0;
  std::size_t gamma_rank = 0;
  std::size_t t1_dim = 0;  // dim coker γ
  RatMatrix log_fields;    // basis of ker γ (columns, coefficients of t^k ∂_t)
  std::size_t oracle_t1 = 0;  // deg gcd(f, f')
};

AffineDivisorA1 affine_divisor_a1(const Poly& f, int window);

/// Tjurina number dim K[x,y]/(f, f_x, f_y) of a plane curve, computed in the
/// degree-≤D truncation with stabilization over D, D+1, D+2.
struct TjurinaResult {
  std::size_t tau = 0;
  StabilizationCertificate certificate;
};

TjurinaResult tjurina_number(const MPoly& f, int start_degree = 4, int max_degree = 24);

}  // namespace dk
