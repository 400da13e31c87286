#pragma once

// Can a fixed bracket on L⁰ of a two-term complex L⁰ --d--> L¹ be extended to
// a DG-Lie structure? Unknowns are the brackets [x, a] with x ∈ L⁰, a ∈ L¹;
// constraints are Leibniz for d and Jacobi with at most one entry in L¹.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dk/exactlin.hpp"
#include "dk/polynomial.hpp"

namespace dk {

/// Truncated two-term complex. L¹ has a domain basis (where brackets are
/// evaluated) and a larger codomain basis sharing its first vectors, so that
/// [x, a] may leave the domain.
struct TwoTermComplex {
  std::string name;
  std::vector<std::string> basis0;
  std::vector<std::string> basis1;  // codomain labels; the first `domain1` form the domain
  std::size_t domain1 = 0;
  RatMatrix d;  // domain1 × dim0
  /// [x_i, x_j] in L⁰ coordinates, or nullopt when it leaves the truncation.
  std::function<std::optional<RatVector>(std::size_t, std::size_t)> bracket0;
  /// Brackets worth trying besides the linear solution: name and one matrix
  /// (codomain × domain) per basis vector of L⁰.
  std::vector<std::pair<std::string, std::vector<RatMatrix>>> candidates;

  std::size_t dim0() const { return basis0.size(); }
  std::size_t codomain1() const { return basis1.size(); }
};

/// One linear constraint Σ coeffs·u = rhs on the unknowns u = ([x_i, a_c])_r.
struct ConstraintRow {
  std::string kind;                  // "leibniz" or "jacobi"
  std::vector<std::size_t> slots;    // (i, j) or (i, j, c)
  std::size_t component = 0;         // codomain coordinate r
  RatVector coeffs;
  Rational rhs;
  std::string text;
};

enum class FeasibilityVerdict { Feasible, Infeasible, Undecided };

std::string to_string(FeasibilityVerdict v);

struct DerivedValue {
  std::string label;  // e.g. "[t∂, a] = -a"
  std::size_t unknown = 0;
  Rational value;
};

struct FeasibilityCertificate {
  FeasibilityVerdict verdict = FeasibilityVerdict::Undecided;
  std::size_t unknowns = 0;
  std::size_t linear_rows = 0;
  // feasible: the bracket [x_i, ·] as a codomain × domain matrix per i
  std::vector<RatMatrix> bracket;
  std::string witness_source;
  // infeasible: Σ weight·row has zero coefficients and right-hand side `contradiction`
  std::vector<std::pair<ConstraintRow, Rational>> combination;
  Rational contradiction;
  std::vector<DerivedValue> derived;  // values forced before the contradiction
};

/// Leibniz rows γ[x_i,x_j] = [x_i,γx_j] − [x_j,γx_i] and, when L¹ has
/// dimension one, the Jacobi rows Σ_k [x_i,x_j]_k [x_k,a] = 0 (the quadratic
/// terms cancel for scalars). Rows are ordered Leibniz first, then by slots.
std::vector<ConstraintRow> linear_constraints(const TwoTermComplex& c);

/// Every Leibniz and Jacobi constraint evaluated on a bracket; returns the text
/// of the first violated one.
std::optional<std::string> violated_constraint(const TwoTermComplex& c, const std::vector<RatMatrix>& bracket);

FeasibilityCertificate bracket_extension_feasibility(const TwoTermComplex& c);

/// Independent re-check: a witness satisfies every constraint; an infeasibility
/// combination is rebuilt from the definitions and sums to the contradiction.
bool verify_certificate(const TwoTermComplex& c, const FeasibilityCertificate& cert);

/// Θ → N_{Z|X} on A¹ for Z = {f = 0}: t^n∂ for n ≤ D, N = K[t]/(f), γ(p∂) = p f' mod f.
TwoTermComplex theta_to_normal_a1(const Poly& f, int degree);

/// P(X,L) --e_σ--> L on a chart: operators b + p∂ with b, p of degree ≤ D; the
/// cocone bracket [b + p∂, a] = b·a + p·a' is offered as a candidate.
TwoTermComplex principal_parts_to_line(const Poly& sigma, int degree);

TwoTermComplex zero_two_term_complex();

}  // namespace dk
