#pragma once

// Shared between running, verifying and printing reports.

#include <memory>
#include <optional>
#include <string>

#include "dk/artin.hpp"
#include "dk/dgla.hpp"
#include "dk/exactlin.hpp"
#include "dk/feasibility.hpp"
#include "dk/geom.hpp"
#include "dk/polynomial.hpp"
#include "dk/rational.hpp"
#include "dk/scenario.hpp"
#include "dk/triples.hpp"

namespace dk::scenario_detail {

Json canonicalize(const Json& in, std::optional<int> window_override);

Json to_json(const RatVector& v);
Json to_json(const RatMatrix& m);  // list of rows
RatVector vector_from(const Json& j);
RatMatrix matrix_from(const Json& j, std::size_t rows, std::size_t cols);

/// The algebra of a dgla_explicit, hom_complex or cocone scenario. For
/// cocones `cocone` is set and `algebra` points into it.
struct AlgebraModel {
  std::shared_ptr<const HomComplexDGLA> hom;
  std::shared_ptr<const CoconeDGLA> cocone;
  std::shared_ptr<const DGLieAlgebra> owned;
  const DGLieAlgebra* algebra = nullptr;
};

AlgebraModel build_algebra(const Json& sc);
ArtinLocalAlgebra build_artin(const Json& sc);
P1Resolution build_resolution(const Json& sc);
TwoTermComplex build_two_term(const Json& sc);

Json sequence_to_json(const LongExactSequence& seq);
LongExactSequence sequence_from(const Json& j);
Json stabilization_to_json(const StabilizationCertificate& c);

Json certificate_to_json(const FeasibilityCertificate& c);
/// Rows are matched against the constraints rebuilt from `c`; unknown rows keep
/// empty coefficients so the check fails.
FeasibilityCertificate certificate_from(const Json& j, const TwoTermComplex& c);

/// Results of tasks that are cheap to recompute.
Json axioms_result(const DGLieAlgebra& l);
Json cohomology_result(const GradedComplex& c);
Json tangent_result(const DGLieAlgebra& l);
Json affine_result(const Json& sc);

}  // namespace dk::scenario_detail
