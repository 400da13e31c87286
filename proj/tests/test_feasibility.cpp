#include "doctest.h"

#include "dk/feasibility.hpp"

using namespace dk;

namespace {

Poly poly(const std::string& s) { return parse_polynomial(s, {"t"}).univariate(); }

Rational derived(const FeasibilityCertificate& c, const std::string& label) {
  for (const auto& d : c.derived)
    if (d.label == label) return d.value;
  FAIL("no derived value " << label);
  return 0;
}

}  // namespace

TEST_CASE("vector fields on A1 with Z = {t} admit no DG-Lie extension") {
  for (int D : {2, 3, 5}) {
    CAPTURE(D);
    auto c = theta_to_normal_a1(poly("t"), D);
    auto cert = bracket_extension_feasibility(c);
    REQUIRE(cert.verdict == FeasibilityVerdict::Infeasible);
    CHECK(verify_certificate(c, cert));
    CHECK(cert.contradiction == -2);  // −2a = 0
    CHECK(derived(cert, "[t∂, 1]") == -1);
    CHECK(derived(cert, "[∂, 1]") == 0);
    for (int n = 2; n <= D; ++n) CHECK(derived(cert, "[t^" + std::to_string(n) + "∂, 1]") == 0);
    // the combination uses the Leibniz row for [t∂, ∂] and Jacobi for [∂, t²∂]
    bool jacobi = false;
    for (const auto& [row, w] : cert.combination)
      if (row.kind == "jacobi" && row.slots[0] == 0 && row.slots[1] == 2) jacobi = true;
    CHECK(jacobi);
  }
}

TEST_CASE("truncation below 2 cannot see the contradiction") {
  auto c = theta_to_normal_a1(poly("t"), 1);
  auto cert = bracket_extension_feasibility(c);
  CHECK(cert.verdict == FeasibilityVerdict::Feasible);
  CHECK(verify_certificate(c, cert));
}

TEST_CASE("principal parts to L carries the cocone bracket") {
  for (auto [s, D] : std::vector<std::pair<std::string, int>>{{"t^2-1", 2}, {"t", 3}, {"t^3-t", 1}}) {
    CAPTURE(s);
    auto c = principal_parts_to_line(poly(s), D);
    CHECK_FALSE(violated_constraint(c, c.candidates.at(0).second));
    auto cert = bracket_extension_feasibility(c);
    REQUIRE(cert.verdict == FeasibilityVerdict::Feasible);
    CHECK(verify_certificate(c, cert));
  }
}

TEST_CASE("zero complex is feasible with the zero bracket") {
  auto c = zero_two_term_complex();
  auto cert = bracket_extension_feasibility(c);
  CHECK(cert.verdict == FeasibilityVerdict::Feasible);
  CHECK(cert.bracket.empty());
  CHECK(verify_certificate(c, cert));
}

TEST_CASE("tampered certificates are rejected") {
  auto c = theta_to_normal_a1(poly("t"), 3);
  auto cert = bracket_extension_feasibility(c);
  auto bad = cert;
  bad.contradiction = 5;
  CHECK_FALSE(verify_certificate(c, bad));
  auto bad2 = cert;
  bad2.combination.front().second += 1;
  CHECK_FALSE(verify_certificate(c, bad2));

  auto p = principal_parts_to_line(poly("t^2-1"), 2);
  auto ok = bracket_extension_feasibility(p);
  auto wrong = ok;
  wrong.bracket[0](0, 0) += 1;
  CHECK_FALSE(verify_certificate(p, wrong));
}
