#include "dk/feasibility.hpp"

#include <algorithm>

#include "dk/error.hpp"

namespace dk {

namespace {

std::string monomial_label(int n, const std::string& suffix) {
  std::string t = n == 0 ? "" : n == 1 ? "t" : "t^" + std::to_string(n);
  if (suffix.empty()) return t.empty() ? "1" : t;
  return t + suffix;
}

struct Unknowns {
  std::size_t dom, cod;
  std::size_t at(std::size_t i, std::size_t r, std::size_t c) const { return (i * cod + r) * dom + c; }
};

RatVector embed(const RatVector& v, std::size_t n) {
  RatVector out = zero_vector(n);
  for (std::size_t k = 0; k < v.size() && k < n; ++k) out[k] = v[k];
  return out;
}

bool fits_domain(const RatVector& v, std::size_t dom) {
  for (std::size_t k = dom; k < v.size(); ++k)
    if (v[k] != 0) return false;
  return true;
}

RatVector first(const RatVector& v, std::size_t n) { return RatVector(v.begin(), v.begin() + static_cast<long>(n)); }

std::vector<RatMatrix> unpack(const TwoTermComplex& c, const RatVector& x) {
  Unknowns u{c.domain1, c.codomain1()};
  std::vector<RatMatrix> out;
  for (std::size_t i = 0; i < c.dim0(); ++i) {
    RatMatrix m(u.cod, u.dom);
    for (std::size_t r = 0; r < u.cod; ++r)
      for (std::size_t a = 0; a < u.dom; ++a) m(r, a) = x[u.at(i, r, a)];
    out.push_back(std::move(m));
  }
  return out;
}

std::string bracket_text(const std::string& x, const std::string& y) { return "[" + x + ", " + y + "]"; }

}  // namespace

std::string to_string(FeasibilityVerdict v) {
  switch (v) {
    case FeasibilityVerdict::Feasible: return "feasible";
    case FeasibilityVerdict::Infeasible: return "infeasible";
    case FeasibilityVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

std::vector<ConstraintRow> linear_constraints(const TwoTermComplex& c) {
  Unknowns u{c.domain1, c.codomain1()};
  const std::size_t n = c.dim0() * u.cod * u.dom;
  std::vector<ConstraintRow> rows;
  for (std::size_t i = 0; i < c.dim0(); ++i)
    for (std::size_t j = i + 1; j < c.dim0(); ++j) {
      auto z = c.bracket0(i, j);
      if (!z) continue;
      RatVector dz = embed(c.d * *z, u.cod);
      for (std::size_t r = 0; r < u.cod; ++r) {
        ConstraintRow row{"leibniz", {i, j}, r, zero_vector(n), dz[r], ""};
        for (std::size_t a = 0; a < u.dom; ++a) {
          row.coeffs[u.at(i, r, a)] += c.d(a, j);
          row.coeffs[u.at(j, r, a)] -= c.d(a, i);
        }
        bool trivial = std::all_of(row.coeffs.begin(), row.coeffs.end(), [](const Rational& q) { return q == 0; });
        if (trivial && row.rhs == 0) continue;
        row.text = "d" + bracket_text(c.basis0[i], c.basis0[j]) + " = " + bracket_text(c.basis0[i], "d" + c.basis0[j]) +
                   " - " + bracket_text(c.basis0[j], "d" + c.basis0[i]) + " at " + c.basis1[r];
        rows.push_back(std::move(row));
      }
    }
  if (u.dom == 1 && u.cod == 1) {
    for (std::size_t i = 0; i < c.dim0(); ++i)
      for (std::size_t j = i + 1; j < c.dim0(); ++j) {
        auto z = c.bracket0(i, j);
        if (!z) continue;
        ConstraintRow row{"jacobi", {i, j, 0}, 0, zero_vector(n), Rational(0), ""};
        for (std::size_t k = 0; k < c.dim0(); ++k) row.coeffs[u.at(k, 0, 0)] += (*z)[k];
        if (std::all_of(row.coeffs.begin(), row.coeffs.end(), [](const Rational& q) { return q == 0; })) continue;
        const std::string& a = c.basis1[0];
        row.text = bracket_text(bracket_text(c.basis0[i], c.basis0[j]), a) + " = " +
                   bracket_text(c.basis0[i], bracket_text(c.basis0[j], a)) + " - " +
                   bracket_text(c.basis0[j], bracket_text(c.basis0[i], a));
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

std::optional<std::string> violated_constraint(const TwoTermComplex& c, const std::vector<RatMatrix>& b) {
  const std::size_t dom = c.domain1, cod = c.codomain1();
  if (b.size() != c.dim0()) return std::string("bracket has the wrong number of components");
  for (const auto& m : b)
    if (m.rows() != cod || m.cols() != dom) return std::string("bracket component has the wrong shape");
  for (std::size_t i = 0; i < c.dim0(); ++i)
    for (std::size_t j = i + 1; j < c.dim0(); ++j) {
      auto z = c.bracket0(i, j);
      if (!z) continue;
      RatVector lhs = embed(c.d * *z, cod);
      RatVector rhs = b[i] * c.d.column(j);
      RatVector other = b[j] * c.d.column(i);
      for (std::size_t r = 0; r < cod; ++r)
        if (lhs[r] != rhs[r] - other[r])
          return "Leibniz fails for (" + c.basis0[i] + ", " + c.basis0[j] + ") at " + c.basis1[r];
      for (std::size_t a = 0; a < dom; ++a) {
        RatVector e = zero_vector(dom);
        e[a] = 1;
        RatVector vj = b[j] * e, vi = b[i] * e;
        if (!fits_domain(vj, dom) || !fits_domain(vi, dom)) continue;
        RatVector left = zero_vector(cod);
        for (std::size_t k = 0; k < c.dim0(); ++k)
          if ((*z)[k] != 0) {
            RatVector t = b[k] * e;
            for (std::size_t r = 0; r < cod; ++r) left[r] += (*z)[k] * t[r];
          }
        RatVector p = b[i] * first(vj, dom), q = b[j] * first(vi, dom);
        for (std::size_t r = 0; r < cod; ++r)
          if (left[r] != p[r] - q[r])
            return "Jacobi fails for (" + c.basis0[i] + ", " + c.basis0[j] + ", " + c.basis1[a] + ")";
      }
    }
  return std::nullopt;
}

FeasibilityCertificate bracket_extension_feasibility(const TwoTermComplex& c) {
  FeasibilityCertificate cert;
  Unknowns u{c.domain1, c.codomain1()};
  cert.unknowns = c.dim0() * u.cod * u.dom;
  auto rows = linear_constraints(c);
  cert.linear_rows = rows.size();
  auto system = [&](const std::vector<std::size_t>& idx) {
    std::vector<RatVector> rs;
    RatVector b;
    for (std::size_t k : idx) {
      rs.push_back(rows[k].coeffs);
      b.push_back(rows[k].rhs);
    }
    return std::make_pair(RatMatrix::from_rows(cert.unknowns, rs), b);
  };
  std::vector<std::size_t> all(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) all[k] = k;
  auto [a, b] = system(all);
  auto x = solve(a, b);

  if (!x) {
    // first inconsistent prefix, then drop rows that are not needed
    std::vector<std::size_t> prefix;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      prefix.push_back(k);
      auto [pa, pb] = system(prefix);
      if (!solve(pa, pb)) break;
    }
    std::vector<std::size_t> consistent(prefix.begin(), prefix.end() - 1);
    auto [ca, cb] = system(consistent);
    if (auto x0 = solve(ca, cb)) {
      RatMatrix kernel = kernel_basis(ca);
      for (std::size_t v = 0; v < cert.unknowns; ++v) {
        bool pinned = true;
        for (std::size_t col = 0; col < kernel.cols() && pinned; ++col) pinned = kernel(v, col) == 0;
        if (!pinned) continue;
        std::size_t i = v / (u.cod * u.dom), r = (v / u.dom) % u.cod, s = v % u.dom;
        std::string label = bracket_text(c.basis0[i], c.basis1[s]);
        if (u.cod > 1) label += " at " + c.basis1[r];
        cert.derived.push_back({label, v, (*x0)[v]});
      }
    }
    std::vector<std::size_t> minimal = prefix;
    for (std::size_t k = 0; k + 1 < minimal.size();) {
      std::vector<std::size_t> trial = minimal;
      trial.erase(trial.begin() + static_cast<long>(k));
      auto [ta, tb] = system(trial);
      if (!solve(ta, tb)) {
        minimal = std::move(trial);
      } else {
        ++k;
      }
    }
    auto [ma, mb] = system(minimal);
    RatVector y = *inconsistency_witness(ma, mb);
    Rational scale = Rational(-1) / y.back();
    cert.contradiction = 0;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      Rational w = scale * y[k];
      if (w == 0) continue;
      cert.combination.push_back({rows[minimal[k]], w});
      cert.contradiction += w * mb[k];
    }
    cert.verdict = FeasibilityVerdict::Infeasible;
    return cert;
  }

  auto try_bracket = [&](const std::string& source, const std::vector<RatMatrix>& br) {
    if (violated_constraint(c, br)) return false;
    cert.verdict = FeasibilityVerdict::Feasible;
    cert.bracket = br;
    cert.witness_source = source;
    return true;
  };
  if (try_bracket("linear solution", unpack(c, *x))) return cert;
  for (const auto& [name, br] : c.candidates)
    if (try_bracket(name, br)) return cert;
  cert.verdict = FeasibilityVerdict::Undecided;
  return cert;
}

bool verify_certificate(const TwoTermComplex& c, const FeasibilityCertificate& cert) {
  switch (cert.verdict) {
    case FeasibilityVerdict::Feasible:
      return !violated_constraint(c, cert.bracket);
    case FeasibilityVerdict::Undecided:
      return false;
    case FeasibilityVerdict::Infeasible:
      break;
  }
  auto rows = linear_constraints(c);
  Unknowns u{c.domain1, c.codomain1()};
  RatVector sum = zero_vector(c.dim0() * u.cod * u.dom);
  Rational rhs = 0;
  for (const auto& [row, w] : cert.combination) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const ConstraintRow& r) {
      return r.kind == row.kind && r.slots == row.slots && r.component == row.component;
    });
    if (it == rows.end() || it->coeffs != row.coeffs || it->rhs != row.rhs) return false;
    if (sum.size() != it->coeffs.size()) return false;
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += w * it->coeffs[k];
    rhs += w * it->rhs;
  }
  bool zero = std::all_of(sum.begin(), sum.end(), [](const Rational& q) { return q == 0; });
  return zero && rhs != 0 && rhs == cert.contradiction;
}

// ---------------------------------------------------------------------------

TwoTermComplex theta_to_normal_a1(const Poly& f, int degree) {
  if (f.degree() < 1) throw PreconditionError("divisor equation must have positive degree");
  if (degree < 0) throw PreconditionError("truncation degree must be nonnegative");
  TwoTermComplex c;
  c.name = "Theta -> N on A1, f = " + f.to_string();
  const int m = f.degree();
  for (int n = 0; n <= degree; ++n) c.basis0.push_back(monomial_label(n, "∂"));
  for (int j = 0; j < m; ++j) c.basis1.push_back(monomial_label(j, ""));
  c.domain1 = static_cast<std::size_t>(m);
  c.d = RatMatrix(c.domain1, c.dim0());
  Poly df = f.derivative();
  for (int n = 0; n <= degree; ++n) {
    Poly img = poly_mod(Poly::monomial(n) * df, f);
    for (int j = 0; j <= img.degree(); ++j)
      c.d(static_cast<std::size_t>(j), static_cast<std::size_t>(n)) = img.coeff(j);
  }
  const std::size_t dim0 = c.dim0();
  c.bracket0 = [degree, dim0](std::size_t i, std::size_t j) -> std::optional<RatVector> {
    int n = static_cast<int>(i), m2 = static_cast<int>(j), k = n + m2 - 1;
    RatVector z = zero_vector(dim0);
    if (m2 == n) return z;
    if (k > degree) return std::nullopt;
    z[static_cast<std::size_t>(k)] = Rational(m2 - n);
    return z;
  };
  return c;
}

TwoTermComplex principal_parts_to_line(const Poly& sigma, int degree) {
  if (degree < 0) throw PreconditionError("truncation degree must be nonnegative");
  TwoTermComplex c;
  c.name = "P(X,L) -> L on a chart, sigma = " + sigma.to_string();
  const int s = std::max(sigma.degree(), 0);
  const int dom_deg = degree + s, cod_deg = 2 * degree + s;
  const auto D = static_cast<std::size_t>(degree) + 1;
  for (int i = 0; i <= degree; ++i) c.basis0.push_back(monomial_label(i, ""));
  for (int i = 0; i <= degree; ++i) c.basis0.push_back(monomial_label(i, "∂"));
  for (int j = 0; j <= cod_deg; ++j) c.basis1.push_back(monomial_label(j, ""));
  c.domain1 = static_cast<std::size_t>(dom_deg) + 1;
  c.d = RatMatrix(c.domain1, c.dim0());
  Poly ds = sigma.derivative();
  for (int i = 0; i <= degree; ++i) {
    Poly a = Poly::monomial(i) * sigma, p = Poly::monomial(i) * ds;
    for (int j = 0; j <= a.degree(); ++j) c.d(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = a.coeff(j);
    for (int j = 0; j <= p.degree(); ++j)
      c.d(static_cast<std::size_t>(j), D + static_cast<std::size_t>(i)) = p.coeff(j);
  }
  const std::size_t dim0 = c.dim0();
  // [b + p∂, c + q∂] = (p c' − q b') + (p q' − q p')∂
  c.bracket0 = [degree, dim0, D](std::size_t i, std::size_t j) -> std::optional<RatVector> {
    RatVector z = zero_vector(dim0);
    bool vi = i >= D, vj = j >= D;
    int n = static_cast<int>(vi ? i - D : i), m = static_cast<int>(vj ? j - D : j);
    if (!vi && !vj) return z;
    int k = n + m - 1;
    Rational coef = vi && vj ? Rational(m - n) : vi ? Rational(m) : Rational(-n);
    if (coef == 0) return z;
    if (k > degree) return std::nullopt;
    std::size_t at = static_cast<std::size_t>(k) + (vi && vj ? D : 0);
    z[at] = coef;
    return z;
  };
  std::vector<RatMatrix> cocone;
  for (std::size_t i = 0; i < dim0; ++i) {
    RatMatrix m(c.codomain1(), c.domain1);
    bool v = i >= D;
    std::size_t shift = v ? i - D : i;
    for (std::size_t a = 0; a < c.domain1; ++a) {
      if (!v) m(shift + a, a) = 1;
      else if (a >= 1) m(shift + a - 1, a) = Rational(static_cast<long>(a));
    }
    cocone.push_back(std::move(m));
  }
  c.candidates.push_back({"cocone bracket", std::move(cocone)});
  return c;
}

TwoTermComplex zero_two_term_complex() {
  TwoTermComplex c;
  c.name = "zero complex";
  c.d = RatMatrix(0, 0);
  c.bracket0 = [](std::size_t, std::size_t) -> std::optional<RatVector> { return RatVector{}; };
  return c;
}

}  // namespace dk
