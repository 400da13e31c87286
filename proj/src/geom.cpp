#include "dk/geom.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "dk/error.hpp"

namespace dk {

namespace {

std::size_t open_index(P1Open u) { return static_cast<std::size_t>(u); }

const char* open_name(P1Open u) {
  switch (u) {
    case P1Open::U0: return "U0";
    case P1Open::U1: return "U1";
    default: return "U01";
  }
}

Laurent invert_variable(const Laurent& x) {
  Laurent r;
  for (const auto& [k, c] : x.terms()) r = r + Laurent::monomial(-k, c);
  return r;
}

Laurent from_poly(const Poly& p) { return Laurent::from_poly(p); }

}  // namespace

// ---------------------------------------------------------------------------

P1Sheaf P1Sheaf::locally_free(std::string name, LaurentMatrix transition) {
  P1Sheaf s;
  s.name_ = std::move(name);
  for (const auto& row : transition)
    if (row.size() != transition.size()) throw PreconditionError("transition matrix is not square");
  s.transition_ = std::move(transition);
  if (!s.transition_invertible())
    throw PreconditionError("transition of " + s.name_ + " is not invertible over K[t, 1/t]");
  return s;
}

P1Sheaf P1Sheaf::line_bundle(int d) {
  return locally_free("O(" + std::to_string(d) + ")", {{Laurent::monomial(d)}});
}

P1Sheaf P1Sheaf::tangent() { return locally_free("Theta", {{Laurent::monomial(2, Rational(-1))}}); }

P1Sheaf P1Sheaf::principal_parts(int d) {
  return locally_free("P(O(" + std::to_string(d) + "))",
                      {{Laurent::monomial(0), Laurent::monomial(1, Rational(d))},
                       {Laurent(), Laurent::monomial(2, Rational(-1))}});
}

P1Sheaf P1Sheaf::torsion(std::string name, const Poly& f0, int d) {
  if (f0.is_zero()) throw PreconditionError("the zero section does not cut out a divisor");
  if (f0.degree() > d)
    throw PreconditionError("section " + f0.to_string() + " has degree above " + std::to_string(d));
  P1Sheaf s;
  s.name_ = std::move(name);
  s.transition_ = {{Laurent::monomial(d)}};
  s.torsion_ = true;
  s.twist_ = d;
  s.rel_[0] = f0;
  s.rel_[1] = f0.reversed(d);
  std::vector<Rational> h(f0.coeffs().begin() + f0.valuation(), f0.coeffs().end());
  s.rel_[2] = Poly(std::move(h));
  return s;
}

const Poly& P1Sheaf::relation(P1Open u) const { return rel_[open_index(u)]; }

bool P1Sheaf::transition_invertible() const {
  // Laurent determinant by cofactor expansion (ranks here are at most 2 or 3)
  std::function<Laurent(const LaurentMatrix&)> det = [&](const LaurentMatrix& m) -> Laurent {
    if (m.empty()) return Laurent::monomial(0);
    if (m.size() == 1) return m[0][0];
    Laurent r;
    for (std::size_t j = 0; j < m.size(); ++j) {
      LaurentMatrix minor;
      for (std::size_t i = 1; i < m.size(); ++i) {
        std::vector<Laurent> row;
        for (std::size_t k = 0; k < m.size(); ++k)
          if (k != j) row.push_back(m[i][k]);
        minor.push_back(std::move(row));
      }
      Laurent term = m[0][j] * det(minor);
      r = j % 2 == 0 ? r + term : r - term;
    }
    return r;
  };
  Laurent d = det(transition_);
  return d.terms().size() == 1;
}

// ---------------------------------------------------------------------------

P1Sections::P1Sections(const P1Sheaf& sheaf, std::vector<int> n0, std::vector<int> n1)
    : sheaf_(sheaf), n0_(std::move(n0)), n1_(std::move(n1)) {
  if (sheaf_.is_torsion()) {
    n0_.clear();
    n1_.clear();
    const Poly& h = sheaf_.relation(P1Open::U01);
    if (h.degree() >= 1) t_inverse_ = poly_inverse_mod(Poly::monomial(1), h);
  } else {
    std::size_t r = sheaf_.rank();
    if (n0_.size() != r || n1_.size() != r) throw PreconditionError("truncation has wrong rank");
    const auto& m = sheaf_.transition();
    lo_.assign(r, 0);
    hi_ = n0_;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (m[i][j].is_zero()) continue;
        lo_[i] = std::min(lo_[i], m[i][j].low() - n1_[j]);
        hi_[i] = std::max(hi_[i], m[i][j].high());
      }
  }
  res0_ = RatMatrix(dim(P1Open::U01), dim(P1Open::U0));
  for (std::size_t k = 0; k < dim(P1Open::U0); ++k)
    res0_.set_column(k, encode(P1Open::U01, basis(P1Open::U0, k)));
  res1_ = RatMatrix(dim(P1Open::U01), dim(P1Open::U1));
  const auto& m = sheaf_.transition();
  for (std::size_t k = 0; k < dim(P1Open::U1); ++k) {
    auto comps = basis(P1Open::U1, k);
    std::vector<Laurent> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) out[i] = out[i] + m[i][j] * invert_variable(comps[j]);
    res1_.set_column(k, encode(P1Open::U01, out));
  }
}

std::size_t P1Sections::ring_dim(P1Open u) const {
  int d = sheaf_.relation(u).degree();
  return d > 0 ? static_cast<std::size_t>(d) : 0;
}

std::size_t P1Sections::dim(P1Open u) const {
  if (sheaf_.is_torsion()) return ring_dim(u);
  std::size_t n = 0;
  for (std::size_t i = 0; i < sheaf_.rank(); ++i) {
    int top = u == P1Open::U0 ? n0_[i] : u == P1Open::U1 ? n1_[i] : hi_[i];
    int bottom = u == P1Open::U01 ? lo_[i] : 0;
    n += static_cast<std::size_t>(top - bottom + 1);
  }
  return n;
}

const RatMatrix& P1Sections::restriction(P1Open from) const {
  if (from == P1Open::U01) throw PreconditionError("restriction leaves a chart");
  return from == P1Open::U0 ? res0_ : res1_;
}

Poly P1Sections::reduce(P1Open u, const Laurent& x) const {
  const Poly& rel = sheaf_.relation(u);
  if (rel.degree() <= 0) return Poly();
  Poly acc;
  Poly inv_power = Poly::constant(1);
  int most_negative = std::min(0, x.low());
  if (most_negative < 0 && u != P1Open::U01)
    throw PreconditionError("negative power of the chart variable on " + std::string(open_name(u)));
  for (int k = -1; k >= most_negative; --k) {
    inv_power = poly_mod(inv_power * t_inverse_, rel);
    acc = acc + x.coeff(k) * inv_power;
  }
  for (const auto& [k, c] : x.terms())
    if (k >= 0) acc = acc + Poly::monomial(k, c);
  return poly_mod(acc, rel);
}

RatVector P1Sections::encode(P1Open u, const std::vector<Laurent>& comps) const {
  if (sheaf_.is_torsion()) {
    Poly r = reduce(u, comps.at(0));
    RatVector v = zero_vector(ring_dim(u));
    for (int k = 0; k <= r.degree(); ++k) v[static_cast<std::size_t>(k)] = r.coeff(k);
    return v;
  }
  RatVector v = zero_vector(dim(u));
  std::size_t off = 0;
  for (std::size_t i = 0; i < sheaf_.rank(); ++i) {
    int top = u == P1Open::U0 ? n0_[i] : u == P1Open::U1 ? n1_[i] : hi_[i];
    int bottom = u == P1Open::U01 ? lo_[i] : 0;
    for (const auto& [k, c] : comps.at(i).terms()) {
      if (k < bottom || k > top)
        throw WindowOverflow(sheaf_.name() + ": degree " + std::to_string(k) + " leaves the window [" +
                                 std::to_string(bottom) + ", " + std::to_string(top) + "] on " +
                                 open_name(u),
                             std::abs(k) + 1);
      v[off + static_cast<std::size_t>(k - bottom)] = c;
    }
    off += static_cast<std::size_t>(top - bottom + 1);
  }
  return v;
}

std::vector<Laurent> P1Sections::basis(P1Open u, std::size_t k) const {
  if (sheaf_.is_torsion()) return {Laurent::monomial(static_cast<int>(k))};
  std::vector<Laurent> out(sheaf_.rank());
  for (std::size_t i = 0; i < sheaf_.rank(); ++i) {
    int top = u == P1Open::U0 ? n0_[i] : u == P1Open::U1 ? n1_[i] : hi_[i];
    int bottom = u == P1Open::U01 ? lo_[i] : 0;
    auto size = static_cast<std::size_t>(top - bottom + 1);
    if (k < size) {
      out[i] = Laurent::monomial(bottom + static_cast<int>(k));
      return out;
    }
    k -= size;
  }
  throw PreconditionError("basis index out of range");
}

std::vector<Laurent> P1Sections::decode(P1Open u, const RatVector& v) const {
  std::vector<Laurent> out(sheaf_.is_torsion() ? 1 : sheaf_.rank());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    auto b = basis(u, k);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + v[k] * b[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

void P1Diagram::add_sheaf(P1Sheaf s, std::vector<std::string> atoms) {
  for (const auto& x : sheaves_)
    if (x.name() == s.name()) throw PreconditionError("duplicate sheaf " + s.name());
  if (atoms.empty())
    for (std::size_t i = 0; i < s.rank(); ++i) atoms.push_back(s.name() + "#" + std::to_string(i));
  if (atoms.size() != s.rank()) throw PreconditionError("sheaf " + s.name() + " needs one atom per summand");
  atoms_[s.name()] = std::move(atoms);
  sheaves_.push_back(std::move(s));
  window_ = -1;
}

void P1Diagram::add_map(P1Map m) {
  const P1Sheaf& src = sheaf(m.source);
  const P1Sheaf& tgt = sheaf(m.target);
  for (const PolyMatrix* a : {&m.on_u0, &m.on_u1}) {
    if (a->size() != tgt.rank()) throw PreconditionError("map " + m.name + " has wrong row count");
    for (const auto& row : *a)
      if (row.size() != src.rank()) throw PreconditionError("map " + m.name + " has wrong column count");
  }
  maps_.push_back(std::move(m));
  window_ = -1;
}

const P1Sheaf& P1Diagram::sheaf(const std::string& name) const {
  for (const auto& s : sheaves_)
    if (s.name() == name) return s;
  throw PreconditionError("unknown sheaf " + name);
}

const P1Map& P1Diagram::map(const std::string& name) const {
  for (const auto& m : maps_)
    if (m.name == name) return m;
  throw PreconditionError("unknown map " + name);
}

const P1Sections& P1Diagram::sections(const std::string& sheaf) const {
  auto it = sections_.find(sheaf);
  if (it == sections_.end()) throw PreconditionError("no truncation chosen for " + sheaf);
  return it->second;
}

RatMatrix P1Diagram::build_matrix(const P1Map& m, P1Open u) const {
  const P1Sections& s = sections(m.source);
  const P1Sections& t = sections(m.target);
  const PolyMatrix& phi = u == P1Open::U1 ? m.on_u1 : m.on_u0;
  RatMatrix out(t.dim(u), s.dim(u));
  for (std::size_t k = 0; k < s.dim(u); ++k) {
    auto comps = s.basis(u, k);
    std::vector<Laurent> img(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
      for (std::size_t j = 0; j < comps.size(); ++j)
        if (!phi[i][j].is_zero()) img[i] = img[i] + from_poly(phi[i][j]) * comps[j];
    out.set_column(k, t.encode(u, img));
  }
  return out;
}

void P1Diagram::set_window(int n) {
  constexpr int max_growth = 64;
  std::map<std::string, int> grow;
  // lower bounds from entry degrees, relaxed to a fixed point
  for (int pass = 0; pass < max_growth; ++pass) {
    bool changed = false;
    for (const auto& m : maps_) {
      if (sheaf(m.target).is_torsion() || sheaf(m.source).is_torsion()) continue;
      const auto& sa = atoms_.at(m.source);
      const auto& ta = atoms_.at(m.target);
      for (std::size_t i = 0; i < ta.size(); ++i)
        for (std::size_t j = 0; j < sa.size(); ++j) {
          int deg = std::max(m.on_u0[i][j].degree(), m.on_u1[i][j].degree());
          if (deg < 0) continue;
          int need = std::min(grow[sa[j]] + deg, max_growth);
          if (grow[ta[i]] < need) {
            grow[ta[i]] = need;
            changed = true;
          }
        }
    }
    if (!changed) break;
  }
  // transitions can still push images out of the overlap window; grow the
  // target's summands and start over
  while (true) {
    sections_.clear();
    matrices_.clear();
    const P1Sheaf* overflowed = nullptr;
    std::string reason;
    for (const auto& sh : sheaves_) {
      std::vector<const P1Map*> incoming;
      for (const auto& m : maps_) {
        if (m.target != sh.name()) continue;
        if (m.source != sh.name() && !sections_.count(m.source))
          throw PreconditionError("map " + m.name + " enters " + sh.name() +
                                  " before its source is truncated");
        incoming.push_back(&m);
      }
      const auto& atoms = atoms_.at(sh.name());
      std::vector<int> n0(sh.rank()), n1(sh.rank());
      for (std::size_t i = 0; i < sh.rank(); ++i) n0[i] = n1[i] = n + (sh.is_torsion() ? 0 : grow[atoms[i]]);
      sections_.emplace(sh.name(), P1Sections(sh, n0, n1));
      try {
        for (const P1Map* m : incoming)
          for (P1Open u : {P1Open::U0, P1Open::U1, P1Open::U01})
            matrices_[m->name][static_cast<int>(u)] = build_matrix(*m, u);
      } catch (const WindowOverflow& e) {
        overflowed = &sh;
        reason = e.what();
        break;
      }
    }
    if (!overflowed) break;
    bool capped = overflowed->is_torsion();
    for (const auto& a : atoms_.at(overflowed->name()))
      if (++grow[a] > max_growth) capped = true;
    if (capped) {
      sections_.clear();
      matrices_.clear();
      window_ = -1;
      throw WindowOverflow("no admissible truncation: " + reason, n + max_growth);
    }
  }
  window_ = n;
}

RatMatrix P1Diagram::matrix(const std::string& map, P1Open u) const {
  auto it = matrices_.find(map);
  if (it == matrices_.end()) throw PreconditionError("map " + map + " has no matrices; set a window");
  return it->second.at(static_cast<int>(u));
}

void P1Diagram::check_compatible(const std::string& name) const {
  const P1Map& m = map(name);
  const P1Sections& s = sections(m.source);
  const P1Sections& t = sections(m.target);
  for (P1Open u : {P1Open::U0, P1Open::U1})
    if (!(t.restriction(u) * matrix(name, u) == matrix(name, P1Open::U01) * s.restriction(u)))
      throw ComplexError("map " + name + " does not commute with restriction from " + open_name(u), 0);
}

// ---------------------------------------------------------------------------

namespace {

P1Open open_of(const ChartTuple& set) {
  if (set.size() == 2) return P1Open::U01;
  return set.at(0) == 0 ? P1Open::U0 : P1Open::U1;
}

Rational scale_of(const P1Complex& c, std::size_t k) {
  return k < c.scale.size() ? c.scale[k] : Rational(1);
}

}  // namespace

ComplexPresheaf p1_presheaf(const P1Diagram& d, const P1Complex& c) {
  ComplexPresheaf f;
  f.charts = 2;
  f.sections = [&d, c](const ChartTuple& set) {
    P1Open u = open_of(set);
    std::vector<std::size_t> dims;
    std::vector<RatMatrix> diffs;
    for (const auto& t : c.terms) dims.push_back(d.sections(t).dim(u));
    for (std::size_t k = 0; k + 1 < c.terms.size(); ++k) {
      const std::string& name = k < c.diffs.size() ? c.diffs[k] : std::string();
      diffs.push_back(name.empty() ? RatMatrix(dims[k + 1], dims[k])
                                   : scale_of(c, k) * d.matrix(name, u));
    }
    return GradedComplex(c.lo, dims, diffs);
  };
  f.restriction = [&d, c](const ChartTuple& from, const ChartTuple& to) {
    if (open_of(to) != P1Open::U01) throw PreconditionError("restriction into a chart");
    ChainMap m{c.lo, {}};
    for (const auto& t : c.terms) m.maps.push_back(d.sections(t).restriction(open_of(from)));
    return m;
  };
  return f;
}

Hypercohomology hypercohomology(const P1Diagram& d, const P1Complex& c) {
  Hypercohomology h;
  h.cech = build_cech_complex(p1_presheaf(d, c), Nerve::Ordered, 2);
  h.total = total_cochain(h.cech, true);
  h.cohomology = cohomology(h.total.complex);
  return h;
}

ChainMap hypercohomology_map(const P1Diagram& d, const P1Complex& src, const Hypercohomology& hs,
                             const P1Complex& tgt, const Hypercohomology& ht,
                             const P1Morphism& f) {
  auto degree_map = [&](P1Open u, int q) {
    std::size_t rows = 0, cols = 0;
    int ks = q - src.lo, kt = q - tgt.lo;
    bool in_s = ks >= 0 && ks < static_cast<int>(src.terms.size());
    bool in_t = kt >= 0 && kt < static_cast<int>(tgt.terms.size());
    if (in_s) cols = d.sections(src.terms[static_cast<std::size_t>(ks)]).dim(u);
    if (in_t) rows = d.sections(tgt.terms[static_cast<std::size_t>(kt)]).dim(u);
    int kf = q - f.lo;
    if (!in_s || !in_t || kf < 0 || kf >= static_cast<int>(f.maps.size()) ||
        f.maps[static_cast<std::size_t>(kf)].empty())
      return RatMatrix(rows, cols);
    return d.matrix(f.maps[static_cast<std::size_t>(kf)], u);
  };
  int lo = std::min(src.lo, tgt.lo);
  int hi = std::max(src.lo + static_cast<int>(src.terms.size()),
                    tgt.lo + static_cast<int>(tgt.terms.size()));
  ChainMap level0{lo, {}}, level1{lo, {}};
  for (int q = lo; q <= hi; ++q) {
    RatMatrix a = degree_map(P1Open::U0, q), b = degree_map(P1Open::U1, q);
    RatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    level0.maps.push_back(std::move(m));
    level1.maps.push_back(degree_map(P1Open::U01, q));
  }
  return total_cochain_map(hs.total, ht.total, {level0, level1});
}

// ---------------------------------------------------------------------------

StabilizationCertificate stabilize(int start, int max_window,
                                   const std::function<std::vector<std::size_t>(int)>& dims) {
  std::deque<std::optional<std::vector<std::size_t>>> rows;  // stable references
  auto at = [&](int n) -> const std::optional<std::vector<std::size_t>>& {
    auto i = static_cast<std::size_t>(n - start);
    while (rows.size() <= i) {
      int m = start + static_cast<int>(rows.size());
      try {
        rows.push_back(dims(m));
      } catch (const WindowOverflow&) {
        rows.push_back(std::nullopt);
      }
    }
    return rows[i];
  };
  for (int n = start; n + 2 <= max_window; ++n) {
    const auto &a = at(n), &b = at(n + 1), &c = at(n + 2);
    if (a && b && c && *a == *b && *b == *c) {
      StabilizationCertificate cert;
      cert.window = n;
      cert.dims = {*a, *b, *c};
      cert.stable = true;
      return cert;
    }
  }
  throw StabilizationError("dimensions did not stabilize by window " + std::to_string(max_window),
                           max_window + 8);
}

int default_window(int max_abs_degree) { return 8 + max_abs_degree; }

LineBundleCohomology line_bundle_cohomology(int d, std::optional<int> window) {
  LineBundleCohomology out;
  out.d = d;
  int start = window.value_or(default_window(std::abs(d)));
  out.certificate = stabilize(start, start + 24, [d](int n) {
    P1Diagram g;
    g.add_sheaf(P1Sheaf::line_bundle(d));
    g.set_window(n);
    auto h = hypercohomology(g, P1Complex{0, {"O(" + std::to_string(d) + ")"}, {}, {}});
    return std::vector<std::size_t>{h.dim(0), h.dim(1)};
  });
  out.h0 = out.certificate.dims[0][0];
  out.h1 = out.certificate.dims[0][1];
  return out;
}

std::pair<std::size_t, std::size_t> line_bundle_oracle(int d) {
  // H⁰: monomials t^k regular on both charts (0 ≤ k ≤ d); H¹: Laurent
  // monomials hit by neither chart (d < k < 0).
  std::size_t h0 = 0, h1 = 0;
  for (int k = 0; k <= d; ++k) ++h0;
  for (int k = d + 1; k < 0; ++k) ++h1;
  return {h0, h1};
}

PolyMatrix evaluation_matrix(const Poly& f) { return {{f, f.derivative()}}; }

P1Diagram p1_triple_diagram(int d, const Poly& sigma) {
  if (!sigma.is_zero() && sigma.degree() > d)
    throw PreconditionError("sigma = " + sigma.to_string() + " is not a section of O(" +
                            std::to_string(d) + ")");
  Poly f0 = sigma;
  Poly f1 = sigma.is_zero() ? Poly() : sigma.reversed(d);
  auto one = Poly::constant(1);
  P1Diagram g;
  auto rename = [](P1Sheaf s, const std::string& n) {
    return P1Sheaf::locally_free(n, s.transition());
  };
  g.add_sheaf(rename(P1Sheaf::line_bundle(0), "O"));
  g.add_sheaf(rename(P1Sheaf::principal_parts(d), "P"));
  g.add_sheaf(rename(P1Sheaf::tangent(), "Theta"));
  g.add_sheaf(rename(P1Sheaf::line_bundle(d), "L"));
  if (!sigma.is_zero()) g.add_sheaf(P1Sheaf::torsion("N", f0, d));

  g.add_map({"id_O", "O", "O", {{one}}, {{one}}});
  g.add_map({"incl", "O", "P", {{one}, {Poly()}}, {{one}, {Poly()}}});
  g.add_map({"id_P", "P", "P", {{one, Poly()}, {Poly(), one}}, {{one, Poly()}, {Poly(), one}}});
  g.add_map({"anchor", "P", "Theta", {{Poly(), one}}, {{Poly(), one}}});
  g.add_map({"id_Theta", "Theta", "Theta", {{one}}, {{one}}});
  g.add_map({"sigma", "O", "L", {{f0}}, {{f1}}});
  g.add_map({"eval", "P", "L", evaluation_matrix(f0), evaluation_matrix(f1)});
  g.add_map({"id_L", "L", "L", {{one}}, {{one}}});
  if (!sigma.is_zero()) g.add_map({"gamma", "Theta", "N", {{f0.derivative()}}, {{f1.derivative()}}});
  return g;
}

// ---------------------------------------------------------------------------

AffineDivisorA1 affine_divisor_a1(const Poly& f, int window) {
  if (f.degree() < 1) throw PreconditionError("divisor equation must have positive degree");
  AffineDivisorA1 out;
  out.f = f;
  out.window = window;
  out.normal_dim = static_cast<std::size_t>(f.degree());
  Poly df = f.derivative();
  out.gamma = RatMatrix(out.normal_dim, static_cast<std::size_t>(window) + 1);
  for (int k = 0; k <= window; ++k) {
    Poly img = poly_mod(Poly::monomial(k) * df, f);
    for (int i = 0; i <= img.degree(); ++i)
      out.gamma(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = img.coeff(i);
  }
  out.gamma_rank = rank(out.gamma);
  out.t1_dim = out.normal_dim - out.gamma_rank;
  out.log_fields = kernel_basis(out.gamma);
  Poly g = poly_gcd(f, df);
  out.oracle_t1 = g.degree() > 0 ? static_cast<std::size_t>(g.degree()) : 0;
  return out;
}

TjurinaResult tjurina_number(const MPoly& f, int start_degree, int max_degree) {
  if (f.vars().size() != 2) throw PreconditionError("Tjurina numbers are computed for plane curves");
  std::vector<MPoly> gens{f, f.derivative(0), f.derivative(1)};
  TjurinaResult out;
  out.certificate = stabilize(start_degree, max_degree, [&](int D) {
    std::map<MPoly::Exponents, std::size_t> index;
    for (int a = 0; a <= D; ++a)
      for (int b = 0; a + b <= D; ++b) index.emplace(MPoly::Exponents{a, b}, index.size());
    std::vector<RatVector> cols;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      int room = D - g.total_degree();
      for (int a = 0; a <= room; ++a)
        for (int b = 0; a + b <= room; ++b) {
          RatVector v = zero_vector(index.size());
          for (const auto& [e, c] : g.terms()) v[index.at({e[0] + a, e[1] + b})] += c;
          cols.push_back(std::move(v));
        }
    }
    std::size_t r = cols.empty() ? 0 : rank(RatMatrix::from_columns(index.size(), cols));
    return std::vector<std::size_t>{index.size() - r};
  });
  out.tau = out.certificate.dims[0][0];
  return out;
}

}  // namespace dk
