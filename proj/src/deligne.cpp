#include "dk/deligne.hpp"

#include "dk/error.hpp"

namespace dk {

RatVector mc_residual(const TensorDGLA& t, const RatVector& x) {
  RatVector r = t.d(1, x);
  add_scaled(r, ratio(1, 2), t.bracket(1, x, 1, x));
  return r;
}

bool mc_check(const TensorDGLA& t, const RatVector& x) { return is_zero(mc_residual(t, x)); }

RatVector gauge_act(const TensorDGLA& t, const RatVector& a, const RatVector& x) {
  RatVector term = t.bracket(0, a, 1, x) - t.d(0, a);
  RatVector out = x;
  // term_n = ad(a)^n(...)/(n+1)!
  for (int n = 0; n < t.ring().nilpotency() && !is_zero(term); ++n) {
    out += term;
    term = ratio(1, n + 2) * t.bracket(0, a, 1, term);
  }
  return out;
}

RatVector gauge_compose(const TensorDGLA& t, const RatVector& a, const RatVector& b) { return bch(t, a, b); }

RatMatrix stabilizer_map(const TensorDGLA& t, const RatVector& x) {
  std::size_t n = t.dim(-1);
  RatMatrix m(t.dim(0), n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector nu = t.zero(-1);
    nu[j] = 1;
    m.set_column(j, t.d(-1, nu) + t.bracket(1, x, -1, nu));
  }
  return m;
}

MorphismVerdict morphism_equal(const TensorDGLA& t, const RatVector& a, const RatVector& b,
                               const RatVector& x) {
  if (!mc_check(t, x)) throw PreconditionError("base point is not a Maurer-Cartan element");
  if (gauge_act(t, a, x) != gauge_act(t, b, x))
    throw PreconditionError("the two gauge elements do not reach the same target");
  RatVector c = bch(t, -b, a);
  MorphismVerdict v;
  if (is_zero(c)) {
    v.equal = true;
    v.nu = t.zero(-1);
    return v;
  }
  if (t.dim(-1) == 0) return v;
  auto nu = solve(stabilizer_map(t, x), c);
  if (nu) {
    v.equal = true;
    v.nu = std::move(nu);
  }
  return v;
}

FirstOrderClasses def_over_dual_numbers(const DGLieAlgebra& l) {
  auto eps = dual_numbers();
  TensorDGLA t(l, eps);
  FirstOrderClasses out;
  std::size_t n1 = t.dim(1);
  // MC over K[ε] is linear: residual of x⊗ε is dx⊗ε
  RatMatrix mc(t.dim(2), n1);
  for (std::size_t j = 0; j < n1; ++j) {
    RatVector x = t.zero(1);
    x[j] = 1;
    mc.set_column(j, mc_residual(t, x));
  }
  RatMatrix cycles = kernel_basis(mc);
  out.cycle_dim = cycles.cols();
  RatMatrix orbit(n1, t.dim(0));
  for (std::size_t j = 0; j < t.dim(0); ++j) {
    RatVector a = t.zero(0);
    a[j] = 1;
    orbit.set_column(j, gauge_act(t, a, t.zero(1)));
  }
  out.orbit_dim = rank(orbit);
  out.dimension = out.cycle_dim - out.orbit_dim;
  // representatives: cycles independent modulo the orbit directions
  RatMatrix both = orbit.hstack(cycles);
  auto cols = independent_columns(both);
  std::vector<RatVector> reps;
  for (auto c : cols)
    if (c >= orbit.cols()) reps.push_back(both.column(c));
  out.representatives = RatMatrix::from_columns(n1, reps);
  return out;
}

RatMatrix tangent_space(const DGLieAlgebra& l) {
  auto h = cohomology(l.complex());
  const auto* d = h.degree(1);
  if (!d) return RatMatrix(l.dim(1), 0);
  return d->representatives;
}

std::vector<ObstructionReport> lift_order_by_order(const TensorDGLA& t, const RatVector& x1) {
  const ArtinLocalAlgebra& a = t.ring();
  const DGLieAlgebra& l = t.base();
  RatVector x = t.truncate(1, x1, 1);
  {
    RatVector r1 = t.truncate(2, mc_residual(t, x), 1);
    if (!is_zero(r1)) throw PreconditionError("first-order element is not Maurer-Cartan modulo m^2");
  }
  auto h = cohomology(l.complex());
  std::vector<ObstructionReport> out;
  for (int k = 2; k < a.nilpotency(); ++k) {
    ObstructionReport rep;
    rep.order = k;
    rep.residual = t.truncate(2, mc_residual(t, x), k);
    rep.residual_is_cocycle = is_zero(t.d(2, rep.residual));
    rep.correction = t.zero(1);
    bool ok = true;
    for (std::size_t al = 0; al < a.dim(); ++al) {
      if (a.order(al) != k) continue;
      RatVector r = t.coefficient(2, rep.residual, al);
      if (is_zero(r)) continue;
      auto pre = h.solve_membership(2, -r);
      if (pre) {
        for (std::size_t i = 0; i < pre->size(); ++i) rep.correction[t.index(i, al)] = (*pre)[i];
      } else {
        ok = false;
        rep.obstruction.emplace_back(al, h.class_of(2, r));
      }
    }
    if (!ok) {
      rep.lifted = false;
      rep.correction = t.zero(1);
      rep.solution = x;
      out.push_back(std::move(rep));
      break;
    }
    x += rep.correction;
    rep.lifted = true;
    rep.solution = x;
    if (!is_zero(t.truncate(2, mc_residual(t, x), k)))
      throw Error("internal: corrected element fails Maurer-Cartan at order " + std::to_string(k));
    out.push_back(std::move(rep));
  }
  return out;
}

// ---------------------------------------------------------------------------

ModuleOverArtin::ModuleOverArtin(const HomComplexDGLA& hom, const ArtinLocalAlgebra& a) : hom_(&hom), a_(&a) {}

std::size_t ModuleOverArtin::dim() const { return hom_->total_dim() * ring_dim(); }

std::size_t ModuleOverArtin::offset(int k) const { return hom_->total_offset(k) * ring_dim(); }

RatMatrix ModuleOverArtin::operator_of(int n, const RatVector& f) const {
  std::size_t m = a_->dim(), ra = ring_dim();
  std::size_t hd = hom_->algebra().dim(n);
  RatMatrix op(dim(), dim());
  for (std::size_t al = 0; al < m; ++al) {
    RatVector fa(hd);
    bool any = false;
    for (std::size_t i = 0; i < hd; ++i) {
      fa[i] = f[i * m + al];
      if (!is_zero(fa[i])) any = true;
    }
    if (!any) continue;
    RatMatrix tot = hom_->total_matrix(n, fa);
    for (std::size_t r = 0; r < tot.rows(); ++r)
      for (std::size_t c = 0; c < tot.cols(); ++c) {
        if (is_zero(tot(r, c))) continue;
        // (f ⊗ m_α)(e_c ⊗ b): b = 1 → m_α, b = m_β → m_α m_β
        op(r * ra + 1 + al, c * ra) += tot(r, c);
        for (std::size_t be = 0; be < m; ++be) {
          int g = a_->product(al, be);
          if (g >= 0) op(r * ra + 1 + static_cast<std::size_t>(g), c * ra + 1 + be) += tot(r, c);
        }
      }
  }
  return op;
}

RatMatrix ModuleOverArtin::differential() const {
  RatMatrix d = hom_->total_differential();
  std::size_t ra = ring_dim();
  RatMatrix op(dim(), dim());
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (!is_zero(d(r, c)))
        for (std::size_t b = 0; b < ra; ++b) op(r * ra + b, c * ra + b) = d(r, c);
  return op;
}

RatVector ModuleOverArtin::constant(int k, const RatVector& v) const {
  RatVector out = zero_vector(dim());
  std::size_t base = hom_->total_offset(k);
  for (std::size_t i = 0; i < v.size(); ++i) out[(base + i) * ring_dim()] = v[i];
  return out;
}

RatVector ModuleOverArtin::from_maximal(int k, const RatVector& x) const {
  RatVector out = zero_vector(dim());
  std::size_t base = hom_->total_offset(k), m = a_->dim();
  std::size_t n = hom_->source().dim(k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t al = 0; al < m; ++al) out[(base + i) * ring_dim() + 1 + al] = x[i * m + al];
  return out;
}

RatVector ModuleOverArtin::component(int k, const RatVector& v) const {
  std::size_t n = hom_->source().dim(k) * ring_dim();
  return RatVector(v.begin() + static_cast<long>(offset(k)), v.begin() + static_cast<long>(offset(k) + n));
}

RatMatrix ModuleOverArtin::block(int l, int k, const RatMatrix& op) const {
  return op.block(offset(l), offset(k), hom_->source().dim(l) * ring_dim(), hom_->source().dim(k) * ring_dim());
}

RatMatrix nilpotent_exp(const RatMatrix& m) {
  RatMatrix out = RatMatrix::identity(m.rows()), term = RatMatrix::identity(m.rows());
  for (std::size_t k = 1; k <= m.rows() + 1; ++k) {
    term = ratio(1, static_cast<long>(k)) * (term * m);
    if (term.is_zero()) return out;
    out = out + term;
  }
  if (!term.is_zero()) throw PreconditionError("matrix is not nilpotent");
  return out;
}

DeformationPresentation materialize_deformation(const CoconeDGLA& c, const TensorDGLA& t, const RatVector& ut) {
  if (!mc_check(t, ut)) throw PreconditionError("(u,t) is not a Maurer-Cartan element of the cocone");
  const ArtinLocalAlgebra& a = t.ring();
  const HomComplexDGLA& hom = *c.base().hom;
  const GradedComplex& e = hom.source();
  ModuleOverArtin mod(hom, a);
  std::size_t m = a.dim();

  // split (u,t): each monomial coefficient of ut is an element of M^1 = L^1 ⊕ E^0
  std::size_t lh = hom.algebra().dim(1);
  RatVector u_hom = zero_vector(lh * m);
  RatVector t_part = zero_vector(e.dim(0) * m);
  for (std::size_t al = 0; al < m; ++al) {
    RatVector coef = t.coefficient(1, ut, al);
    RatVector uh = c.base().to_hom(1, c.l_part(1, coef));
    RatVector te = c.e_part(1, coef);
    for (std::size_t i = 0; i < lh; ++i) u_hom[i * m + al] = uh[i];
    for (std::size_t i = 0; i < te.size(); ++i) t_part[i * m + al] = te[i];
  }

  DeformationPresentation p;
  p.deformed_differential = mod.differential() + mod.operator_of(1, u_hom);
  p.squares_to_zero = (p.deformed_differential * p.deformed_differential).is_zero();

  std::size_t ad = mod.ring_dim();
  RatMatrix dm1 = mod.block(0, -1, p.deformed_differential);
  std::size_t r = rank(dm1);
  p.fiber_dim = e.dim(0) - rank(e.d(-1));
  p.module_dim = e.dim(0) * ad - r;
  p.flat = p.module_dim == p.fiber_dim * ad;
  auto idx = independent_columns(dm1);
  std::vector<RatVector> cols;
  for (auto j : idx) cols.push_back(dm1.column(j));
  p.image = RatMatrix::from_columns(dm1.rows(), cols);

  p.exact = true;
  if (!e.empty()) {
    auto h = cohomology(e);
    for (int i = e.lo(); i < 0; ++i) {
      if (h.dim(i) != 0) continue;
      RatMatrix in = mod.block(i, i - 1, p.deformed_differential);
      RatMatrix outm = mod.block(i + 1, i, p.deformed_differential);
      std::size_t di = e.dim(i) * ad;
      if (di - rank(outm) - rank(in) != 0) p.exact = false;
    }
  }

  p.section = mod.component(0, mod.constant(0, c.section()) + mod.from_maximal(0, t_part));
  RatMatrix d0 = mod.block(1, 0, p.deformed_differential);
  p.section_is_cycle = is_zero(d0 * p.section);
  return p;
}

namespace {

// L-part (via the inclusion into Hom) and E-part of an element of C^n ⊗ m.
std::pair<RatVector, RatVector> split_cocone(const CoconeDGLA& c, const TensorDGLA& t, int n, const RatVector& v) {
  const HomComplexDGLA& hom = *c.base().hom;
  std::size_t m = t.ring().dim();
  std::size_t lh = hom.algebra().dim(n), le = c.e_dim(n);
  RatVector lp = zero_vector(lh * m), ep = zero_vector(le * m);
  for (std::size_t al = 0; al < m; ++al) {
    RatVector coef = t.coefficient(n, v, al);
    RatVector uh = c.base().to_hom(n, c.l_part(n, coef));
    RatVector te = c.e_part(n, coef);
    for (std::size_t i = 0; i < lh; ++i) lp[i * m + al] = uh[i];
    for (std::size_t i = 0; i < le; ++i) ep[i * m + al] = te[i];
  }
  return {lp, ep};
}

}  // namespace

GaugeAffineCheck check_gauge_affine(const CoconeDGLA& c, const TensorDGLA& t, const RatVector& ut,
                                    const RatVector& g) {
  const ArtinLocalAlgebra& a = t.ring();
  const HomComplexDGLA& hom = *c.base().hom;
  ModuleOverArtin mod(hom, a);
  RatVector ut2 = gauge_act(t, g, ut);
  auto [u, tt] = split_cocone(c, t, 1, ut);
  auto [u2, tt2] = split_cocone(c, t, 1, ut2);
  auto [f, b0] = split_cocone(c, t, 0, g);
  (void)b0;

  GaugeAffineCheck out;
  RatMatrix F = mod.operator_of(0, f);
  RatMatrix ef = nilpotent_exp(F), emf = nilpotent_exp(Rational(-1) * F);
  RatMatrix D = mod.differential() + mod.operator_of(1, u);
  RatMatrix D2 = mod.differential() + mod.operator_of(1, u2);
  out.conjugation = (D2 == ef * D * emf);

  RatVector st = mod.constant(0, c.section()) + mod.from_maximal(0, tt);
  RatVector st2 = mod.constant(0, c.section()) + mod.from_maximal(0, tt2);
  RatVector lhs = mod.component(0, st2 - ef * st);
  // columns of (∂+u') restricted to E^{-1} ⊗ m
  const GradedComplex& e = hom.source();
  std::size_t m = a.dim(), ra = mod.ring_dim();
  RatMatrix blk = mod.block(0, -1, D2);
  RatMatrix restricted(blk.rows(), e.dim(-1) * m);
  for (std::size_t i = 0; i < e.dim(-1); ++i)
    for (std::size_t al = 0; al < m; ++al) restricted.set_column(i * m + al, blk.column(i * ra + 1 + al));
  if (is_zero(lhs)) {
    out.membership = true;
    out.witness = zero_vector(restricted.cols());
  } else if (restricted.cols() > 0) {
    out.witness = solve(restricted, lhs);
    out.membership = out.witness.has_value();
  }
  return out;
}

bool same_section_class(const DeformationPresentation& p, const RatVector& v, const RatVector& w) {
  RatVector diff = v - w;
  if (is_zero(diff)) return true;
  if (p.image.cols() == 0) return false;
  return solve(p.image, diff).has_value();
}

}  // namespace dk
