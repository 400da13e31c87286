#include "dk/cosimp.hpp"

#include <algorithm>
#include <map>

#include "dk/deligne.hpp"
#include "dk/error.hpp"

namespace dk {

namespace {

std::pair<int, int> degree_range(const std::vector<GradedComplex>& cs) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& c : cs) {
    if (c.empty()) continue;
    lo = any ? std::min(lo, c.lo()) : c.lo();
    hi = any ? std::max(hi, c.hi()) : c.hi();
    any = true;
  }
  return {lo, hi};
}

std::string tuple_name(const ChartTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

ChartTuple as_set(ChartTuple t) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

std::vector<ChartTuple> nerve_tuples(std::size_t charts, Nerve nerve, std::size_t length) {
  std::vector<ChartTuple> out;
  ChartTuple cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == length) {
      out.push_back(cur);
      return;
    }
    for (std::size_t c = nerve == Nerve::Ordered ? start : 0; c < charts; ++c) {
      cur.push_back(c);
      self(self, c + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::size_t level_dim(const SemicosimplicialComplex& s, std::size_t n, int q) {
  return n < s.levels.size() ? s.levels[n].dim(q) : 0;
}

RatMatrix level_d(const SemicosimplicialComplex& s, std::size_t n, int q) {
  if (n < s.levels.size()) return s.levels[n].d(q);
  return RatMatrix(0, 0);
}

}  // namespace

RatMatrix SemicosimplicialComplex::face(std::size_t n, std::size_t i, int degree) const {
  std::size_t rows = level_dim(*this, n, degree);
  std::size_t cols = n >= 1 ? level_dim(*this, n - 1, degree) : 0;
  if (n == 0 || n >= levels.size() || n - 1 >= faces.size() || i >= faces[n - 1].size())
    return RatMatrix(rows, cols);
  return faces[n - 1][i].at(degree, rows, cols);
}

std::size_t SemicosimplicialComplex::block_offset(std::size_t n, std::size_t b, int degree) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k < b; ++k) off += blocks[n][k].dim(degree);
  return off;
}

SemicosimplicialComplex SemicosimplicialDGLA::underlying() const {
  SemicosimplicialComplex s;
  for (const auto& l : levels) s.levels.push_back(l.complex());
  s.faces = faces;
  s.tuples = tuples;
  return s;
}

void check_cosimplicial_identities(const SemicosimplicialComplex& s) {
  for (std::size_t n = 1; n < s.levels.size(); ++n)
    for (std::size_t i = 0; i < s.faces[n - 1].size(); ++i) {
      try {
        check_chain_map(s.levels[n - 1], s.levels[n], s.faces[n - 1][i]);
      } catch (const ComplexError& e) {
        throw ComplexError("face " + std::to_string(i) + " into level " + std::to_string(n) +
                               " is not a chain map: " + e.what(),
                           static_cast<int>(n));
      }
    }
  auto [lo, hi] = degree_range(s.levels);
  for (std::size_t n = 2; n < s.levels.size(); ++n)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (int q = lo; q <= hi; ++q) {
          RatMatrix lhs = s.face(n, j, q) * s.face(n - 1, i, q);
          RatMatrix rhs = s.face(n, i, q) * s.face(n - 1, j - 1, q);
          if (!(lhs == rhs))
            throw ComplexError("cosimplicial identity d_" + std::to_string(j) + " d_" +
                                   std::to_string(i) + " = d_" + std::to_string(i) + " d_" +
                                   std::to_string(j - 1) + " fails into level " +
                                   std::to_string(n) + " in degree " + std::to_string(q),
                               static_cast<int>(n));
        }
}

void check_cosimplicial_identities(const SemicosimplicialDGLA& s) {
  check_cosimplicial_identities(s.underlying());
  for (std::size_t n = 1; n < s.levels.size(); ++n)
    for (std::size_t i = 0; i < s.faces[n - 1].size(); ++i) {
      try {
        check_dgla_morphism(s.levels[n - 1], s.levels[n], s.faces[n - 1][i]);
      } catch (const ComplexError& e) {
        throw ComplexError("face " + std::to_string(i) + " into level " + std::to_string(n) +
                               " is not a DG-Lie morphism: " + e.what(),
                           static_cast<int>(n));
      }
    }
}

void check_restrictions(const ComplexPresheaf& f) {
  if (f.charts > 16) throw PreconditionError("too many charts for an exhaustive restriction check");
  std::size_t full = std::size_t{1} << f.charts;
  auto members = [&](std::size_t mask) {
    ChartTuple t;
    for (std::size_t c = 0; c < f.charts; ++c)
      if (mask >> c & 1) t.push_back(c);
    return t;
  };
  std::map<std::size_t, GradedComplex> cache;
  auto sec = [&](std::size_t mask) -> const GradedComplex& {
    auto it = cache.find(mask);
    if (it == cache.end()) it = cache.emplace(mask, f.sections(members(mask))).first;
    return it->second;
  };
  for (std::size_t a = 1; a < full; ++a)
    for (std::size_t b = a + 1; b < full; ++b) {
      if ((a & b) != a) continue;
      for (std::size_t c = b + 1; c < full; ++c) {
        if ((b & c) != b) continue;
        ChartTuple ta = members(a), tb = members(b), tc = members(c);
        ChainMap ab = f.restriction(ta, tb), bc = f.restriction(tb, tc), ac = f.restriction(ta, tc);
        auto [lo, hi] = degree_range({sec(a), sec(b), sec(c)});
        for (int q = lo; q <= hi; ++q) {
          std::size_t da = sec(a).dim(q), db = sec(b).dim(q), dc = sec(c).dim(q);
          if (!(bc.at(q, dc, db) * ab.at(q, db, da) == ac.at(q, dc, da)))
            throw ComplexError("restrictions " + tuple_name(ta) + " -> " + tuple_name(tb) + " -> " +
                                   tuple_name(tc) + " do not compose in degree " + std::to_string(q),
                               q);
        }
      }
    }
}

SemicosimplicialComplex build_cech_complex(const ComplexPresheaf& f, Nerve nerve,
                                           std::size_t levels) {
  SemicosimplicialComplex s;
  std::map<ChartTuple, GradedComplex> cache;
  auto sec = [&](const ChartTuple& set) -> const GradedComplex& {
    auto it = cache.find(set);
    if (it == cache.end()) it = cache.emplace(set, f.sections(set)).first;
    return it->second;
  };
  for (std::size_t n = 0; n < levels; ++n) {
    s.tuples.push_back(nerve_tuples(f.charts, nerve, n + 1));
    std::vector<GradedComplex> blocks;
    for (const auto& t : s.tuples.back()) blocks.push_back(sec(as_set(t)));
    s.levels.push_back(GradedComplex::direct_sum(blocks));
    s.blocks.push_back(std::move(blocks));
  }
  auto [lo, hi] = degree_range(s.levels);
  for (std::size_t n = 1; n < levels; ++n) {
    std::map<ChartTuple, std::size_t> source_index;
    for (std::size_t b = 0; b < s.tuples[n - 1].size(); ++b) source_index[s.tuples[n - 1][b]] = b;
    std::vector<ChainMap> faces;
    for (std::size_t h = 0; h <= n; ++h) {
      ChainMap face{lo, {}};
      std::vector<ChainMap> restrictions;
      std::vector<std::size_t> sources;
      std::vector<bool> degenerate;
      for (const auto& tau : s.tuples[n]) {
        ChartTuple sigma = tau;
        sigma.erase(sigma.begin() + static_cast<long>(h));
        sources.push_back(source_index.at(sigma));
        ChartTuple from = as_set(sigma), to = as_set(tau);
        degenerate.push_back(from == to);
        restrictions.push_back(from == to ? ChainMap{} : f.restriction(from, to));
      }
      for (int q = lo; q <= hi; ++q) {
        RatMatrix m(s.levels[n].dim(q), s.levels[n - 1].dim(q));
        for (std::size_t b = 0; b < s.tuples[n].size(); ++b) {
          const auto& tgt = s.blocks[n][b];
          const auto& src = s.blocks[n - 1][sources[b]];
          RatMatrix r = degenerate[b] ? RatMatrix::identity(src.dim(q))
                                      : restrictions[b].at(q, tgt.dim(q), src.dim(q));
          m.set_block(s.block_offset(n, b, q), s.block_offset(n - 1, sources[b], q), r);
        }
        face.maps.push_back(std::move(m));
      }
      faces.push_back(std::move(face));
    }
    s.faces.push_back(std::move(faces));
  }
  return s;
}

DGLieAlgebra product(const std::vector<DGLieAlgebra>& parts) {
  std::vector<GradedComplex> cs;
  for (const auto& p : parts) cs.push_back(p.complex());
  DGLieAlgebra out(GradedComplex::direct_sum(cs));
  auto offset = [&](std::size_t k, int q) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) off += parts[j].dim(q);
    return off;
  };
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& l = parts[k];
    if (l.complex().empty()) continue;
    for (int p = l.lo(); p <= l.hi(); ++p)
      for (int q = l.lo(); q <= l.hi(); ++q) {
        if (!l.has_bracket(p, q)) continue;
        std::size_t op = offset(k, p), oq = offset(k, q), or_ = offset(k, p + q);
        for (std::size_t i = 0; i < l.dim(p); ++i)
          for (std::size_t j = 0; j < l.dim(q); ++j) {
            const SparseVec& v = l.bracket_basis(p, i, q, j);
            if (v.empty()) continue;
            SparseVec w;
            for (const auto& [idx, c] : v) w.emplace_back(idx + or_, c);
            out.set_bracket(p, op + i, q, oq + j, std::move(w));
          }
      }
  }
  return out;
}

DGLieAlgebra abelian(const GradedComplex& c) { return DGLieAlgebra(c); }

SemicosimplicialDGLA build_cech_scdgla(const DGLAPresheaf& f, Nerve nerve, std::size_t levels) {
  std::map<ChartTuple, DGLieAlgebra> cache;
  auto sec = [&](const ChartTuple& set) -> const DGLieAlgebra& {
    auto it = cache.find(set);
    if (it == cache.end()) it = cache.emplace(set, f.sections(set)).first;
    return it->second;
  };
  ComplexPresheaf linear{f.charts, [&](const ChartTuple& t) { return sec(t).complex(); },
                         f.restriction};
  SemicosimplicialComplex base = build_cech_complex(linear, nerve, levels);
  SemicosimplicialDGLA s;
  for (const auto& tuples : base.tuples) {
    std::vector<DGLieAlgebra> parts;
    for (const auto& t : tuples) parts.push_back(sec(as_set(t)));
    s.levels.push_back(product(parts));
  }
  s.faces = std::move(base.faces);
  s.tuples = std::move(base.tuples);
  return s;
}

TotalCochain total_cochain(const SemicosimplicialComplex& s, bool complete) {
  TotalCochain out;
  auto [lo, hi] = degree_range(s.levels);
  std::size_t levels = s.levels.size();
  if (levels == 0 || hi < lo) {
    out.complex = GradedComplex::zero();
    return out;
  }
  DoubleComplex& dc = out.grid;
  dc.p_lo = 0;
  dc.q_lo = lo;
  dc.p_count = levels;
  dc.q_count = static_cast<std::size_t>(hi - lo + 1);
  dc.dims.assign(levels, std::vector<std::size_t>(dc.q_count));
  dc.horizontal.assign(levels, std::vector<RatMatrix>(dc.q_count));
  dc.vertical.assign(levels, std::vector<RatMatrix>(dc.q_count));
  for (std::size_t p = 0; p < levels; ++p)
    for (int q = lo; q <= hi; ++q) {
      auto qi = static_cast<std::size_t>(q - lo);
      dc.dims[p][qi] = s.levels[p].dim(q);
      dc.vertical[p][qi] = s.levels[p].d(q);
      if (p + 1 < levels) {
        RatMatrix h(s.levels[p + 1].dim(q), s.levels[p].dim(q));
        for (std::size_t i = 0; i <= p + 1; ++i) {
          RatMatrix fi = s.face(p + 1, i, q);
          h = i % 2 == 0 ? h + fi : h - fi;
        }
        dc.horizontal[p][qi] = std::move(h);
      }
    }
  out.complex = total_complex(dc);
  out.reliable_through = complete ? static_cast<int>(levels) - 1 + hi
                                  : static_cast<int>(levels) - 2 + lo;
  return out;
}

ChainMap total_cochain_map(const TotalCochain& a, const TotalCochain& b,
                           const std::vector<ChainMap>& levels) {
  auto [lo, hi] = degree_range({a.complex, b.complex});
  ChainMap out{lo, {}};
  for (int n = lo; n <= hi; ++n) {
    RatMatrix m(b.complex.dim(n), a.complex.dim(n));
    if (!a.complex.empty() && !b.complex.empty()) {
      auto oa = total_block_offsets(a.grid, n), ob = total_block_offsets(b.grid, n);
      for (const auto& [p, off_a] : oa) {
        auto it = std::find_if(ob.begin(), ob.end(), [p = p](const auto& x) { return x.first == p; });
        if (it == ob.end() || p < 0 || static_cast<std::size_t>(p) >= levels.size()) continue;
        int q = n - p;
        std::size_t rows = b.grid.dim(p, q), cols = a.grid.dim(p, q);
        if (rows == 0 || cols == 0) continue;
        m.set_block(it->second, off_a, levels[static_cast<std::size_t>(p)].at(q, rows, cols));
      }
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------

RatVector apply_face(const ChainMap& face, int degree, const TensorDGLA& src, const TensorDGLA& tgt,
                     const RatVector& x) {
  std::size_t rows = tgt.base().dim(degree), cols = src.base().dim(degree), dm = src.ring().dim();
  RatMatrix m = face.at(degree, rows, cols);
  RatVector out = tgt.zero(degree);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (m(i, j) == 0) continue;
      for (std::size_t al = 0; al < dm; ++al) out[i * dm + al] += m(i, j) * x[j * dm + al];
    }
  return out;
}

namespace {

void require_levels(const SemicosimplicialDGLA& s) {
  if (s.levels.size() < 3 || s.faces.size() < 2)
    throw PreconditionError("descent data needs levels 0, 1 and 2");
}

}  // namespace

DescentVerdict descent_check(const SemicosimplicialDGLA& s, const ArtinLocalAlgebra& a,
                             const RatVector& l, const RatVector& m) {
  require_levels(s);
  TensorDGLA t0(s.levels[0], a), t1(s.levels[1], a), t2(s.levels[2], a);
  if (l.size() != t0.dim(1) || m.size() != t1.dim(0))
    throw PreconditionError("descent datum has wrong dimension");
  DescentVerdict v;
  v.maurer_cartan = mc_check(t0, l);
  if (!v.maurer_cartan) return v;
  RatVector d0l = apply_face(s.faces[0][0], 1, t0, t1, l);
  RatVector d1l = apply_face(s.faces[0][1], 1, t0, t1, l);
  v.gluing = gauge_act(t1, m, d0l) == d1l;
  if (!v.gluing) return v;
  RatVector x = apply_face(s.faces[1][0], 1, t1, t2, d0l);
  RatVector d0m = apply_face(s.faces[1][0], 0, t1, t2, m);
  RatVector d1m = apply_face(s.faces[1][1], 0, t1, t2, m);
  RatVector d2m = apply_face(s.faces[1][2], 0, t1, t2, m);
  MorphismVerdict eq = morphism_equal(t2, bch(t2, d2m, d0m), d1m, x);
  v.cocycle = eq.equal;
  v.nu = eq.nu;
  return v;
}

bool descent_morphism_check(const SemicosimplicialDGLA& s, const ArtinLocalAlgebra& a,
                            const RatVector& g, const RatVector& l, const RatVector& m,
                            const RatVector& l2, const RatVector& m2) {
  require_levels(s);
  TensorDGLA t0(s.levels[0], a), t1(s.levels[1], a);
  if (gauge_act(t0, g, l) != l2) return false;
  RatVector d0g = apply_face(s.faces[0][0], 0, t0, t1, g);
  RatVector d1g = apply_face(s.faces[0][1], 0, t0, t1, g);
  RatVector x = apply_face(s.faces[0][0], 1, t0, t1, l);
  try {
    return morphism_equal(t1, bch(t1, d1g, m), bch(t1, m2, d0g), x).equal;
  } catch (const PreconditionError&) {
    return false;
  }
}

DescentClasses first_order_descent_classes(const SemicosimplicialComplex& s) {
  DescentClasses out;
  std::size_t n0 = level_dim(s, 0, 1), n1 = level_dim(s, 1, 0), n2 = level_dim(s, 2, -1);
  std::size_t r0 = level_dim(s, 0, 2), r1 = level_dim(s, 1, 1), r2 = level_dim(s, 2, 0);
  out.l_dim = n0;
  out.m_dim = n1;
  auto dmat = [&](std::size_t n, int q, std::size_t rows, std::size_t cols) {
    RatMatrix d = level_d(s, n, q);
    return d.rows() == rows && d.cols() == cols ? d : RatMatrix(rows, cols);
  };

  RatMatrix sys(r0 + r1 + r2, n0 + n1 + n2);
  sys.set_block(0, 0, dmat(0, 1, r0, n0));
  sys.set_block(r0, 0, s.face(1, 0, 1) - s.face(1, 1, 1));
  sys.set_block(r0, n0, Rational(-1) * dmat(1, 0, r1, n1));
  sys.set_block(r0 + r1, n0, s.face(2, 0, 0) + s.face(2, 2, 0) - s.face(2, 1, 0));
  sys.set_block(r0 + r1, n0 + n1, Rational(-1) * dmat(2, -1, r2, n2));
  RatMatrix kernel = kernel_basis(sys);
  RatMatrix objects = kernel.rows() == 0 ? RatMatrix(n0 + n1, 0)
                                         : kernel.block(0, 0, n0 + n1, kernel.cols());
  out.object_dim = rank(objects);

  std::size_t a0 = level_dim(s, 0, 0), mu = level_dim(s, 1, -1);
  RatMatrix orbit(n0 + n1, a0 + mu);
  orbit.set_block(0, 0, Rational(-1) * dmat(0, 0, n0, a0));
  orbit.set_block(n0, 0, s.face(1, 1, 0) - s.face(1, 0, 0));
  orbit.set_block(n0, a0, dmat(1, -1, n1, mu));
  out.orbit_dim = rank(orbit);

  RatMatrix both = orbit.hstack(objects);
  if (rank(both) != out.object_dim)
    throw ComplexError("orbit directions are not descent data", 1);
  out.dimension = out.object_dim - out.orbit_dim;
  std::vector<RatVector> reps;
  for (std::size_t c : independent_columns(both))
    if (c >= orbit.cols()) reps.push_back(both.column(c));
  out.representatives = reps.empty() ? RatMatrix(n0 + n1, 0) : RatMatrix::from_columns(n0 + n1, reps);
  return out;
}

}  // namespace dk
