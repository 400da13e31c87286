#include "dk/dgla.hpp"

#include <algorithm>
#include <sstream>

#include "dk/error.hpp"

namespace dk {

namespace {

const SparseVec kEmpty;

int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

SparseVec sparse_combine(std::vector<std::pair<std::size_t, Rational>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& [i, c] : terms) {
    if (!out.empty() && out.back().first == i) {
      out.back().second += c;
    } else {
      if (!out.empty() && is_zero(out.back().second)) out.pop_back();
      out.emplace_back(i, std::move(c));
    }
  }
  if (!out.empty() && is_zero(out.back().second)) out.pop_back();
  return out;
}

DGLieAlgebra::DGLieAlgebra(GradedComplex complex) : complex_(std::move(complex)) {
  if (complex_.empty()) return;
  std::size_t span = static_cast<std::size_t>(hi() - lo() + 1);
  tables_.resize(span * span);
  for (int n = lo(); n <= hi(); ++n) diffs_.push_back(complex_.d(n));
}

std::vector<SparseVec>* DGLieAlgebra::table(int p, int q) {
  if (complex_.empty() || p < lo() || p > hi() || q < lo() || q > hi() || p + q < lo() ||
      p + q > hi())
    return nullptr;
  std::size_t span = static_cast<std::size_t>(hi() - lo() + 1);
  return &tables_[static_cast<std::size_t>(p - lo()) * span + static_cast<std::size_t>(q - lo())];
}

const std::vector<SparseVec>* DGLieAlgebra::table(int p, int q) const {
  return const_cast<DGLieAlgebra*>(this)->table(p, q);
}

void DGLieAlgebra::set_bracket(int p, std::size_t i, int q, std::size_t j, SparseVec v) {
  auto* t = table(p, q);
  if (!t) {
    if (v.empty()) return;
    throw PreconditionError("bracket lands outside the degree range");
  }
  if (i >= dim(p) || j >= dim(q)) throw PreconditionError("bracket basis index out of range");
  for (auto& [k, c] : v)
    if (k >= dim(p + q)) throw PreconditionError("bracket value index out of range");
  if (t->empty()) t->resize(dim(p) * dim(q));
  (*t)[i * dim(q) + j] = std::move(v);
}

const SparseVec& DGLieAlgebra::bracket_basis(int p, std::size_t i, int q, std::size_t j) const {
  const auto* t = table(p, q);
  if (!t || t->empty()) return kEmpty;
  return (*t)[i * dim(q) + j];
}

bool DGLieAlgebra::has_bracket(int p, int q) const {
  const auto* t = table(p, q);
  return t && !t->empty();
}

SparseVec DGLieAlgebra::bracket(int p, const SparseVec& x, int q, const SparseVec& y) const {
  const auto* t = table(p, q);
  if (!t || t->empty()) return {};
  std::size_t dq = dim(q);
  std::vector<std::pair<std::size_t, Rational>> terms;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      const SparseVec& v = (*t)[i * dq + j];
      if (v.empty()) continue;
      Rational ab = a * b;
      for (const auto& [k, c] : v) terms.emplace_back(k, ab * c);
    }
  return sparse_combine(std::move(terms));
}

RatVector DGLieAlgebra::bracket(int p, const RatVector& x, int q, const RatVector& y) const {
  return densify(bracket(p, sparsify(x), q, sparsify(y)), dim(p + q));
}

RatVector DGLieAlgebra::d(int n, const RatVector& x) const {
  if (complex_.empty() || n < lo() || n > hi()) return zero_vector(dim(n + 1));
  return diffs_[static_cast<std::size_t>(n - lo())] * x;
}

SparseVec DGLieAlgebra::d(int n, const SparseVec& x) const {
  if (complex_.empty() || n < lo() || n > hi()) return {};
  const RatMatrix& m = diffs_[static_cast<std::size_t>(n - lo())];
  std::vector<std::pair<std::size_t, Rational>> terms;
  for (const auto& [j, a] : x)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!is_zero(m(r, j))) terms.emplace_back(r, a * m(r, j));
  return sparse_combine(std::move(terms));
}

// ---------------------------------------------------------------------------

namespace {

SparseVec unit(std::size_t i) { return {{i, Rational(1)}}; }

SparseVec sub(const SparseVec& a, const SparseVec& b, const Rational& cb = 1) {
  std::vector<std::pair<std::size_t, Rational>> terms(a.begin(), a.end());
  for (const auto& [k, c] : b) terms.emplace_back(k, -cb * c);
  return sparse_combine(std::move(terms));
}

struct Collector {
  AxiomReport& report;
  std::size_t max;
  bool full() const { return report.violations.size() >= max; }
  void add(const std::string& id, std::vector<BasisRef> w) {
    if (!full()) report.violations.push_back({id, std::move(w)});
  }
};

}  // namespace

AxiomReport check_axioms(const DGLieAlgebra& l, std::size_t max_violations) {
  AxiomReport report;
  Collector col{report, max_violations};
  if (l.complex().empty()) return report;

  for (int n = l.lo(); n < l.hi(); ++n) {
    RatMatrix dd = l.complex().d(n + 1) * l.complex().d(n);
    for (std::size_t j = 0; j < dd.cols(); ++j)
      if (!is_zero(dd.column(j))) {
        col.add("d^2", {{n, j}});
        break;
      }
  }

  std::vector<BasisRef> basis;
  for (int n = l.lo(); n <= l.hi(); ++n)
    for (std::size_t i = 0; i < l.dim(n); ++i) basis.push_back({n, i});
  const std::size_t nb = basis.size();

  bool antisym = true;
  for (std::size_t a = 0; a < nb && !col.full(); ++a)
    for (std::size_t b = a; b < nb; ++b) {
      auto [p, i] = basis[a];
      auto [q, j] = basis[b];
      const SparseVec& xy = l.bracket_basis(p, i, q, j);
      const SparseVec& yx = l.bracket_basis(q, j, p, i);
      if (!sub(xy, yx, -sign(p * q)).empty()) {
        antisym = false;
        col.add("antisymmetry", {basis[a], basis[b]});
        if (col.full()) break;
      }
    }

  // With antisymmetry in hand, Leibniz on (y,x) follows from (x,y) and the
  // Jacobiator is graded-alternating, so sorted tuples suffice.
  std::vector<SparseVec> dbasis(nb);
  for (std::size_t a = 0; a < nb; ++a) dbasis[a] = l.d(basis[a].degree, unit(basis[a].index));

  for (std::size_t a = 0; a < nb && !col.full(); ++a)
    for (std::size_t b = antisym ? a : 0; b < nb; ++b) {
      auto [p, i] = basis[a];
      auto [q, j] = basis[b];
      SparseVec lhs = l.d(p + q, l.bracket_basis(p, i, q, j));
      SparseVec r1 = l.bracket(p + 1, dbasis[a], q, unit(j));
      SparseVec r2 = l.bracket(p, unit(i), q + 1, dbasis[b]);
      SparseVec diff = sub(sub(lhs, r1), r2, sign(p));
      if (!diff.empty()) {
        col.add("leibniz", {basis[a], basis[b]});
        if (col.full()) break;
      }
    }

  for (std::size_t a = 0; a < nb && !col.full(); ++a)
    for (std::size_t b = antisym ? a : 0; b < nb && !col.full(); ++b) {
      auto [p, i] = basis[a];
      auto [q, j] = basis[b];
      const SparseVec& xy = l.bracket_basis(p, i, q, j);
      for (std::size_t c = antisym ? b : 0; c < nb; ++c) {
        auto [r, k] = basis[c];
        if (p + q + r < l.lo() || p + q + r > l.hi()) continue;
        SparseVec t1 = l.bracket(p, unit(i), q + r, l.bracket_basis(q, j, r, k));
        SparseVec t2 = l.bracket(p + q, xy, r, unit(k));
        SparseVec t3 = l.bracket(q, unit(j), p + r, l.bracket_basis(p, i, r, k));
        SparseVec diff = sub(sub(t1, t2), t3, sign(p * q));
        if (!diff.empty()) {
          col.add("jacobi", {basis[a], basis[b], basis[c]});
          if (col.full()) break;
        }
      }
    }

  if (const auto* an = l.anchor()) {
    const DGLieAlgebra& t = *an->target;
    for (int n = l.lo(); n <= l.hi() && !col.full(); ++n) {
      RatMatrix a0 = an->map.at(n, t.dim(n), l.dim(n));
      RatMatrix a1 = an->map.at(n + 1, t.dim(n + 1), l.dim(n + 1));
      RatMatrix diff = a1 * l.complex().d(n) - t.complex().d(n) * a0;
      for (std::size_t j = 0; j < diff.cols(); ++j)
        if (!is_zero(diff.column(j))) {
          col.add("anchor-d", {{n, j}});
          break;
        }
    }
    for (std::size_t a = 0; a < nb && !col.full(); ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        auto [p, i] = basis[a];
        auto [q, j] = basis[b];
        RatMatrix ap = an->map.at(p, t.dim(p), l.dim(p));
        RatMatrix aq = an->map.at(q, t.dim(q), l.dim(q));
        RatMatrix apq = an->map.at(p + q, t.dim(p + q), l.dim(p + q));
        RatVector lhs = apq * densify(l.bracket_basis(p, i, q, j), l.dim(p + q));
        RatVector rhs = t.bracket(p, ap.column(i), q, aq.column(j));
        if (lhs != rhs) {
          col.add("anchor-bracket", {basis[a], basis[b]});
          if (col.full()) break;
        }
      }
  }
  return report;
}

void check_dgla_morphism(const DGLieAlgebra& src, const DGLieAlgebra& tgt, const ChainMap& f) {
  check_chain_map(src.complex(), tgt.complex(), f);
  if (src.complex().empty()) return;
  for (int p = src.lo(); p <= src.hi(); ++p)
    for (int q = src.lo(); q <= src.hi(); ++q) {
      if (!src.has_bracket(p, q) && !tgt.has_bracket(p, q)) continue;
      RatMatrix fp = f.at(p, tgt.dim(p), src.dim(p));
      RatMatrix fq = f.at(q, tgt.dim(q), src.dim(q));
      RatMatrix fpq = f.at(p + q, tgt.dim(p + q), src.dim(p + q));
      for (std::size_t i = 0; i < src.dim(p); ++i)
        for (std::size_t j = 0; j < src.dim(q); ++j) {
          RatVector lhs = fpq * densify(src.bracket_basis(p, i, q, j), src.dim(p + q));
          RatVector rhs = tgt.bracket(p, fp.column(i), q, fq.column(j));
          if (lhs != rhs) {
            std::ostringstream os;
            os << "map does not preserve brackets on degrees (" << p << "," << q << ")";
            throw ComplexError(os.str(), p + q);
          }
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

struct Unit {
  int n, k;
  std::size_t r, c;
};

}  // namespace

HomComplexDGLA::HomComplexDGLA(GradedComplex e) : e_(std::move(e)) {
  e_.validate();
  if (e_.empty()) {
    algebra_ = DGLieAlgebra(GradedComplex::zero());
    return;
  }
  lo_ = e_.lo() - e_.hi();
  int hi = e_.hi() - e_.lo();
  std::vector<std::size_t> dims;
  for (int n = lo_; n <= hi; ++n) {
    std::vector<Block> bl;
    std::size_t off = 0;
    for (int k = e_.lo(); k <= e_.hi(); ++k) {
      if (k + n < e_.lo() || k + n > e_.hi()) continue;
      Block b{k, off, e_.dim(k + n), e_.dim(k)};
      off += b.rows * b.cols;
      bl.push_back(b);
    }
    blocks_.push_back(std::move(bl));
    dims.push_back(off);
  }

  auto index_of = [&](int n, int k, std::size_t r, std::size_t c) -> std::size_t {
    for (const auto& b : blocks(n))
      if (b.k == k) return b.offset + r * b.cols + c;
    throw PreconditionError("no Hom block");
  };

  std::vector<std::vector<Unit>> units;
  for (int n = lo_; n <= hi; ++n) {
    std::vector<Unit> us;
    for (const auto& b : blocks(n))
      for (std::size_t r = 0; r < b.rows; ++r)
        for (std::size_t c = 0; c < b.cols; ++c) us.push_back({n, b.k, r, c});
    units.push_back(std::move(us));
  }

  std::vector<RatMatrix> diffs;
  for (int n = lo_; n < hi; ++n) {
    RatMatrix d(dims[static_cast<std::size_t>(n + 1 - lo_)], dims[static_cast<std::size_t>(n - lo_)]);
    const auto& us = units[static_cast<std::size_t>(n - lo_)];
    for (std::size_t col = 0; col < us.size(); ++col) {
      const Unit& u = us[col];
      // ∂∘U: E^k → E^{k+n+1}
      if (u.k + n + 1 <= e_.hi()) {
        RatMatrix dd = e_.d(u.k + n);
        for (std::size_t r2 = 0; r2 < dd.rows(); ++r2)
          if (!is_zero(dd(r2, u.r))) d(index_of(n + 1, u.k, r2, u.c), col) += dd(r2, u.r);
      }
      // U∘∂: E^{k−1} → E^{k+n}
      if (u.k - 1 >= e_.lo()) {
        RatMatrix dd = e_.d(u.k - 1);
        for (std::size_t c2 = 0; c2 < dd.cols(); ++c2)
          if (!is_zero(dd(u.c, c2)))
            d(index_of(n + 1, u.k - 1, u.r, c2), col) -= sign(n) * dd(u.c, c2);
      }
    }
    diffs.push_back(std::move(d));
  }
  algebra_ = DGLieAlgebra(GradedComplex(lo_, dims, diffs));

  for (int n = lo_; n <= hi; ++n)
    for (int m = lo_; m <= hi; ++m) {
      if (n + m < lo_ || n + m > hi) continue;
      const auto& un = units[static_cast<std::size_t>(n - lo_)];
      const auto& um = units[static_cast<std::size_t>(m - lo_)];
      for (std::size_t i = 0; i < un.size(); ++i)
        for (std::size_t j = 0; j < um.size(); ++j) {
          const Unit& u = un[i];
          const Unit& v = um[j];
          std::vector<std::pair<std::size_t, Rational>> terms;
          if (v.k + m == u.k && v.r == u.c) terms.emplace_back(index_of(n + m, v.k, u.r, v.c), Rational(1));
          if (u.k + n == v.k && u.r == v.c)
            terms.emplace_back(index_of(n + m, u.k, v.r, u.c), Rational(-sign(n * m)));
          SparseVec val = sparse_combine(std::move(terms));
          if (!val.empty()) algebra_.set_bracket(n, i, m, j, std::move(val));
        }
    }
}

const std::vector<HomComplexDGLA::Block>& HomComplexDGLA::blocks(int n) const {
  static const std::vector<Block> none;
  if (blocks_.empty() || n < lo_ || n >= lo_ + static_cast<int>(blocks_.size())) return none;
  return blocks_[static_cast<std::size_t>(n - lo_)];
}

RatMatrix HomComplexDGLA::block(int n, const RatVector& f, int k) const {
  for (const auto& b : blocks(n))
    if (b.k == k) {
      RatMatrix m(b.rows, b.cols);
      for (std::size_t r = 0; r < b.rows; ++r)
        for (std::size_t c = 0; c < b.cols; ++c) m(r, c) = f[b.offset + r * b.cols + c];
      return m;
    }
  return RatMatrix(e_.dim(k + n), e_.dim(k));
}

RatVector HomComplexDGLA::from_blocks(int n, const std::vector<std::pair<int, RatMatrix>>& parts) const {
  RatVector f = zero_vector(algebra_.dim(n));
  for (const auto& [k, m] : parts) {
    bool found = false;
    for (const auto& b : blocks(n))
      if (b.k == k) {
        if (m.rows() != b.rows || m.cols() != b.cols) throw PreconditionError("Hom block has wrong shape");
        for (std::size_t r = 0; r < b.rows; ++r)
          for (std::size_t c = 0; c < b.cols; ++c) f[b.offset + r * b.cols + c] = m(r, c);
        found = true;
      }
    if (!found && m.rows() * m.cols() > 0) throw PreconditionError("Hom block outside range");
  }
  return f;
}

RatVector HomComplexDGLA::apply(int n, const RatVector& f, int k, const RatVector& v) const {
  return block(n, f, k) * v;
}

std::size_t HomComplexDGLA::total_dim() const {
  std::size_t t = 0;
  for (int k = e_.lo(); k <= e_.hi(); ++k) t += e_.dim(k);
  return t;
}

std::size_t HomComplexDGLA::total_offset(int k) const {
  std::size_t t = 0;
  for (int j = e_.lo(); j < k; ++j) t += e_.dim(j);
  return t;
}

RatMatrix HomComplexDGLA::total_matrix(int n, const RatVector& f) const {
  RatMatrix m(total_dim(), total_dim());
  for (const auto& b : blocks(n)) m.set_block(total_offset(b.k + n), total_offset(b.k), block(n, f, b.k));
  return m;
}

RatMatrix HomComplexDGLA::total_differential() const {
  RatMatrix m(total_dim(), total_dim());
  if (e_.empty()) return m;
  for (int k = e_.lo(); k < e_.hi(); ++k) m.set_block(total_offset(k + 1), total_offset(k), e_.d(k));
  return m;
}

RatVector HomComplexDGLA::differential_element() const {
  std::vector<std::pair<int, RatMatrix>> parts;
  if (!e_.empty())
    for (int k = e_.lo(); k < e_.hi(); ++k) parts.emplace_back(k, e_.d(k));
  return from_blocks(1, parts);
}

RatVector HomComplexDGLA::identity_element() const {
  std::vector<std::pair<int, RatMatrix>> parts;
  if (!e_.empty())
    for (int k = e_.lo(); k <= e_.hi(); ++k) parts.emplace_back(k, RatMatrix::identity(e_.dim(k)));
  return from_blocks(0, parts);
}

// ---------------------------------------------------------------------------

ActingDGLA ActingDGLA::full(std::shared_ptr<const HomComplexDGLA> hom) {
  ActingDGLA a;
  a.algebra = hom->algebra();
  a.hom = hom;
  a.inclusion.lo = a.algebra.lo();
  if (!a.algebra.complex().empty())
    for (int n = a.algebra.lo(); n <= a.algebra.hi(); ++n)
      a.inclusion.maps.push_back(RatMatrix::identity(a.algebra.dim(n)));
  return a;
}

RatVector ActingDGLA::to_hom(int n, const RatVector& x) const {
  return inclusion.at(n, hom->algebra().dim(n), algebra.dim(n)) * x;
}

RatVector ActingDGLA::act(int n, const RatVector& x, int k, const RatVector& v) const {
  return hom->apply(n, to_hom(n, x), k, v);
}

// ---------------------------------------------------------------------------

CoconeDGLA::CoconeDGLA(ActingDGLA l, RatVector s) : base_(std::move(l)), s_(std::move(s)) {
  const GradedComplex& e = module();
  if (s_.size() != e.dim(0)) throw PreconditionError("section has wrong dimension");
  if (!is_zero(e.d(0) * s_)) throw PreconditionError("section is not a cycle");
  check_chain_map(base_.algebra.complex(), base_.hom->algebra().complex(), base_.inclusion);

  const DGLieAlgebra& la = base_.algebra;
  int lo = 0, hi = -1;
  bool any = false;
  auto widen = [&](int a, int b) {
    if (a > b) return;
    if (!any) {
      lo = a;
      hi = b;
      any = true;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  };
  if (!la.complex().empty()) widen(la.lo(), la.hi());
  if (!e.empty()) widen(e.lo() + 1, e.hi() + 1);
  if (!any) {
    algebra_ = DGLieAlgebra(GradedComplex::zero());
    return;
  }

  std::vector<std::size_t> dims;
  for (int i = lo; i <= hi; ++i) dims.push_back(l_dim(i) + e_dim(i));

  // Columns of each L^i basis element acting on E: images of the E basis.
  auto action = [&](int n, std::size_t j, int k) {
    RatVector x = zero_vector(la.dim(n));
    x[j] = 1;
    return base_.hom->block(n, base_.to_hom(n, x), k);
  };

  std::vector<RatMatrix> diffs;
  for (int i = lo; i < hi; ++i) {
    RatMatrix d(dims[static_cast<std::size_t>(i + 1 - lo)], dims[static_cast<std::size_t>(i - lo)]);
    d.set_block(0, 0, la.complex().d(i));
    std::size_t lnext = l_dim(i + 1);
    for (std::size_t j = 0; j < l_dim(i); ++j) {
      RatVector fs = action(i, j, 0) * s_;
      for (std::size_t r = 0; r < fs.size(); ++r) d(lnext + r, j) = -sign(i) * fs[r];
    }
    d.set_block(lnext, l_dim(i), e.d(i - 1));
    diffs.push_back(std::move(d));
  }
  algebra_ = DGLieAlgebra(GradedComplex(lo, dims, diffs));

  for (int p = lo; p <= hi; ++p)
    for (int q = lo; q <= hi; ++q) {
      if (p + q < lo || p + q > hi) continue;
      std::size_t lpq = l_dim(p + q);
      for (std::size_t i = 0; i < l_dim(p); ++i)
        for (std::size_t j = 0; j < l_dim(q); ++j) {
          const SparseVec& v = la.bracket_basis(p, i, q, j);
          if (!v.empty()) algebra_.set_bracket(p, i, q, j, v);
        }
      if (e_dim(q) > 0 && e_dim(p + q) > 0)
        for (std::size_t i = 0; i < l_dim(p); ++i) {
          RatMatrix a = action(p, i, q - 1);  // E^{q-1} → E^{p+q-1}
          for (std::size_t w = 0; w < e_dim(q); ++w) {
            SparseVec v;
            for (std::size_t r = 0; r < a.rows(); ++r)
              if (!is_zero(a(r, w))) v.emplace_back(lpq + r, a(r, w));
            if (!v.empty()) algebra_.set_bracket(p, i, q, l_dim(q) + w, std::move(v));
          }
        }
      if (e_dim(p) > 0 && e_dim(p + q) > 0)
        for (std::size_t j = 0; j < l_dim(q); ++j) {
          RatMatrix a = action(q, j, p - 1);  // E^{p-1} → E^{p+q-1}
          for (std::size_t v0 = 0; v0 < e_dim(p); ++v0) {
            SparseVec v;
            for (std::size_t r = 0; r < a.rows(); ++r)
              if (!is_zero(a(r, v0))) v.emplace_back(lpq + r, -sign(p * q) * a(r, v0));
            if (!v.empty()) algebra_.set_bracket(p, l_dim(p) + v0, q, j, std::move(v));
          }
        }
    }
}

RatVector CoconeDGLA::pack(int i, const RatVector& l, const RatVector& x) const {
  if (l.size() != l_dim(i) || x.size() != e_dim(i)) throw PreconditionError("cocone parts have wrong size");
  RatVector m = l;
  m.insert(m.end(), x.begin(), x.end());
  return m;
}

RatVector CoconeDGLA::l_part(int i, const RatVector& m) const {
  return RatVector(m.begin(), m.begin() + static_cast<long>(l_dim(i)));
}

RatVector CoconeDGLA::e_part(int i, const RatVector& m) const {
  return RatVector(m.begin() + static_cast<long>(l_dim(i)), m.end());
}

ChainMap CoconeDGLA::projection() const {
  ChainMap p;
  if (algebra_.complex().empty()) return p;
  p.lo = algebra_.lo();
  for (int i = algebra_.lo(); i <= algebra_.hi(); ++i) {
    RatMatrix m(l_dim(i), algebra_.dim(i));
    for (std::size_t j = 0; j < l_dim(i); ++j) m(j, j) = 1;
    p.maps.push_back(std::move(m));
  }
  return p;
}

ChainMap CoconeDGLA::inclusion() const {
  ChainMap p;
  if (algebra_.complex().empty()) return p;
  p.lo = algebra_.lo();
  for (int i = algebra_.lo(); i <= algebra_.hi(); ++i) {
    RatMatrix m(algebra_.dim(i), e_dim(i));
    for (std::size_t j = 0; j < e_dim(i); ++j) m(l_dim(i) + j, j) = sign(i);
    p.maps.push_back(std::move(m));
  }
  return p;
}

GradedComplex CoconeDGLA::shifted_module() const {
  if (module().empty()) return GradedComplex::zero();
  return module().shifted(-1);
}

ChainMap twist_iso(const CoconeDGLA& c, const RatVector& r) {
  const GradedComplex& e = c.module();
  if (r.size() != e.dim(-1)) throw PreconditionError("twist vector must lie in E^-1");
  ChainMap f;
  const DGLieAlgebra& m = c.algebra();
  if (m.complex().empty()) return f;
  f.lo = m.lo();
  for (int i = m.lo(); i <= m.hi(); ++i) {
    RatMatrix t = RatMatrix::identity(m.dim(i));
    for (std::size_t j = 0; j < c.l_dim(i); ++j) {
      RatVector u = zero_vector(c.l_dim(i));
      u[j] = 1;
      RatVector ur = c.base().act(i, u, -1, r);
      for (std::size_t k = 0; k < ur.size(); ++k) t(c.l_dim(i) + k, j) = ur[k];
    }
    f.maps.push_back(std::move(t));
  }
  return f;
}

}  // namespace dk
