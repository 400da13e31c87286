#include "dk/exactlin.hpp"

#include <algorithm>
#include <sstream>

#include "dk/error.hpp"

namespace dk {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw Error("RatMatrix: entry count does not match shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<RatVector>& columns) {
  RatMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

RatMatrix RatMatrix::from_rows(std::size_t cols, const std::vector<RatVector>& rows) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("RatMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatVector RatMatrix::row(std::size_t r) const {
  return RatVector(data_.begin() + static_cast<long>(r * cols_),
                   data_.begin() + static_cast<long>((r + 1) * cols_));
}

RatVector RatMatrix::column(std::size_t c) const {
  RatVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void RatMatrix::set_column(std::size_t c, const RatVector& v) {
  if (v.size() != rows_) throw Error("RatMatrix::set_column: size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool RatMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

RatMatrix RatMatrix::transposed() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatMatrix RatMatrix::hstack(const RatMatrix& right) const {
  if (rows_ != right.rows_) throw Error("hstack: row count mismatch");
  RatMatrix m(rows_, cols_ + right.cols_);
  m.set_block(0, 0, *this);
  m.set_block(0, cols_, right);
  return m;
}

RatMatrix RatMatrix::vstack(const RatMatrix& below) const {
  if (cols_ != below.cols_) throw Error("vstack: column count mismatch");
  RatMatrix m(rows_ + below.rows_, cols_);
  m.set_block(0, 0, *this);
  m.set_block(rows_, 0, below);
  return m;
}

RatMatrix RatMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block: out of range");
  RatMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void RatMatrix::set_block(std::size_t r0, std::size_t c0, const RatMatrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw Error("set_block: out of range");
  for (std::size_t r = 0; r < m.rows_; ++r)
    for (std::size_t c = 0; c < m.cols_; ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product: shape mismatch");
  RatMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (sgn(bkj) != 0) m(i, j) += aik * bkj;
      }
    }
  return m;
}

RatVector operator*(const RatMatrix& a, const RatVector& v) {
  if (a.cols_ != v.size()) throw Error("matrix-vector product: shape mismatch");
  RatVector r(a.rows_);
  for (std::size_t k = 0; k < a.cols_; ++k) {
    if (sgn(v[k]) == 0) continue;
    for (std::size_t i = 0; i < a.rows_; ++i)
      if (sgn(a(i, k)) != 0) r[i] += a(i, k) * v[k];
  }
  return r;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum: shape mismatch");
  RatMatrix m(a);
  for (std::size_t i = 0; i < m.data_.size(); ++i)
    if (sgn(b.data_[i]) != 0) m.data_[i] += b.data_[i];
  return m;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference: shape mismatch");
  RatMatrix m(a);
  for (std::size_t i = 0; i < m.data_.size(); ++i)
    if (sgn(b.data_[i]) != 0) m.data_[i] -= b.data_[i];
  return m;
}

RatMatrix operator*(const Rational& c, const RatMatrix& a) {
  RatMatrix m(a.rows_, a.cols_);
  if (sgn(c) == 0) return m;
  for (std::size_t i = 0; i < m.data_.size(); ++i)
    if (sgn(a.data_[i]) != 0) m.data_[i] = c * a.data_[i];
  return m;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

RowEchelon rref(RatMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    support.clear();
    for (std::size_t j = c; j < cols; ++j)
      if (sgn(m(r, j)) != 0) {
        m(r, j) *= inv;
        support.push_back(j);
      }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j : support) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivot_columns.size(); }

std::size_t rank_by_columns(const RatMatrix& m0) {
  // Column operations only: for each row, pick the first remaining column with
  // a nonzero entry and clear that row in every other remaining column.
  RatMatrix m = m0;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<bool> used(cols, false);
  std::size_t rk = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t p = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (!used[j] && sgn(m(i, j)) != 0) {
        p = j;
        break;
      }
    if (p == cols) continue;
    used[p] = true;
    ++rk;
    for (std::size_t j = 0; j < cols; ++j) {
      if (used[j] || sgn(m(i, j)) == 0) continue;
      Rational f = m(i, j) / m(i, p);
      for (std::size_t k = i; k < rows; ++k)
        if (sgn(m(k, p)) != 0) m(k, j) -= f * m(k, p);
    }
  }
  return rk;
}

RatMatrix kernel_basis(const RatMatrix& m) {
  auto ech = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivot_columns) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(cols);
    x[f] = 1;
    for (std::size_t k = 0; k < ech.pivot_columns.size(); ++k)
      if (sgn(ech.reduced(k, f)) != 0) x[ech.pivot_columns[k]] = -ech.reduced(k, f);
    basis.push_back(std::move(x));
  }
  return RatMatrix::from_columns(cols, basis);
}

std::vector<std::size_t> independent_columns(const RatMatrix& m) { return rref(m).pivot_columns; }

std::optional<RatMatrix> solve_many(const RatMatrix& m, const RatMatrix& rhs) {
  if (rhs.rows() != m.rows()) throw Error("solve: right-hand side has wrong length");
  auto ech = rref(m.hstack(rhs));
  const std::size_t n = m.cols();
  RatMatrix x(n, rhs.cols());
  for (std::size_t k = 0; k < ech.pivot_columns.size(); ++k) {
    std::size_t pc = ech.pivot_columns[k];
    if (pc >= n) return std::nullopt;
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(pc, j) = ech.reduced(k, n + j);
  }
  return x;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  auto x = solve_many(m, RatMatrix::from_columns(b.size(), {b}));
  if (!x) return std::nullopt;
  return x->column(0);
}

std::optional<RatVector> inconsistency_witness(const RatMatrix& m, const RatVector& b) {
  if (solve(m, b)) return std::nullopt;
  RatMatrix left = kernel_basis(m.transposed());
  for (std::size_t c = 0; c < left.cols(); ++c) {
    RatVector y = left.column(c);
    Rational dot = 0;
    for (std::size_t i = 0; i < y.size(); ++i) dot += y[i] * b[i];
    if (sgn(dot) != 0) return y;
  }
  throw Error("inconsistency_witness: no left annihilator found for inconsistent system");
}

// ---------------------------------------------------------------------------

GradedComplex::GradedComplex(int lo, std::vector<std::size_t> dims, std::vector<RatMatrix> diffs)
    : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
  if (diffs_.size() > dims_.size()) throw Error("GradedComplex: too many differentials");
  while (diffs_.size() + 1 < dims_.size() || (diffs_.size() < dims_.size() && dims_.empty()))
    diffs_.emplace_back();
  for (std::size_t k = 0; k + 1 < dims_.size(); ++k) {
    auto& dk = diffs_[k];
    if (dk.rows() == 0 && dk.cols() == 0) dk = RatMatrix(dims_[k + 1], dims_[k]);
    if (dk.rows() != dims_[k + 1] || dk.cols() != dims_[k]) {
      std::ostringstream os;
      os << "GradedComplex: d_" << lo_ + static_cast<int>(k) << " has shape " << dk.rows() << "x"
         << dk.cols() << ", expected " << dims_[k + 1] << "x" << dims_[k];
      throw ComplexError(os.str(), lo_ + static_cast<int>(k));
    }
  }
  diffs_.resize(dims_.empty() ? 0 : dims_.size() - 1);
}

std::size_t GradedComplex::dim(int n) const {
  if (n < lo_ || n > hi()) return 0;
  return dims_[static_cast<std::size_t>(n - lo_)];
}

RatMatrix GradedComplex::d(int n) const {
  if (n < lo_ || n >= hi()) return RatMatrix(dim(n + 1), dim(n));
  return diffs_[static_cast<std::size_t>(n - lo_)];
}

void GradedComplex::validate() const {
  for (int n = lo_; n + 1 < hi(); ++n) {
    if (!(d(n + 1) * d(n)).is_zero()) {
      std::ostringstream os;
      os << "d∘d ≠ 0 at degree " << n;
      throw ComplexError(os.str(), n);
    }
  }
}

long GradedComplex::euler_characteristic() const {
  long chi = 0;
  for (int n = lo_; n <= hi(); ++n) chi += ((n % 2 == 0) ? 1 : -1) * static_cast<long>(dim(n));
  return chi;
}

GradedComplex GradedComplex::shifted(int k) const {
  std::vector<RatMatrix> ds;
  Rational sign = (k % 2 == 0) ? 1 : -1;
  for (const auto& m : diffs_) ds.push_back(sign * m);
  return GradedComplex(lo_ - k, dims_, std::move(ds));
}

GradedComplex GradedComplex::direct_sum(const std::vector<GradedComplex>& parts) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!any) {
      lo = p.lo();
      hi = p.hi();
      any = true;
    } else {
      lo = std::min(lo, p.lo());
      hi = std::max(hi, p.hi());
    }
  }
  if (!any) return GradedComplex::zero();
  std::vector<std::size_t> dims;
  std::vector<RatMatrix> ds;
  for (int n = lo; n <= hi; ++n) {
    std::size_t total = 0;
    for (const auto& p : parts) total += p.dim(n);
    dims.push_back(total);
  }
  for (int n = lo; n < hi; ++n) {
    RatMatrix m(dims[static_cast<std::size_t>(n + 1 - lo)], dims[static_cast<std::size_t>(n - lo)]);
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      m.set_block(r, c, p.d(n));
      r += p.dim(n + 1);
      c += p.dim(n);
    }
    ds.push_back(std::move(m));
  }
  return GradedComplex(lo, std::move(dims), std::move(ds));
}

// ---------------------------------------------------------------------------

CohomologyReport::CohomologyReport(GradedComplex complex, std::vector<CohomologyDegree> degrees)
    : complex_(std::move(complex)), degrees_(std::move(degrees)) {}

const CohomologyDegree* CohomologyReport::degree(int n) const {
  for (const auto& d : degrees_)
    if (d.degree == n) return &d;
  return nullptr;
}

std::size_t CohomologyReport::dim(int n) const {
  const auto* d = degree(n);
  return d ? d->dim : 0;
}

std::vector<int> CohomologyReport::degrees() const {
  std::vector<int> out;
  for (const auto& d : degrees_) out.push_back(d.degree);
  return out;
}

long CohomologyReport::euler_characteristic() const {
  long chi = 0;
  for (const auto& d : degrees_)
    chi += ((d.degree % 2 == 0) ? 1 : -1) * static_cast<long>(d.dim);
  return chi;
}

RatVector CohomologyReport::class_of(int n, const RatVector& z) const {
  if (z.size() != complex_.dim(n)) throw PreconditionError("class_of: vector has wrong length");
  if (!is_zero(complex_.d(n) * z)) throw PreconditionError("class_of: vector is not a cocycle");
  const auto* d = degree(n);
  if (!d || d->dim == 0) return {};
  auto x = solve(d->adapted_basis, z);
  if (!x) throw Error("class_of: cocycle outside adapted basis span");
  return RatVector(x->begin() + static_cast<long>(d->boundary_dim), x->end());
}

std::optional<RatVector> CohomologyReport::solve_membership(int n, const RatVector& v) const {
  return solve(complex_.d(n - 1), v);
}

RatVector CohomologyReport::representative(int n, const RatVector& c) const {
  const auto* d = degree(n);
  if (!d) return RatVector(complex_.dim(n));
  return d->representatives * c;
}

CohomologyReport cohomology(const GradedComplex& c) {
  c.validate();
  std::vector<CohomologyDegree> out;
  if (c.empty()) return CohomologyReport(c, out);
  for (int n = c.lo(); n <= c.hi(); ++n) {
    CohomologyDegree h;
    h.degree = n;
    RatMatrix z = kernel_basis(c.d(n));
    RatMatrix dprev = c.d(n - 1);
    auto bcols = independent_columns(dprev);
    RatMatrix b(c.dim(n), bcols.size());
    for (std::size_t k = 0; k < bcols.size(); ++k) b.set_column(k, dprev.column(bcols[k]));
    auto sel = independent_columns(b.hstack(z));
    std::vector<RatVector> reps;
    for (auto col : sel)
      if (col >= b.cols()) reps.push_back(z.column(col - b.cols()));
    h.cocycle_dim = z.cols();
    h.boundary_dim = b.cols();
    h.dim = reps.size();
    h.representatives = RatMatrix::from_columns(c.dim(n), reps);
    h.adapted_basis = b.hstack(h.representatives);
    out.push_back(std::move(h));
  }
  return CohomologyReport(c, std::move(out));
}

// ---------------------------------------------------------------------------

std::size_t DoubleComplex::dim(int p, int q) const {
  int i = p - p_lo, j = q - q_lo;
  if (i < 0 || j < 0 || i >= static_cast<int>(p_count) || j >= static_cast<int>(q_count)) return 0;
  return dims[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

namespace {

RatMatrix grid_map(const std::vector<std::vector<RatMatrix>>& grid, int i, int j, std::size_t rows,
                   std::size_t cols) {
  if (i < 0 || j < 0 || i >= static_cast<int>(grid.size())) return RatMatrix(rows, cols);
  const auto& col = grid[static_cast<std::size_t>(i)];
  if (j >= static_cast<int>(col.size())) return RatMatrix(rows, cols);
  const auto& m = col[static_cast<std::size_t>(j)];
  if (m.rows() == 0 && m.cols() == 0) return RatMatrix(rows, cols);
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << "double complex map at (" << i << "," << j << ") has shape " << m.rows() << "x"
       << m.cols() << ", expected " << rows << "x" << cols;
    throw ComplexError(os.str(), i + j);
  }
  return m;
}

}  // namespace

RatMatrix DoubleComplex::dh(int p, int q) const {
  return grid_map(horizontal, p - p_lo, q - q_lo, dim(p + 1, q), dim(p, q));
}

RatMatrix DoubleComplex::dv(int p, int q) const {
  return grid_map(vertical, p - p_lo, q - q_lo, dim(p, q + 1), dim(p, q));
}

std::vector<std::pair<int, std::size_t>> total_block_offsets(const DoubleComplex& dc, int n) {
  std::vector<std::pair<int, std::size_t>> out;
  std::size_t off = 0;
  for (int p = dc.p_lo; p < dc.p_lo + static_cast<int>(dc.p_count); ++p) {
    int q = n - p;
    out.emplace_back(p, off);
    off += dc.dim(p, q);
  }
  return out;
}

GradedComplex total_complex(const DoubleComplex& dc) {
  const int p_hi = dc.p_lo + static_cast<int>(dc.p_count) - 1;
  const int q_hi = dc.q_lo + static_cast<int>(dc.q_count) - 1;
  for (int p = dc.p_lo; p <= p_hi; ++p)
    for (int q = dc.q_lo; q <= q_hi; ++q) {
      if (!(dc.dh(p + 1, q) * dc.dh(p, q)).is_zero())
        throw ComplexError("horizontal d² ≠ 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")", p + q);
      if (!(dc.dv(p, q + 1) * dc.dv(p, q)).is_zero())
        throw ComplexError("vertical d² ≠ 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")", p + q);
      if (!(dc.dv(p + 1, q) * dc.dh(p, q) == dc.dh(p, q + 1) * dc.dv(p, q)))
        throw ComplexError("square at (" + std::to_string(p) + "," + std::to_string(q) +
                               ") does not commute",
                           p + q);
    }
  if (dc.p_count == 0 || dc.q_count == 0) return GradedComplex::zero();
  const int lo = dc.p_lo + dc.q_lo, hi = p_hi + q_hi;
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) {
    std::size_t t = 0;
    for (int p = dc.p_lo; p <= p_hi; ++p) t += dc.dim(p, n - p);
    dims.push_back(t);
  }
  std::vector<RatMatrix> ds;
  for (int n = lo; n < hi; ++n) {
    auto src = total_block_offsets(dc, n);
    auto tgt = total_block_offsets(dc, n + 1);
    RatMatrix m(dims[static_cast<std::size_t>(n + 1 - lo)], dims[static_cast<std::size_t>(n - lo)]);
    for (std::size_t k = 0; k < src.size(); ++k) {
      int p = src[k].first, q = n - p;
      std::size_t c0 = src[k].second;
      if (dc.dim(p, q) == 0) continue;
      // horizontal into (p+1, q)
      if (k + 1 < tgt.size() && dc.dim(p + 1, q) > 0) m.set_block(tgt[k + 1].second, c0, dc.dh(p, q));
      // vertical into (p, q+1) with sign (−1)^p
      if (dc.dim(p, q + 1) > 0) {
        Rational sign = (p % 2 == 0) ? 1 : -1;
        m.set_block(tgt[k].second, c0, sign * dc.dv(p, q));
      }
    }
    ds.push_back(std::move(m));
  }
  GradedComplex tot(lo, std::move(dims), std::move(ds));
  tot.validate();
  return tot;
}

// ---------------------------------------------------------------------------

RatMatrix ChainMap::at(int n, std::size_t rows, std::size_t cols) const {
  int k = n - lo;
  if (k < 0 || k >= static_cast<int>(maps.size())) return RatMatrix(rows, cols);
  const auto& m = maps[static_cast<std::size_t>(k)];
  if (m.rows() == 0 && m.cols() == 0) return RatMatrix(rows, cols);
  if (m.rows() != rows || m.cols() != cols)
    throw ComplexError("chain map has wrong shape in degree " + std::to_string(n), n);
  return m;
}

void check_chain_map(const GradedComplex& src, const GradedComplex& tgt, const ChainMap& f) {
  int lo = std::min(src.lo(), tgt.lo()) - 1;
  int hi = std::max(src.hi(), tgt.hi()) + 1;
  for (int n = lo; n <= hi; ++n) {
    RatMatrix fn = f.at(n, tgt.dim(n), src.dim(n));
    RatMatrix fn1 = f.at(n + 1, tgt.dim(n + 1), src.dim(n + 1));
    if (!(fn1 * src.d(n) == tgt.d(n) * fn))
      throw ComplexError("map does not commute with differentials in degree " + std::to_string(n), n);
  }
}

RatMatrix induced_map(const CohomologyReport& src, const CohomologyReport& tgt, const ChainMap& f,
                      int n) {
  const auto& sc = src.complex();
  const auto& tc = tgt.complex();
  RatMatrix fn = f.at(n, tc.dim(n), sc.dim(n));
  std::size_t hs = src.dim(n), ht = tgt.dim(n);
  RatMatrix m(ht, hs);
  for (std::size_t k = 0; k < hs; ++k) {
    RatVector e(hs);
    e[k] = 1;
    RatVector image = fn * src.representative(n, e);
    if (ht > 0) m.set_column(k, tgt.class_of(n, image));
  }
  return m;
}

bool LongExactSequence::all_exact() const {
  return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; });
}

int first_inexact_node(const LongExactSequence& seq) {
  for (std::size_t k = 0; k < seq.nodes.size(); ++k) {
    std::size_t in = k == 0 ? seq.boundary_in_rank : seq.maps[k - 1].rank;
    std::size_t out = k + 1 == seq.nodes.size() ? seq.boundary_out_rank : seq.maps[k].rank;
    if (in + out != seq.nodes[k].dim) return static_cast<int>(k);
    if (k + 1 < seq.nodes.size() && k > 0 && !seq.maps[k - 1].composes_to_zero)
      return static_cast<int>(k);
  }
  return -1;
}

namespace {

RatMatrix connecting_map(const CohomologyReport& ha, const CohomologyReport& hb,
                         const CohomologyReport& hc, const ChainMap& iota, const ChainMap& rho,
                         int n) {
  const auto& a = ha.complex();
  const auto& b = hb.complex();
  const auto& c = hc.complex();
  std::size_t hcn = hc.dim(n), han = ha.dim(n + 1);
  RatMatrix m(han, hcn);
  RatMatrix rho_n = rho.at(n, c.dim(n), b.dim(n));
  RatMatrix iota_n1 = iota.at(n + 1, b.dim(n + 1), a.dim(n + 1));
  for (std::size_t k = 0; k < hcn; ++k) {
    RatVector e(hcn);
    e[k] = 1;
    auto lift = solve(rho_n, hc.representative(n, e));
    if (!lift) throw PreconditionError("connecting map: ρ not surjective");
    RatVector db = b.d(n) * *lift;
    auto pre = solve(iota_n1, db);
    if (!pre) throw PreconditionError("connecting map: d(lift) not in image of ι");
    if (han > 0) m.set_column(k, ha.class_of(n + 1, *pre));
  }
  return m;
}

}  // namespace

LongExactSequence long_exact_sequence(const GradedComplex& a, const GradedComplex& b,
                                      const GradedComplex& c, const ChainMap& iota,
                                      const ChainMap& rho, int first, int last,
                                      const std::string& name, const std::string& label_a,
                                      const std::string& label_b, const std::string& label_c) {
  check_chain_map(a, b, iota);
  check_chain_map(b, c, rho);
  int lo = std::min({a.lo(), b.lo(), c.lo()});
  int hi = std::max({a.hi(), b.hi(), c.hi()});
  for (int n = lo; n <= hi; ++n) {
    RatMatrix in = iota.at(n, b.dim(n), a.dim(n));
    RatMatrix out = rho.at(n, c.dim(n), b.dim(n));
    if (rank(in) != a.dim(n))
      throw PreconditionError("ι is not injective in degree " + std::to_string(n));
    if (rank(out) != c.dim(n))
      throw PreconditionError("ρ is not surjective in degree " + std::to_string(n));
    if (!(out * in).is_zero() || a.dim(n) + c.dim(n) != b.dim(n))
      throw PreconditionError("sequence is not exact in the middle in degree " + std::to_string(n));
  }
  auto ha = cohomology(a), hb = cohomology(b), hc = cohomology(c);

  LongExactSequence seq;
  seq.name = name;
  std::vector<RatMatrix> mats;
  auto label = [](const std::string& l, int n) { return l + "^" + std::to_string(n); };
  for (int n = first; n <= last; ++n) {
    seq.nodes.push_back({label(label_a, n), n, ha.dim(n)});
    seq.nodes.push_back({label(label_b, n), n, hb.dim(n)});
    seq.nodes.push_back({label(label_c, n), n, hc.dim(n)});
    mats.push_back(induced_map(ha, hb, iota, n));
    mats.push_back(induced_map(hb, hc, rho, n));
    if (n < last) mats.push_back(connecting_map(ha, hb, hc, iota, rho, n));
  }
  seq.boundary_in_rank = rank(connecting_map(ha, hb, hc, iota, rho, first - 1));
  seq.boundary_out_rank = rank(connecting_map(ha, hb, hc, iota, rho, last));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    SequenceMap sm;
    sm.rank = rank(mats[k]);
    if (k + 1 < mats.size()) sm.composes_to_zero = (mats[k + 1] * mats[k]).is_zero();
    seq.maps.push_back(sm);
  }
  for (std::size_t k = 0; k < seq.nodes.size(); ++k) {
    std::size_t in = k == 0 ? seq.boundary_in_rank : seq.maps[k - 1].rank;
    std::size_t out = k + 1 == seq.nodes.size() ? seq.boundary_out_rank : seq.maps[k].rank;
    bool zero_comp = (k == 0 || k + 1 == seq.nodes.size()) ? true : seq.maps[k - 1].composes_to_zero;
    seq.exact.push_back(in + out == seq.nodes[k].dim && zero_comp);
  }
  return seq;
}

}  // namespace dk
