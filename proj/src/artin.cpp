#include "dk/artin.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "dk/error.hpp"

namespace dk {

ArtinLocalAlgebra make_truncated(std::vector<std::string> vars, std::optional<int> total_degree,
                                 std::optional<std::vector<int>> exponents) {
  if (vars.empty()) throw PreconditionError("an Artin algebra needs at least one variable");
  if (total_degree && *total_degree < 1) throw PreconditionError("total-degree cutoff must be at least 1");
  if (exponents) {
    if (exponents->size() != vars.size()) throw PreconditionError("one exponent bound per variable is required");
    for (int e : *exponents)
      if (e < 1) throw PreconditionError("exponent bounds must be at least 1");
  }
  std::vector<int> bound(vars.size(), -1);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (exponents) bound[v] = (*exponents)[v];
    if (total_degree) bound[v] = bound[v] < 0 ? *total_degree : std::min(bound[v], *total_degree);
    if (bound[v] < 0) throw PreconditionError("truncation leaves variable '" + vars[v] + "' unbounded; the algebra is not Artinian");
  }

  ArtinLocalAlgebra a;
  a.vars_ = std::move(vars);
  std::vector<int> e(a.vars_.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == e.size()) {
      int deg = 0;
      for (int x : e) deg += x;
      if (deg == 0) return;
      if (total_degree && deg >= *total_degree) return;
      a.monomials_.push_back(e);
      return;
    }
    for (int x = 0; x < bound[v]; ++x) {
      e[v] = x;
      rec(v + 1);
    }
    e[v] = 0;
  };
  rec(0);
  auto degree = [](const ArtinLocalAlgebra::Exponents& m) {
    int d = 0;
    for (int x : m) d += x;
    return d;
  };
  std::sort(a.monomials_.begin(), a.monomials_.end(), [&](const auto& x, const auto& y) {
    int dx = degree(x), dy = degree(y);
    if (dx != dy) return dx < dy;
    return x > y;
  });
  for (const auto& m : a.monomials_) a.orders_.push_back(degree(m));

  std::map<ArtinLocalAlgebra::Exponents, int> index;
  for (std::size_t i = 0; i < a.monomials_.size(); ++i) index[a.monomials_[i]] = static_cast<int>(i);
  std::size_t n = a.dim();
  a.table_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto p = a.monomials_[i];
      for (std::size_t v = 0; v < p.size(); ++v) p[v] += a.monomials_[j][v];
      auto it = index.find(p);
      if (it != index.end()) a.table_[i * n + j] = it->second;
    }
  int top = 0;
  for (int o : a.orders_) top = std::max(top, o);
  a.nilpotency_ = top + 1;
  return a;
}

std::vector<std::size_t> ArtinLocalAlgebra::filtration_dims() const {
  std::vector<std::size_t> out;
  for (int k = 1; k <= nilpotency_; ++k) {
    std::size_t c = 0;
    for (int o : orders_)
      if (o >= k) ++c;
    out.push_back(c);
  }
  return out;
}

std::optional<std::size_t> ArtinLocalAlgebra::index_of(const Exponents& e) const {
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    if (monomials_[i] == e) return i;
  return std::nullopt;
}

std::string ArtinLocalAlgebra::monomial_name(std::size_t i) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    int x = monomials_[i][v];
    if (x == 0) continue;
    if (!first) os << "*";
    os << vars_[v];
    if (x > 1) os << "^" << x;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

TensorDGLA::TensorDGLA(const DGLieAlgebra& l, const ArtinLocalAlgebra& a) : l_(&l), a_(&a) {}

RatVector TensorDGLA::embed(int n, const RatVector& x, std::size_t alpha) const {
  RatVector v = zero(n);
  for (std::size_t i = 0; i < x.size(); ++i) v[index(i, alpha)] = x[i];
  return v;
}

RatVector TensorDGLA::coefficient(int n, const RatVector& v, std::size_t alpha) const {
  RatVector x(l_->dim(n));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = v[index(i, alpha)];
  return x;
}

RatVector TensorDGLA::bracket(int p, const RatVector& x, int q, const RatVector& y) const {
  RatVector out = zero(p + q);
  if (!l_->has_bracket(p, q)) return out;
  std::size_t m = a_->dim();
  std::vector<SparseVec> xs(m), ys(m);
  for (std::size_t i = 0; i < l_->dim(p); ++i)
    for (std::size_t al = 0; al < m; ++al)
      if (!is_zero(x[index(i, al)])) xs[al].emplace_back(i, x[index(i, al)]);
  for (std::size_t j = 0; j < l_->dim(q); ++j)
    for (std::size_t be = 0; be < m; ++be)
      if (!is_zero(y[index(j, be)])) ys[be].emplace_back(j, y[index(j, be)]);
  for (std::size_t al = 0; al < m; ++al) {
    if (xs[al].empty()) continue;
    for (std::size_t be = 0; be < m; ++be) {
      if (ys[be].empty()) continue;
      int g = a_->product(al, be);
      if (g < 0) continue;
      for (const auto& [k, c] : l_->bracket(p, xs[al], q, ys[be]))
        out[index(k, static_cast<std::size_t>(g))] += c;
    }
  }
  return out;
}

RatVector TensorDGLA::d(int n, const RatVector& x) const {
  RatVector out = zero(n + 1);
  if (l_->dim(n + 1) == 0) return out;
  RatMatrix dn = l_->complex().d(n);
  std::size_t m = a_->dim();
  for (std::size_t al = 0; al < m; ++al) {
    RatVector y = dn * coefficient(n, x, al);
    for (std::size_t k = 0; k < y.size(); ++k) out[index(k, al)] = y[k];
  }
  return out;
}

RatVector TensorDGLA::truncate(int n, const RatVector& x, int k) const {
  RatVector out = x;
  for (std::size_t i = 0; i < l_->dim(n); ++i)
    for (std::size_t al = 0; al < a_->dim(); ++al)
      if (a_->order(al) > k) out[index(i, al)] = 0;
  return out;
}

RatVector TensorDGLA::homogeneous(int n, const RatVector& x, int k) const {
  RatVector out = x;
  for (std::size_t i = 0; i < l_->dim(n); ++i)
    for (std::size_t al = 0; al < a_->dim(); ++al)
      if (a_->order(al) != k) out[index(i, al)] = 0;
  return out;
}

int TensorDGLA::valuation(int n, const RatVector& x) const {
  int v = a_->nilpotency();
  for (std::size_t i = 0; i < l_->dim(n); ++i)
    for (std::size_t al = 0; al < a_->dim(); ++al)
      if (!is_zero(x[index(i, al)])) v = std::min(v, a_->order(al));
  return v;
}

RatVector TensorDGLA::exp_ad(const RatVector& a, int n, const RatVector& x) const {
  RatVector out = x, term = x;
  for (int k = 1; k < a_->nilpotency(); ++k) {
    term = ratio(1, k) * bracket(0, a, n, term);  // ad(a)^k x / k!
    if (is_zero(term)) break;
    out += term;
  }
  return out;
}

DGLieAlgebra TensorDGLA::materialize() const {
  const GradedComplex& c = l_->complex();
  if (c.empty() || a_->dim() == 0) return DGLieAlgebra(GradedComplex::zero());
  std::size_t m = a_->dim();
  std::vector<std::size_t> dims;
  std::vector<RatMatrix> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) dims.push_back(dim(n));
  for (int n = c.lo(); n < c.hi(); ++n) {
    RatMatrix d(dim(n + 1), dim(n));
    RatMatrix dn = c.d(n);
    for (std::size_t r = 0; r < dn.rows(); ++r)
      for (std::size_t col = 0; col < dn.cols(); ++col)
        if (!is_zero(dn(r, col)))
          for (std::size_t al = 0; al < m; ++al) d(index(r, al), index(col, al)) = dn(r, col);
    diffs.push_back(std::move(d));
  }
  DGLieAlgebra out(GradedComplex(c.lo(), dims, diffs));
  for (int p = c.lo(); p <= c.hi(); ++p)
    for (int q = c.lo(); q <= c.hi(); ++q) {
      if (!l_->has_bracket(p, q)) continue;
      for (std::size_t i = 0; i < l_->dim(p); ++i)
        for (std::size_t j = 0; j < l_->dim(q); ++j) {
          const SparseVec& v = l_->bracket_basis(p, i, q, j);
          if (v.empty()) continue;
          for (std::size_t al = 0; al < m; ++al)
            for (std::size_t be = 0; be < m; ++be) {
              int g = a_->product(al, be);
              if (g < 0) continue;
              SparseVec w;
              for (const auto& [k, coef] : v) w.emplace_back(index(k, static_cast<std::size_t>(g)), coef);
              std::sort(w.begin(), w.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
              out.set_bracket(p, index(i, al), q, index(j, be), std::move(w));
            }
        }
    }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Rational> bernoulli_numbers(int n) {
  // Σ_{k=0}^{m} C(m+1,k) B_k = 0
  std::vector<Rational> b(static_cast<std::size_t>(n + 1));
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s(0);
    mpz_class binom = 1;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      s += Rational(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  return b;
}

RatVector bch(const TensorDGLA& t, const RatVector& a, const RatVector& b) {
  // Z_1 = a + b;
  // (n+1) Z_{n+1} = ½[a−b, Z_n] + Σ_{p≥1, 2p≤n} B_{2p}/(2p)! Σ_{k_1+..+k_{2p}=n}
  //                 [Z_{k_1},[…,[Z_{k_{2p}}, a+b]…]]
  // Z_n lies in m^n, so the series stops below the nilpotency index.
  const int top = t.ring().nilpotency() - 1;
  std::vector<RatVector> z(static_cast<std::size_t>(top + 2));
  RatVector sum = a + b;
  if (top < 1) return t.zero(0);
  z[1] = sum;
  RatVector diff = a - b;
  auto bern = bernoulli_numbers(top + 1);
  for (int n = 1; n < top; ++n) {
    RatVector next = ratio(1, 2) * t.bracket(0, diff, 0, z[static_cast<std::size_t>(n)]);
    for (int p = 1; 2 * p <= n; ++p) {
      Rational coef = bern[static_cast<std::size_t>(2 * p)];
      for (int j = 2; j <= 2 * p; ++j) coef /= j;
      if (is_zero(coef)) continue;
      // all compositions of n into 2p positive parts
      std::vector<int> parts(static_cast<std::size_t>(2 * p), 1);
      std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx == 2 * p - 1) {
          parts[static_cast<std::size_t>(idx)] = remaining;
          RatVector acc = sum;
          for (int k = 2 * p - 1; k >= 0; --k)
            acc = t.bracket(0, z[static_cast<std::size_t>(parts[static_cast<std::size_t>(k)])], 0, acc);
          add_scaled(next, coef, acc);
          return;
        }
        for (int v = 1; v <= remaining - (2 * p - 1 - idx); ++v) {
          parts[static_cast<std::size_t>(idx)] = v;
          rec(idx + 1, remaining - v);
        }
      };
      rec(0, n);
    }
    z[static_cast<std::size_t>(n + 1)] = ratio(1, n + 1) * next;
  }
  RatVector out = t.zero(0);
  for (int n = 1; n <= top; ++n) out += z[static_cast<std::size_t>(n)];
  return out;
}

}  // namespace dk
