#include "dk/triples.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "dk/artin.hpp"
#include "dk/error.hpp"

namespace dk {

namespace {

std::string tag(const std::string& base, int n) { return base + "^" + std::to_string(n); }

PolyMatrix zeros(std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, std::vector<Poly>(cols));
}

void put(PolyMatrix& m, std::size_t r0, std::size_t c0, const PolyMatrix& b,
         const Rational& c = Rational(1)) {
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b[i].size(); ++j) m[r0 + i][c0 + j] = m[r0 + i][c0 + j] + c * b[i][j];
}

PolyMatrix identity(std::size_t n) {
  PolyMatrix m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Poly::constant(1);
  return m;
}

/// A global section f₀ of O(twist) written on chart u.
Poly on_chart(const Poly& f0, int twist, P1Open u) {
  if (f0.is_zero()) return f0;
  if (f0.degree() > twist)
    throw PreconditionError(f0.to_string() + " is not a global section of O(" + std::to_string(twist) + ")");
  return u == P1Open::U1 ? f0.reversed(twist) : f0;
}

Rational sign(int n) { return n % 2 == 0 ? Rational(1) : Rational(-1); }

/// Component f_k[β][α] of Hom^n: E^k → E^{k+n}.
struct Comp {
  int k;
  std::size_t beta, alpha;
  bool operator==(const Comp& o) const { return k == o.k && beta == o.beta && alpha == o.alpha; }
};

class Layout {
 public:
  explicit Layout(const P1Resolution& r) : r_(r) {}

  int lo() const { return r_.lo; }
  std::size_t rank(int k) const { return r_.rank(k); }
  int twist(int k, std::size_t a) const { return r_.twists[static_cast<std::size_t>(k - r_.lo)][a]; }

  std::vector<Comp> hom(int n) const {
    std::vector<Comp> out;
    for (int k = r_.lo; k <= 0; ++k) {
      if (k + n < r_.lo || k + n > 0) continue;
      for (std::size_t b = 0; b < rank(k + n); ++b)
        for (std::size_t a = 0; a < rank(k); ++a) out.push_back({k, b, a});
    }
    return out;
  }
  std::size_t hom_size(int n) const { return hom(n).size(); }
  std::size_t p_size(int n) const { return hom_size(n) + (n == 0 ? 1 : 0); }
  std::size_t e_size(int k) const { return k >= r_.lo && k <= 0 ? rank(k) : 0; }

  static std::size_t index(const std::vector<Comp>& cs, const Comp& c) {
    return static_cast<std::size_t>(std::find(cs.begin(), cs.end(), c) - cs.begin());
  }

  std::vector<std::string> e_atoms(int k) const {
    std::vector<std::string> out;
    for (std::size_t a = 0; a < e_size(k); ++a) out.push_back(tag("E", k) + "#" + std::to_string(a));
    return out;
  }
  std::vector<std::string> hom_atoms(int n) const {
    std::vector<std::string> out;
    for (const Comp& c : hom(n))
      out.push_back(tag("Hom", n) + "#" + std::to_string(c.k) + "," + std::to_string(c.beta) + "," +
                    std::to_string(c.alpha));
    return out;
  }
  std::vector<std::string> p_atoms(int n) const {
    auto out = hom_atoms(n);
    if (n == 0) out.push_back("symbol");
    return out;
  }

  /// ∂_k on chart u, rows E^{k+1}.
  Poly d(int k, std::size_t g, std::size_t a, P1Open u) const {
    const Poly& f = r_.diffs[static_cast<std::size_t>(k - r_.lo)][g][a];
    return on_chart(f, twist(k + 1, g) - twist(k, a), u);
  }
  PolyMatrix d_matrix(int k, P1Open u) const {
    PolyMatrix m = zeros(e_size(k + 1), e_size(k));
    for (std::size_t g = 0; g < m.size(); ++g)
      for (std::size_t a = 0; a < e_size(k); ++a) m[g][a] = d(k, g, a, u);
    return m;
  }
  Poly s(std::size_t a, P1Open u) const { return on_chart(r_.section[a], twist(0, a), u); }

  LaurentMatrix e_transition(int k) const {
    LaurentMatrix m(rank(k), std::vector<Laurent>(rank(k)));
    for (std::size_t a = 0; a < rank(k); ++a) m[a][a] = Laurent::monomial(twist(k, a));
    return m;
  }
  LaurentMatrix hom_transition(int n) const {
    auto cs = hom(n);
    LaurentMatrix m(cs.size(), std::vector<Laurent>(cs.size()));
    for (std::size_t i = 0; i < cs.size(); ++i)
      m[i][i] = Laurent::monomial(twist(cs[i].k + n, cs[i].beta) - twist(cs[i].k, cs[i].alpha));
    return m;
  }
  /// Hom^0 plus the symbol; the frame change of a diagonal entry couples to it.
  LaurentMatrix p_transition(int n) const {
    LaurentMatrix m = hom_transition(n);
    if (n != 0) return m;
    auto cs = hom(0);
    std::size_t sym = cs.size();
    for (auto& row : m) row.emplace_back();
    m.emplace_back(sym + 1);
    for (std::size_t i = 0; i < sym; ++i)
      if (cs[i].alpha == cs[i].beta) m[i][sym] = Laurent::monomial(1, Rational(twist(cs[i].k, cs[i].alpha)));
    m[sym][sym] = Laurent::monomial(2, Rational(-1));
    return m;
  }

  /// d: P^n → P^{n+1} (Hom when the symbols are absent).
  PolyMatrix hom_d(int n, P1Open u, bool with_symbol) const {
    auto src = hom(n), tgt = hom(n + 1);
    bool src_sym = with_symbol && n == 0, tgt_sym = with_symbol && n == -1;
    PolyMatrix m = zeros(tgt.size() + (tgt_sym ? 1 : 0), src.size() + (src_sym ? 1 : 0));
    for (std::size_t j = 0; j < src.size(); ++j) {
      const Comp& c = src[j];
      if (c.k + n + 1 <= 0)
        for (std::size_t g = 0; g < rank(c.k + n + 1); ++g) {
          std::size_t i = index(tgt, {c.k, g, c.alpha});
          m[i][j] = m[i][j] + d(c.k + n, g, c.beta, u);
        }
      if (c.k - 1 >= r_.lo)
        for (std::size_t a = 0; a < rank(c.k - 1); ++a) {
          std::size_t i = index(tgt, {c.k - 1, c.beta, a});
          m[i][j] = m[i][j] - sign(n) * d(c.k - 1, c.alpha, a, u);
        }
    }
    if (src_sym) {
      std::size_t j = src.size();
      for (int k = r_.lo; k < 0; ++k)
        for (std::size_t g = 0; g < rank(k + 1); ++g)
          for (std::size_t a = 0; a < rank(k); ++a) {
            std::size_t i = index(tgt, {k, g, a});
            m[i][j] = m[i][j] - d(k, g, a, u).derivative();
          }
    }
    return m;
  }

  /// e_s: P^n → E^n, f ↦ f(s); the symbol acts by differentiating s.
  PolyMatrix eval(int n, P1Open u, bool with_symbol) const {
    auto src = hom(n);
    bool sym = with_symbol && n == 0;
    PolyMatrix m = zeros(e_size(n), src.size() + (sym ? 1 : 0));
    for (std::size_t j = 0; j < src.size(); ++j)
      if (src[j].k == 0) m[src[j].beta][j] = m[src[j].beta][j] + s(src[j].alpha, u);
    if (sym)
      for (std::size_t b = 0; b < e_size(0); ++b) m[b][src.size()] = s(b, u).derivative();
    return m;
  }

 private:
  const P1Resolution& r_;
};

Poly poly_det(const PolyMatrix& m) {
  if (m.empty()) return Poly::constant(1);
  Poly r;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t i = 1; i < m.size(); ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * poly_det(minor);
    r = j % 2 == 0 ? r + term : r - term;
  }
  return r;
}

void subsets(std::size_t n, std::size_t r, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  if (r > n) return;
  while (true) {
    out.push_back(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// gcd of the r×r minors (zero when they all vanish).
Poly minor_gcd(const PolyMatrix& m, std::size_t r) {
  if (r == 0) return Poly::constant(1);
  std::size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<std::vector<std::size_t>> rs, cs;
  subsets(m.size(), r, rs);
  subsets(cols, r, cs);
  Poly g;
  for (const auto& ri : rs)
    for (const auto& ci : cs) {
      PolyMatrix sub(r, std::vector<Poly>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub[i][j] = m[ri[i]][ci[j]];
      g = poly_gcd(g, poly_det(sub));
      if (g.degree() == 0) return g;
    }
  return g;
}

/// Rank over the fraction field.
std::size_t poly_rank(const PolyMatrix& m) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  std::size_t r = std::min(m.size(), cols);
  while (r > 0 && minor_gcd(m, r).is_zero()) --r;
  return r;
}

LaurentMatrix block_diag(const LaurentMatrix& a, const LaurentMatrix& b) {
  std::size_t n = a.size() + b.size();
  LaurentMatrix m(n, std::vector<Laurent>(n));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a[i][j];
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m[a.size() + i][a.size() + j] = b[i][j];
  return m;
}

template <class F>
P1Map chart_map(const std::string& name, const std::string& src, const std::string& tgt, F f) {
  return {name, src, tgt, f(P1Open::U0), f(P1Open::U1)};
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t P1Resolution::rank(int k) const {
  if (k < lo || k > 0) return 0;
  return twists[static_cast<std::size_t>(k - lo)].size();
}

int P1Resolution::max_abs_twist() const {
  int m = 0;
  for (const auto& t : twists)
    for (int a : t) m = std::max(m, std::abs(a));
  return m;
}

P1Resolution P1Resolution::line_bundle(int d, const Poly& sigma) {
  P1Resolution r;
  r.lo = 0;
  r.twists = {{d}};
  r.section = {sigma};
  return r;
}

P1Resolution P1Resolution::with_acyclic_pair(int e) const {
  P1Resolution r = *this;
  if (r.lo == 0) {
    r.lo = -1;
    r.twists.insert(r.twists.begin(), std::vector<int>{});
    r.diffs.insert(r.diffs.begin(), PolyMatrix(rank(0)));
  }
  auto& tm1 = r.twists[static_cast<std::size_t>(-1 - r.lo)];
  auto& t0 = r.twists.back();
  tm1.push_back(e);
  t0.push_back(e);
  r.section.emplace_back();
  // ∂_{-1} gains a row (new E⁰ summand) and a column (new E^{-1} summand)
  PolyMatrix& d = r.diffs.back();
  for (auto& row : d) row.emplace_back();
  d.push_back(std::vector<Poly>(tm1.size()));
  d.back().back() = Poly::constant(1);
  // ∂_{-2} gains a zero row
  if (r.diffs.size() >= 2) {
    PolyMatrix& d2 = r.diffs[r.diffs.size() - 2];
    std::size_t cols = r.twists[r.twists.size() - 3].size();
    d2.push_back(std::vector<Poly>(cols));
  }
  return r;
}

void validate_resolution(const P1Resolution& r, int window) {
  if (r.lo > 0) throw PreconditionError("resolution must end in degree 0");
  if (r.twists.size() != static_cast<std::size_t>(1 - r.lo))
    throw PreconditionError("resolution needs one term per degree " + std::to_string(r.lo) + "..0");
  if (r.diffs.size() != static_cast<std::size_t>(-r.lo))
    throw PreconditionError("resolution needs one differential per degree " + std::to_string(r.lo) + "..-1");
  if (r.section.size() != r.rank(0)) throw PreconditionError("section has the wrong number of components");
  Layout l(r);
  for (int k = r.lo; k < 0; ++k) {
    const PolyMatrix& d = r.diffs[static_cast<std::size_t>(k - r.lo)];
    if (d.size() != r.rank(k + 1)) throw PreconditionError("differential " + tag("d", k) + " has the wrong row count");
    for (const auto& row : d)
      if (row.size() != r.rank(k)) throw PreconditionError("differential " + tag("d", k) + " has the wrong column count");
  }
  for (P1Open u : {P1Open::U0, P1Open::U1}) {
    for (int k = r.lo; k < 0; ++k) l.d_matrix(k, u);
    for (std::size_t a = 0; a < r.rank(0); ++a) l.s(a, u);
  }
  for (int k = r.lo; k + 1 < 0; ++k) {
    PolyMatrix a = l.d_matrix(k, P1Open::U0), b = l.d_matrix(k + 1, P1Open::U0);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < (a.empty() ? 0 : a[0].size()); ++j) {
        Poly x;
        for (std::size_t m = 0; m < a.size(); ++m) x = x + b[i][m] * a[m][j];
        if (!x.is_zero()) throw ComplexError("resolution differentials do not square to zero", k);
      }
  }
  // Buchsbaum-Eisenbud over K[t] and K[s]: ranks add up and the ideal of
  // maximal minors of ∂_{-j} is nonzero for j = 1 and the unit ideal beyond
  for (P1Open u : {P1Open::U0, P1Open::U1}) {
    for (int k = r.lo; k < 0; ++k) {
      PolyMatrix d = l.d_matrix(k, u);
      std::size_t rk = poly_rank(d);
      std::size_t below = k == r.lo ? 0 : poly_rank(l.d_matrix(k - 1, u));
      if (rk + below != r.rank(k))
        throw ComplexError("resolution is not exact on " + std::string(u == P1Open::U0 ? "U0" : "U1"), k);
      Poly g = minor_gcd(d, rk);
      if (k < -1 && g.degree() != 0)
        throw ComplexError("resolution is not exact on " + std::string(u == P1Open::U0 ? "U0" : "U1"), k + 1);
    }
  }
  (void)window;
}

TripleModel build_triple_model(const P1Resolution& r, int window) {
  Layout l(r);
  const int lo = r.lo, hom_hi = -lo;
  const int k_hi = std::max(hom_hi, 1);
  TripleModel m;
  P1Diagram& g = m.diagram;

  auto in_hom = [&](int n) { return n >= lo && n <= hom_hi; };
  auto e_trans = [&](int k) { return k >= lo && k <= 0 ? l.e_transition(k) : LaurentMatrix{}; };
  auto h_trans = [&](int n) { return in_hom(n) ? l.hom_transition(n) : LaurentMatrix{}; };
  auto p_trans = [&](int n) { return in_hom(n) ? l.p_transition(n) : LaurentMatrix{}; };
  auto h_atoms = [&](int n) { return in_hom(n) ? l.hom_atoms(n) : std::vector<std::string>{}; };
  auto p_atoms = [&](int n) { return in_hom(n) ? l.p_atoms(n) : std::vector<std::string>{}; };
  auto join = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  for (int k = lo; k <= 0; ++k) g.add_sheaf(P1Sheaf::locally_free(tag("E", k), l.e_transition(k)), l.e_atoms(k));
  for (int n = lo; n <= hom_hi; ++n)
    g.add_sheaf(P1Sheaf::locally_free(tag("Hom", n), l.hom_transition(n)), l.hom_atoms(n));
  for (int i = lo; i <= k_hi; ++i)
    g.add_sheaf(P1Sheaf::locally_free(tag("K", i), block_diag(h_trans(i), e_trans(i - 1))),
                join(h_atoms(i), l.e_atoms(i - 1)));
  for (int i = lo; i <= k_hi; ++i)
    g.add_sheaf(P1Sheaf::locally_free(tag("C", i), block_diag(p_trans(i), e_trans(i - 1))),
                join(p_atoms(i), l.e_atoms(i - 1)));
  for (int n = lo; n <= hom_hi; ++n)
    g.add_sheaf(P1Sheaf::locally_free(tag("P", n), l.p_transition(n)), l.p_atoms(n));
  g.add_sheaf(P1Sheaf::tangent());

  auto hsz = [&](int n) { return n >= lo && n <= hom_hi ? l.hom_size(n) : std::size_t{0}; };
  auto psz = [&](int n) { return n >= lo && n <= hom_hi ? l.p_size(n) : std::size_t{0}; };

  m.resolution = {lo, {}, {}, {}};
  m.shifted = {lo + 1, {}, {}, {}};
  for (int k = lo; k <= 0; ++k) {
    m.resolution.terms.push_back(tag("E", k));
    m.shifted.terms.push_back(tag("E", k));
    if (k == 0) break;
    g.add_map(chart_map(tag("dE", k), tag("E", k), tag("E", k + 1), [&](P1Open u) { return l.d_matrix(k, u); }));
    g.add_map(chart_map(tag("mdE", k), tag("E", k), tag("E", k + 1), [&](P1Open u) {
      PolyMatrix d = zeros(l.e_size(k + 1), l.e_size(k));
      put(d, 0, 0, l.d_matrix(k, u), Rational(-1));
      return d;
    }));
    m.resolution.diffs.push_back(tag("dE", k));
    m.shifted.diffs.push_back(tag("mdE", k));
  }

  m.hom = {lo, {}, {}, {}};
  m.pair = {lo, {}, {}, {}};
  for (int n = lo; n <= hom_hi; ++n) {
    m.hom.terms.push_back(tag("Hom", n));
    m.pair.terms.push_back(tag("P", n));
    if (n == hom_hi) break;
    g.add_map(chart_map(tag("dHom", n), tag("Hom", n), tag("Hom", n + 1),
                        [&](P1Open u) { return l.hom_d(n, u, false); }));
    g.add_map(chart_map(tag("dP", n), tag("P", n), tag("P", n + 1), [&](P1Open u) { return l.hom_d(n, u, true); }));
    m.hom.diffs.push_back(tag("dHom", n));
    m.pair.diffs.push_back(tag("dP", n));
  }

  // cocone differentials: (f, e) ↦ (d f, −(−1)^i f(s) + ∂ e)
  auto cone_d = [&](int i, P1Open u, bool with_symbol) {
    std::size_t s0 = with_symbol ? psz(i) : hsz(i), s1 = with_symbol ? psz(i + 1) : hsz(i + 1);
    PolyMatrix d = zeros(s1 + l.e_size(i), s0 + l.e_size(i - 1));
    if (i >= lo && i < hom_hi) put(d, 0, 0, l.hom_d(i, u, with_symbol));
    if (i >= lo && i <= 0) put(d, s1, 0, l.eval(i, u, with_symbol), -sign(i));
    if (i - 1 >= lo && i <= 0) put(d, s1, s0, l.d_matrix(i - 1, u));
    return d;
  };
  m.k = {lo, {}, {}, {}};
  m.cocone = {lo, {}, {}, {}};
  for (int i = lo; i <= k_hi; ++i) {
    m.k.terms.push_back(tag("K", i));
    m.cocone.terms.push_back(tag("C", i));
    if (i == k_hi) break;
    g.add_map(chart_map(tag("dK", i), tag("K", i), tag("K", i + 1), [&](P1Open u) { return cone_d(i, u, false); }));
    g.add_map(chart_map(tag("dC", i), tag("C", i), tag("C", i + 1), [&](P1Open u) { return cone_d(i, u, true); }));
    m.k.diffs.push_back(tag("dK", i));
    m.cocone.diffs.push_back(tag("dC", i));
  }
  m.theta = {0, {"Theta"}, {}, {}};

  // morphisms
  auto hom_in_p = [&](int n) {
    PolyMatrix x = zeros(psz(n), hsz(n));
    put(x, 0, 0, identity(hsz(n)));
    return x;
  };
  m.k_to_c = {lo, {}};
  m.e_to_c = {lo, {}};
  m.c_to_p = {lo, {}};
  for (int i = lo; i <= k_hi; ++i) {
    g.add_map(chart_map(tag("KC", i), tag("K", i), tag("C", i), [&](P1Open) {
      PolyMatrix x = zeros(psz(i) + l.e_size(i - 1), hsz(i) + l.e_size(i - 1));
      put(x, 0, 0, hom_in_p(i));
      put(x, psz(i), hsz(i), identity(l.e_size(i - 1)));
      return x;
    }));
    m.k_to_c.maps.push_back(tag("KC", i));
    if (i - 1 >= lo && i - 1 <= 0) {
      g.add_map(chart_map(tag("EC", i), tag("E", i - 1), tag("C", i), [&](P1Open) {
        PolyMatrix x = zeros(psz(i) + l.e_size(i - 1), l.e_size(i - 1));
        put(x, psz(i), 0, identity(l.e_size(i - 1)), sign(i));
        return x;
      }));
      m.e_to_c.maps.push_back(tag("EC", i));
    } else {
      m.e_to_c.maps.emplace_back();
    }
    if (i <= hom_hi) {
      g.add_map(chart_map(tag("CP", i), tag("C", i), tag("P", i), [&](P1Open) {
        PolyMatrix x = zeros(psz(i), psz(i) + l.e_size(i - 1));
        put(x, 0, 0, identity(psz(i)));
        return x;
      }));
      m.c_to_p.maps.push_back(tag("CP", i));
    } else {
      m.c_to_p.maps.emplace_back();
    }
  }
  m.hom_to_p = {lo, {}};
  for (int n = lo; n <= hom_hi; ++n) {
    g.add_map(chart_map(tag("HP", n), tag("Hom", n), tag("P", n), [&](P1Open) { return hom_in_p(n); }));
    m.hom_to_p.maps.push_back(tag("HP", n));
  }
  auto symbol_row = [](std::size_t cols, std::size_t at) {
    PolyMatrix x = zeros(1, cols);
    x[0][at] = Poly::constant(1);
    return x;
  };
  g.add_map(chart_map("CT", tag("C", 0), "Theta",
                      [&](P1Open) { return symbol_row(psz(0) + l.e_size(-1), hsz(0)); }));
  g.add_map(chart_map("PT", tag("P", 0), "Theta", [&](P1Open) { return symbol_row(psz(0), hsz(0)); }));
  m.c_to_theta = {0, {"CT"}};
  m.p_to_theta = {0, {"PT"}};

  g.set_window(window);
  return m;
}

// ---------------------------------------------------------------------------

namespace {

struct ModelCohomology {
  Hypercohomology e, shifted, hom, pair, k, cocone, theta;
};

ModelCohomology evaluate(const TripleModel& m) {
  const P1Diagram& g = m.diagram;
  return {hypercohomology(g, m.resolution), hypercohomology(g, m.shifted), hypercohomology(g, m.hom),
          hypercohomology(g, m.pair),       hypercohomology(g, m.k),       hypercohomology(g, m.cocone),
          hypercohomology(g, m.theta)};
}

int last_degree(const P1Resolution& r) { return std::max(-r.lo, 1) + 1; }

int base_window(const P1Resolution& r) { return default_window(r.max_abs_twist()); }

}  // namespace

std::size_t TIReport::t(int i) const {
  return i >= lo && i <= hi ? triple[static_cast<std::size_t>(i - lo)] : 0;
}
std::size_t TIReport::pair_dim(int i) const {
  return i >= lo && i <= hi ? pair[static_cast<std::size_t>(i - lo)] : 0;
}
std::size_t TIReport::sheaf_dim(int i) const {
  return i >= lo && i <= hi ? sheaf[static_cast<std::size_t>(i - lo)] : 0;
}

bool euler_identity(const LongExactSequence& seq) {
  if (seq.boundary_in_rank != 0 || seq.boundary_out_rank != 0) return false;
  long sum = 0;
  for (std::size_t k = 0; k < seq.nodes.size(); ++k)
    sum += (k % 2 == 0 ? 1 : -1) * static_cast<long>(seq.nodes[k].dim);
  return sum == 0;
}

TIReport compute_TI(const P1Resolution& r, std::optional<int> window) {
  int start = window.value_or(base_window(r));
  validate_resolution(r, start);
  const int first = r.lo - 1, last = last_degree(r);
  TIReport out;
  std::map<int, std::pair<TripleModel, ModelCohomology>> tried;
  out.certificate = stabilize(start, start + 24, [&](int n) {
    TripleModel model = build_triple_model(r, n);
    ModelCohomology h = evaluate(model);
    std::vector<std::size_t> dims;
    for (const Hypercohomology* x : {&h.e, &h.hom, &h.pair, &h.k, &h.cocone, &h.theta})
      for (int i = first; i <= last; ++i) dims.push_back(x->dim(i));
    tried.emplace(n, std::make_pair(std::move(model), std::move(h)));
    return dims;
  });

  const auto& [m, h] = tried.at(out.certificate.window);
  const P1Diagram& g = m.diagram;
  for (int i = out.lo; i <= out.hi; ++i) {
    out.triple.push_back(h.cocone.dim(i));
    out.pair.push_back(h.pair.dim(i));
    out.ext.push_back(h.hom.dim(i));
    out.sheaf.push_back(h.e.dim(i));
    out.k.push_back(h.k.dim(i));
    out.theta.push_back(h.theta.dim(i));
  }
  out.support_lo = last + 1;
  out.support_hi = first - 1;
  for (const Hypercohomology* x : {&h.e, &h.hom, &h.pair, &h.k, &h.cocone, &h.theta})
    for (int i = first; i <= last; ++i)
      if (x->dim(i) != 0) {
        out.support_lo = std::min(out.support_lo, i);
        out.support_hi = std::max(out.support_hi, i);
      }

  auto map = [&](const P1Complex& a, const Hypercohomology& ha, const P1Complex& b,
                 const Hypercohomology& hb, const P1Morphism& f) {
    return hypercohomology_map(g, a, ha, b, hb, f);
  };
  out.sequences.push_back(long_exact_sequence(
      h.k.total.complex, h.cocone.total.complex, h.theta.total.complex,
      map(m.k, h.k, m.cocone, h.cocone, m.k_to_c), map(m.cocone, h.cocone, m.theta, h.theta, m.c_to_theta),
      first, last, "K -> C -> Theta", "H(K)", "T(X,F,s)", "H(Theta)"));
  out.sequences.push_back(long_exact_sequence(
      h.hom.total.complex, h.pair.total.complex, h.theta.total.complex,
      map(m.hom, h.hom, m.pair, h.pair, m.hom_to_p), map(m.pair, h.pair, m.theta, h.theta, m.p_to_theta),
      first, last, "Hom -> P -> Theta", "Ext(F,F)", "T(X,F)", "H(Theta)"));
  LongExactSequence c = long_exact_sequence(
      h.shifted.total.complex, h.cocone.total.complex, h.pair.total.complex,
      map(m.shifted, h.shifted, m.cocone, h.cocone, m.e_to_c), map(m.cocone, h.cocone, m.pair, h.pair, m.c_to_p),
      first, last, "F[-1] -> C -> P", "H(E[-1])", "T(X,F,s)", "T(X,F)");
  for (auto& node : c.nodes)
    if (node.label.rfind("H(E[-1])", 0) == 0) node.label = "H(F)^" + std::to_string(node.degree - 1);
  out.sequences.push_back(std::move(c));
  out.euler = std::all_of(out.sequences.begin(), out.sequences.end(), euler_identity);
  return out;
}

ForgetfulReport forgetful_analysis(const TIReport& r) {
  ForgetfulReport out;
  out.h1_sheaf = r.sheaf_dim(1);
  out.criterion_applies = out.h1_sheaf == 0;
  const LongExactSequence* seq = nullptr;
  for (const auto& s : r.sequences)
    if (s.name == "F[-1] -> C -> P") seq = &s;
  if (!seq) throw PreconditionError("report has no forgetful sequence");
  auto rank_at = [&](int n, const std::string& prefix = "T(X,F,s)^") -> std::size_t {
    std::string label = prefix + std::to_string(n);
    for (std::size_t k = 0; k + 1 < seq->nodes.size(); ++k)
      if (seq->nodes[k].label == label) return seq->maps[k].rank;
    return 0;
  };
  out.tangent_rank = rank_at(1);
  out.tangent_surjective = out.tangent_rank == r.pair_dim(1);
  out.tangent_injective = out.tangent_rank == r.t(1);
  out.restriction_rank = rank_at(1, "T(X,F)^");
  out.obstruction_rank = rank_at(2);
  out.obstruction_injective = out.obstruction_rank == r.t(2);
  out.smooth = out.criterion_applies && out.tangent_surjective && out.obstruction_injective;
  return out;
}

TangentDescent tangent_via_descent(const P1Resolution& r, int window) {
  validate_resolution(r, window);
  TripleModel m = build_triple_model(r, window);
  ComplexPresheaf f = p1_presheaf(m.diagram, m.cocone);
  TangentDescent out;
  auto classes = first_order_descent_classes(build_cech_complex(f, Nerve::Ordered, 3));
  out.descent_dim = classes.dimension;
  out.t1 = hypercohomology(m.diagram, m.cocone).dim(1);
  // over K[ε] brackets never reach the answer, so the abelian structure suffices
  DGLAPresheaf lie{f.charts, [&f](const ChartTuple& t) { return abelian(f.sections(t)); }, f.restriction};
  auto s = build_cech_scdgla(lie, Nerve::Ordered, 3);
  auto eps = dual_numbers();
  out.representatives_valid = true;
  for (std::size_t c = 0; c < classes.representatives.cols(); ++c) {
    RatVector col = classes.representatives.column(c);
    RatVector l(col.begin(), col.begin() + static_cast<long>(classes.l_dim));
    RatVector mm(col.begin() + static_cast<long>(classes.l_dim), col.end());
    if (!descent_check(s, eps, l, mm).valid()) out.representatives_valid = false;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

PolyMatrix product(const PolyMatrix& a, const PolyMatrix& b, std::size_t inner, std::size_t cols) {
  PolyMatrix m = zeros(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < inner; ++k) m[i][j] = m[i][j] + a[i][k] * b[k][j];
  return m;
}

int twist_of(const P1Resolution& r, int k, std::size_t a) {
  return r.twists[static_cast<std::size_t>(k - r.lo)][a];
}

/// s' − f₀ s ∈ ∂'(H⁰(E'^{-1})).
bool section_homotopic(const P1Resolution& a, const P1Resolution& b, const PolyMatrix& f0) {
  std::size_t n = b.rank(0);
  std::vector<Poly> delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = b.section[i];
    for (std::size_t j = 0; j < a.rank(0); ++j) delta[i] = delta[i] - f0[i][j] * a.section[j];
  }
  bool zero = std::all_of(delta.begin(), delta.end(), [](const Poly& p) { return p.is_zero(); });
  if (zero) return true;
  if (b.lo > -1) return false;
  // unknown coefficients of r_α ∈ H⁰(O(a_α)); one equation per coefficient of ∂'r
  std::vector<std::pair<std::size_t, int>> unknowns;
  for (std::size_t al = 0; al < b.rank(-1); ++al)
    for (int j = 0; j <= twist_of(b, -1, al); ++j) unknowns.push_back({al, j});
  const PolyMatrix& d = b.diffs.back();
  int top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    top = std::max(top, delta[i].degree());
    for (const auto& [al, j] : unknowns) top = std::max(top, d[i][al].degree() + j);
  }
  std::size_t rows = n * static_cast<std::size_t>(top + 1);
  RatMatrix m(rows, unknowns.size());
  RatVector rhs = zero_vector(rows);
  for (std::size_t i = 0; i < n; ++i) {
    for (int e = 0; e <= delta[i].degree(); ++e) rhs[i * static_cast<std::size_t>(top + 1) + static_cast<std::size_t>(e)] = delta[i].coeff(e);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto& [al, j] = unknowns[u];
      const Poly& p = d[i][al];
      for (int e = 0; e <= p.degree(); ++e)
        m(i * static_cast<std::size_t>(top + 1) + static_cast<std::size_t>(e + j), u) += p.coeff(e);
    }
  }
  return solve(m, rhs).has_value();
}

}  // namespace

ResolutionComparison identity_comparison(const P1Resolution& a) {
  ResolutionComparison c;
  for (int k = a.lo; k <= 0; ++k) c.maps.push_back(identity(a.rank(k)));
  return c;
}

ResolutionComparison acyclic_pair_inclusion(const P1Resolution& a) {
  ResolutionComparison c;
  int lo = std::min(a.lo, -1);
  for (int k = lo; k <= 0; ++k) {
    std::size_t extra = k >= -1 ? 1 : 0;
    PolyMatrix m = zeros(a.rank(k) + extra, a.rank(k));
    put(m, 0, 0, identity(a.rank(k)));
    c.maps.push_back(std::move(m));
  }
  return c;
}

IndependenceVerdict resolution_independence_check(const P1Resolution& a, const P1Resolution& b,
                                                  const ResolutionComparison& f,
                                                  std::optional<int> window) {
  const int lo = std::min(a.lo, b.lo);
  if (f.maps.size() != static_cast<std::size_t>(1 - lo))
    throw PreconditionError("comparison needs one map per degree " + std::to_string(lo) + "..0");
  auto fk = [&](int k) -> const PolyMatrix& { return f.maps[static_cast<std::size_t>(k - lo)]; };
  for (int k = lo; k <= 0; ++k) {
    if (fk(k).size() != b.rank(k)) throw PreconditionError("comparison map " + tag("f", k) + " has the wrong row count");
    for (const auto& row : fk(k))
      if (row.size() != a.rank(k)) throw PreconditionError("comparison map " + tag("f", k) + " has the wrong column count");
  }
  IndependenceVerdict v;
  Layout la(a), lb(b);
  v.chain_map = true;
  for (int k = lo; k < 0; ++k) {
    PolyMatrix left = product(fk(k + 1), la.d_matrix(k, P1Open::U0), a.rank(k + 1), a.rank(k));
    PolyMatrix right = product(lb.d_matrix(k, P1Open::U0), fk(k), b.rank(k), a.rank(k));
    if (left != right) v.chain_map = false;
  }
  v.section_matches = section_homotopic(a, b, fk(0));
  v.injective_locally_free = true;
  for (int k = lo; k <= 0; ++k)
    for (P1Open u : {P1Open::U0, P1Open::U1}) {
      PolyMatrix m = zeros(b.rank(k), a.rank(k));
      for (std::size_t i = 0; i < b.rank(k); ++i)
        for (std::size_t j = 0; j < a.rank(k); ++j)
          m[i][j] = on_chart(fk(k)[i][j], twist_of(b, k, i) - twist_of(a, k, j), u);
      if (poly_rank(m) != a.rank(k) || minor_gcd(m, a.rank(k)).degree() != 0) v.injective_locally_free = false;
    }
  TIReport ra = compute_TI(a, window), rb = compute_TI(b, window);
  v.first = ra.triple;
  v.second = rb.triple;
  v.equal_invariants = ra.triple == rb.triple && ra.pair == rb.pair;
  return v;
}

}  // namespace dk
