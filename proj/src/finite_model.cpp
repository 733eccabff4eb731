#include "chernweil/finite_model.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>

#include "chernweil/error.hpp"

namespace chernweil {

namespace {

struct Zp {
  std::int64_t v = 0;
  std::int64_t p = 2;
};

Zp operator+(Zp a, Zp b) { return {(a.v + b.v) % a.p, a.p}; }
Zp operator-(Zp a, Zp b) { return {(a.v - b.v + a.p) % a.p, a.p}; }
Zp operator*(Zp a, Zp b) { return {(a.v * b.v) % a.p, a.p}; }
bool is_zero(Zp a) { return a.v == 0; }
Zp inv(Zp a) {
  Zp r{1, a.p};
  for (std::int64_t e = a.p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * a;
    a = a * a;
  }
  return r;
}

bool is_zero(const Rational& q) { return sgn(q) == 0; }
Rational inv(const Rational& q) { return 1 / q; }

std::int64_t residue(const Rational& q, std::int64_t p) {
  const mpz_class pp(static_cast<long>(p));
  mpz_class num = q.get_num() % pp;
  mpz_class den = q.get_den() % pp;
  if (den == 0) fail(ErrorCode::ValidationError, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
  if (num < 0) num += pp;
  mpz_class inv_den;
  mpz_invert(inv_den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  return static_cast<std::int64_t>(mpz_class(num * inv_den % pp).get_si());
}

struct PrimeField {
  std::int64_t p;
  Zp zero() const { return {0, p}; }
  Zp one() const { return {1, p}; }
  Zp from(const Rational& q) const { return {residue(q, p), p}; }
  Rational to(Zp x) const { return Rational(static_cast<long>(x.v)); }
};

struct RationalField {
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from(const Rational& q) const { return q; }
  Rational to(const Rational& x) const { return x; }
};

template <class S>
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<S> a;
  Dense(std::size_t r, std::size_t c, const S& zero) : rows(r), cols(c), a(r * c, zero) {}
  S& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class K>
using Elem = decltype(std::declval<K>().zero());

template <class K>
Dense<Elem<K>> from_grid(const K& k, const Grid& g) {
  Dense<Elem<K>> out(g.rows, g.cols, k.zero());
  for (std::size_t i = 0; i < g.entries.size(); ++i) out.a[i] = k.from(g.entries[i]);
  return out;
}

template <class K>
Grid to_grid(const K& k, const Dense<Elem<K>>& m) {
  Grid out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) out.entries[i] = k.to(m.a[i]);
  return out;
}

template <class K>
Dense<Elem<K>> mul(const K& k, const Dense<Elem<K>>& x, const Dense<Elem<K>>& y) {
  if (x.cols != y.rows) fail(ErrorCode::ShapeMismatch, "product of incompatible matrices");
  Dense<Elem<K>> out(x.rows, y.cols, k.zero());
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t l = 0; l < x.cols; ++l) {
      if (is_zero(x(i, l))) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out(i, j) = out(i, j) + x(i, l) * y(l, j);
    }
  }
  return out;
}

template <class K>
Dense<Elem<K>> hcat(const K& k, const Dense<Elem<K>>& x, const Dense<Elem<K>>& y) {
  Dense<Elem<K>> out(x.rows, x.cols + y.cols, k.zero());
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) out(i, j) = x(i, j);
    for (std::size_t j = 0; j < y.cols; ++j) out(i, x.cols + j) = y(i, j);
  }
  return out;
}

// Reduced row echelon form in place; returns the pivot columns.
template <class K>
std::vector<std::size_t> rref(const K& k, Dense<Elem<K>>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(piv, j));
    const auto s = inv(m(row, col));
    for (std::size_t j = 0; j < m.cols; ++j) m(row, j) = m(row, j) * s;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const auto c = m(i, col);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = m(i, j) - c * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  (void)k;
  return pivots;
}

template <class K>
std::size_t rank_of(const K& k, Dense<Elem<K>> m) {
  return rref(k, m).size();
}

template <class K>
Dense<Elem<K>> kernel_of(const K& k, Dense<Elem<K>> m) {
  const auto pivots = rref(k, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Dense<Elem<K>> out(m.cols, m.cols - pivots.size(), k.zero());
  std::size_t col = 0;
  for (std::size_t fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[fc]) continue;
    out(fc, col) = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) out(pivots[r], col) = k.zero() - m(r, fc);
    ++col;
  }
  return out;
}

template <class K>
Dense<Elem<K>> inverse_of(const K& k, const Dense<Elem<K>>& m) {
  const std::size_t n = m.rows;
  Dense<Elem<K>> id(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i) id(i, i) = k.one();
  Dense<Elem<K>> aug = hcat(k, m, id);
  if (rref(k, aug).size() != n || (n > 0 && is_zero(aug(n - 1, n - 1)))) fail(ErrorCode::NotInvertibleOnChart, "singular matrix");
  Dense<Elem<K>> out(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  }
  return out;
}

// Standard basis vectors completing the columns of b to a basis.
template <class K>
Dense<Elem<K>> complement_of(const K& k, const Dense<Elem<K>>& b) {
  const std::size_t n = b.rows;
  Dense<Elem<K>> id(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i) id(i, i) = k.one();
  Dense<Elem<K>> aug = hcat(k, b, id);
  std::vector<std::size_t> picks;
  for (auto c : rref(k, aug)) {
    if (c >= b.cols) picks.push_back(c - b.cols);
  }
  Dense<Elem<K>> out(n, picks.size(), k.zero());
  for (std::size_t j = 0; j < picks.size(); ++j) out(picks[j], j) = k.one();
  return out;
}

// Projection onto the complement coordinates of V / span(b), and a section.
template <class K>
struct Quotient {
  Dense<Elem<K>> projection;
  Dense<Elem<K>> section;
};

template <class K>
Quotient<K> quotient_by(const K& k, const Dense<Elem<K>>& b) {
  Dense<Elem<K>> c = complement_of(k, b);
  const Dense<Elem<K>> binv = inverse_of(k, hcat(k, b, c));
  Dense<Elem<K>> proj(c.cols, b.rows, k.zero());
  for (std::size_t i = 0; i < c.cols; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) proj(i, j) = binv(b.cols + i, j);
  }
  return {std::move(proj), std::move(c)};
}

template <class F>
auto with_field(long characteristic, F&& fn) {
  if (characteristic == 0) return fn(RationalField{});
  return fn(PrimeField{characteristic});
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Subspaces of F_p^k as d x k reduced echelon matrices, dimension d.
template <class K>
std::vector<Dense<Elem<K>>> subspaces(const K& k, std::size_t dim, std::size_t d) {
  std::vector<Dense<Elem<K>>> out;
  std::vector<std::size_t> piv(d);
  // Pivot sets in lexicographic order.
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t idx, std::size_t start) {
    if (idx == d) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = piv[r] + 1; c < dim; ++c) {
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
        }
      }
      std::vector<std::int64_t> digits(free.size(), 0);
      while (true) {
        Dense<Elem<K>> m(d, dim, k.zero());
        for (std::size_t r = 0; r < d; ++r) m(r, piv[r]) = k.one();
        for (std::size_t f = 0; f < free.size(); ++f) m(free[f].first, free[f].second) = k.from(Rational(static_cast<long>(digits[f])));
        out.push_back(std::move(m));
        std::size_t f = 0;
        while (f < digits.size() && ++digits[f] == k.p) digits[f++] = 0;
        if (f == digits.size()) break;
      }
      return;
    }
    for (std::size_t c = start; c < dim; ++c) {
      piv[idx] = c;
      choose(idx + 1, c + 1);
    }
  };
  choose(0, 0);
  return out;
}

template <class K>
Dense<Elem<K>> transpose_of(const K& k, const Dense<Elem<K>>& m) {
  Dense<Elem<K>> out(m.cols, m.rows, k.zero());
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
  }
  return out;
}

template <class K>
bool witness_holds(const K& k, const Dense<Elem<K>>& f, const Dense<Elem<K>>& v1, const Dense<Elem<K>>& w1) {
  const std::size_t n = f.cols;
  const std::size_t m = f.rows;
  if (n - v1.cols != m - w1.cols) return false;
  const std::size_t rw = rank_of(k, w1);
  if (rank_of(k, hcat(k, w1, mul(k, f, v1))) != rw) return false;
  return rank_of(k, hcat(k, f, w1)) == m;
}

// Univariate polynomials over the field, constant term first, no trailing zeros.
template <class S>
using UPoly = std::vector<S>;

template <class S>
void trim(UPoly<S>& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class K>
UPoly<Elem<K>> padd(const K& k, const UPoly<Elem<K>>& a, const UPoly<Elem<K>>& b, bool subtract) {
  UPoly<Elem<K>> out(std::max(a.size(), b.size()), k.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (subtract) {
      out[i] = out[i] - b[i];
    } else {
      out[i] = out[i] + b[i];
    }
  }
  trim(out);
  return out;
}

template <class K>
UPoly<Elem<K>> pmul(const K& k, const UPoly<Elem<K>>& a, const UPoly<Elem<K>>& b) {
  if (a.empty() || b.empty()) return {};
  UPoly<Elem<K>> out(a.size() + b.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  trim(out);
  return out;
}

template <class K>
std::pair<UPoly<Elem<K>>, UPoly<Elem<K>>> pdivmod(const K& k, UPoly<Elem<K>> a, const UPoly<Elem<K>>& b) {
  UPoly<Elem<K>> q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, k.zero());
  const auto lead = inv(b.back());
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const auto c = a.back() * lead;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

template <class K>
std::vector<std::vector<Rational>> smith_factors(const K& k, const Dense<Elem<K>>& a) {
  using P = UPoly<Elem<K>>;
  const std::size_t n = a.rows;
  std::vector<std::vector<P>> m(n, std::vector<P>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      P e{k.zero() - a(i, j)};
      if (i == j) e.push_back(k.one());
      trim(e);
      m[i][j] = e;
    }
  }
  auto row_op = [&](std::size_t dst, std::size_t src, const P& q) {  // row dst -= q row src
    for (std::size_t j = 0; j < n; ++j) m[dst][j] = padd(k, m[dst][j], pmul(k, q, m[src][j]), true);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const P& q) {
    for (std::size_t i = 0; i < n; ++i) m[i][dst] = padd(k, m[i][dst], pmul(k, m[i][src], q), true);
  };
  std::vector<std::vector<Rational>> factors;
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (!m[i][j].empty() && (bi == n || m[i][j].size() < m[bi][bj].size())) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == n) break;
      std::swap(m[t], m[bi]);
      for (std::size_t i = 0; i < n; ++i) std::swap(m[i][t], m[i][bj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        auto [q, r] = pdivmod(k, m[i][t], m[t][t]);
        row_op(i, t, q);
        clean = clean && r.empty();
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        auto [q, r] = pdivmod(k, m[t][j], m[t][t]);
        col_op(j, t, q);
        clean = clean && r.empty();
      }
      if (!clean) continue;
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!pdivmod(k, m[i][j], m[t][t]).second.empty()) {
            bad = i;
            break;
          }
        }
      }
      if (bad == n) break;
      row_op(t, bad, P{k.zero() - k.one()});
    }
    P& d = m[t][t];
    if (d.size() <= 1) continue;
    const auto s = inv(d.back());
    std::vector<Rational> coeffs;
    for (auto& c : d) coeffs.push_back(k.to(c * s));
    factors.push_back(std::move(coeffs));
  }
  return factors;
}

std::string render_poly(const std::vector<Rational>& c) {
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (sgn(c[i]) == 0) continue;
    Rational mag = abs(c[i]);
    const bool neg = sgn(c[i]) < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = mag == 1;
    if (i == 0 || !unit) out += to_string(mag);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Grid Grid::identity(std::size_t n) {
  Grid g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 1;
  return g;
}

Grid Grid::parse(const std::string& text) {
  Grid g;
  std::vector<std::vector<Rational>> rows;
  std::stringstream all(text);
  std::string row;
  std::size_t col_offset = 0;
  while (std::getline(all, row, ';')) {
    std::stringstream rs(row);
    std::string tok;
    std::vector<Rational> r;
    while (rs >> tok) {
      Rational q;
      if (q.set_str(tok, 10) != 0 || tok.find('/') == 0) fail(ErrorCode::ParseError, "bad matrix entry '" + tok + "' near column " + std::to_string(col_offset + 1));
      q.canonicalize();
      r.push_back(q);
    }
    col_offset += row.size() + 1;
    if (r.empty() && rows.empty() && all.eof()) break;
    if (!rows.empty() && r.size() != rows.front().size()) fail(ErrorCode::ParseError, "matrix rows have different lengths");
    rows.push_back(std::move(r));
  }
  if (rows.size() == 1 && rows.front().empty()) rows.clear();
  g.rows = rows.size();
  g.cols = rows.empty() ? 0 : rows.front().size();
  if (g.rows > 0 && g.cols == 0) fail(ErrorCode::ParseError, "empty matrix row");
  for (auto& r : rows) {
    for (auto& q : r) g.entries.push_back(q);
  }
  return g;
}

std::string Grid::to_string() const {
  if (rows == 0 || cols == 0) return "zero(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
  std::string s = "[";
  for (std::size_t i = 0; i < rows; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols; ++j) s += (j ? ", " : "") + chernweil::to_string((*this)(i, j));
    s += "]";
  }
  return s + "]";
}

EndoPair make_pair_over(long characteristic, const Grid& phi) {
  if (characteristic != 0 && !is_prime(characteristic)) {
    fail(ErrorCode::ValidationError, "characteristic " + std::to_string(characteristic) + " is not prime");
  }
  if (characteristic > 1000003) fail(ErrorCode::ValidationError, "prime field too large");
  if (phi.rows != phi.cols) fail(ErrorCode::ValidationError, "endomorphism must be square, got " + std::to_string(phi.rows) + "x" + std::to_string(phi.cols));
  EndoPair x{characteristic, phi};
  if (characteristic != 0) {
    for (auto& q : x.phi.entries) q = Rational(static_cast<long>(residue(q, characteristic)));
  }
  return x;
}

void validate_morphism(const PairMorphism& m) {
  if (m.source.characteristic != m.target.characteristic) fail(ErrorCode::ValidationError, "pairs over different fields");
  if (m.f.rows != m.target.dim() || m.f.cols != m.source.dim()) fail(ErrorCode::ValidationError, "morphism has the wrong shape");
  const long p = m.source.characteristic;
  if (multiply(p, m.f, m.source.phi) != multiply(p, m.target.phi, m.f)) {
    fail(ErrorCode::ValidationError, "f does not intertwine the endomorphisms");
  }
}

Grid multiply(long characteristic, const Grid& a, const Grid& b) {
  return with_field(characteristic, [&](const auto& k) { return to_grid(k, mul(k, from_grid(k, a), from_grid(k, b))); });
}

std::size_t rank(long characteristic, const Grid& a) {
  return with_field(characteristic, [&](const auto& k) { return rank_of(k, from_grid(k, a)); });
}

Grid kernel(long characteristic, const Grid& a) {
  return with_field(characteristic, [&](const auto& k) { return to_grid(k, kernel_of(k, from_grid(k, a))); });
}

Grid direct_sum(const Grid& a, const Grid& b) {
  Grid out(a.rows + b.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) out(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) out(a.rows + i, a.cols + j) = b(i, j);
  }
  return out;
}

EndoPair direct_sum(const EndoPair& a, const EndoPair& b) {
  if (a.characteristic != b.characteristic) fail(ErrorCode::ValidationError, "pairs over different fields");
  return {a.characteristic, direct_sum(a.phi, b.phi)};
}

EndoPair apply_E(const EndoPair& x) {
  return with_field(x.characteristic, [&](const auto& k) {
    const auto phi = from_grid(k, x.phi);
    const auto q = quotient_by(k, kernel_of(k, phi));
    return EndoPair{x.characteristic, to_grid(k, mul(k, mul(k, q.projection, phi), q.section))};
  });
}

Grid induced_on_quotients(const PairMorphism& m) {
  validate_morphism(m);
  return with_field(m.source.characteristic, [&](const auto& k) {
    const auto qv = quotient_by(k, kernel_of(k, from_grid(k, m.source.phi)));
    const auto qw = quotient_by(k, kernel_of(k, from_grid(k, m.target.phi)));
    return to_grid(k, mul(k, mul(k, qw.projection, from_grid(k, m.f)), qv.section));
  });
}

bool is_weak_equivalence(const PairMorphism& m) {
  const Grid e = induced_on_quotients(m);
  return e.rows == e.cols && rank(m.source.characteristic, e) == e.rows;
}

bool is_admissibility_witness(const PairMorphism& m, const SubspaceWitness& w) {
  validate_morphism(m);
  const long p = m.source.characteristic;
  if (w.v1.rows != m.source.dim() || w.w1.rows != m.target.dim()) return false;
  if (rank(p, w.v1) != w.v1.cols || rank(p, w.w1) != w.w1.cols) return false;
  const Grid zv = multiply(p, m.source.phi, w.v1);
  const Grid zw = multiply(p, m.target.phi, w.w1);
  if (zv != Grid(zv.rows, zv.cols) || zw != Grid(zw.rows, zw.cols)) return false;
  return with_field(p, [&](const auto& k) { return witness_holds(k, from_grid(k, m.f), from_grid(k, w.v1), from_grid(k, w.w1)); });
}

std::optional<SubspaceWitness> admissibility_witness_search(const PairMorphism& m) {
  validate_morphism(m);
  const long p = m.source.characteristic;
  if (p == 0) fail(ErrorCode::ValidationError, "witness search needs a prime field");
  if (m.source.dim() > 4 || m.target.dim() > 4) {
    fail(ErrorCode::DimensionTooLarge, "witness search is limited to dimension 4, got " + std::to_string(std::max(m.source.dim(), m.target.dim())));
  }
  const PrimeField k{p};
  const auto f = from_grid(k, m.f);
  const auto kv = kernel_of(k, from_grid(k, m.source.phi));
  const auto kw = kernel_of(k, from_grid(k, m.target.phi));
  for (std::size_t dv = 0; dv <= kv.cols; ++dv) {
    const auto vs = subspaces(k, kv.cols, dv);
    for (std::size_t dw = 0; dw <= kw.cols; ++dw) {
      if (m.source.dim() - dv != m.target.dim() - dw) continue;
      const auto ws = subspaces(k, kw.cols, dw);
      for (const auto& sv : vs) {
        const auto v1 = mul(k, kv, transpose_of(k, sv));
        for (const auto& sw : ws) {
          const auto w1 = mul(k, kw, transpose_of(k, sw));
          if (witness_holds(k, f, v1, w1)) return SubspaceWitness{to_grid(k, v1), to_grid(k, w1)};
        }
      }
    }
  }
  return std::nullopt;
}

ClassInvariant invariant_factors(long characteristic, const Grid& a) {
  if (a.rows != a.cols) fail(ErrorCode::ValidationError, "invariant factors need a square matrix");
  return with_field(characteristic, [&](const auto& k) {
    return ClassInvariant{characteristic, smith_factors(k, from_grid(k, a))};
  });
}

ClassInvariant class_invariant(const EndoPair& x) { return invariant_factors(x.characteristic, apply_E(x).phi); }

Grid ClassInvariant::canonical_form() const {
  Grid out;
  for (const auto& f : factors) {
    const std::size_t d = f.size() - 1;
    Grid c(d, d);
    for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
    for (std::size_t i = 0; i < d; ++i) {
      Rational v = -f[i];
      if (characteristic != 0) v = Rational(static_cast<long>(residue(v, characteristic)));
      c(i, d - 1) = v;
    }
    out = direct_sum(out, c);
  }
  return out;
}

std::string ClassInvariant::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? ", " : "") + render_poly(factors[i]);
  return s + "]";
}

}  // namespace chernweil
