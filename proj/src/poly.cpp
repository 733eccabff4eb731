#include "chernweil/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "chernweil/error.hpp"

namespace chernweil {

std::string to_string(const Rational& q) { return q.get_str(); }

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(index));
  Exponents e(nvars, 0);
  e[index] = 1;
  Poly p(nvars);
  p.add_term(e, 1);
  return p;
}

Poly Poly::monomial(Exponents exps, const Rational& c) {
  Poly p(exps.size());
  p.add_term(exps, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void Poly::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != nvars_) fail(ErrorCode::ShapeMismatch, "exponent arity mismatch");
  if (c == 0) return;
  Rational v = c;
  v.canonicalize();
  auto [it, inserted] = terms_.try_emplace(exps, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.nvars_ != nvars_) fail(ErrorCode::ShapeMismatch, "polynomial rings differ");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.nvars_ != nvars_) fail(ErrorCode::ShapeMismatch, "polynomial rings differ");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Rational k = c;
  k.canonicalize();
  for (auto& [e, v] : terms_) v *= k;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) fail(ErrorCode::ShapeMismatch, "polynomial rings differ");
  Poly r(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  r *= Rational(1) / leading_coefficient();
  return r;
}

Poly Poly::coefficient_in(std::size_t var, int k) const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponents d = e;
    d[var] = 0;
    r.add_term(d, c);
  }
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      factors.push_back(e[k] == 1 ? names[k] : names[k] + "^" + std::to_string(e[k]));
    }
    if (factors.empty() || mag != 1) factors.insert(factors.begin(), chernweil::to_string(mag));
    for (std::size_t k = 0; k < factors.size(); ++k) out << (k ? "*" : "") << factors[k];
  }
  return out.str();
}

Poly pow(const Poly& p, unsigned n) {
  Poly result = Poly::constant(p.nvars(), 1);
  Poly base = p;
  while (n) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroDenominator, "division by the zero polynomial");
  if (a.nvars() != b.nvars()) fail(ErrorCode::ShapeMismatch, "polynomial rings differ");
  Poly q(a.nvars());
  Poly r = a;
  const Exponents& lb = b.leading_exponents();
  const Rational& cb = b.leading_coefficient();
  Exponents d(a.nvars());
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    for (std::size_t k = 0; k < d.size(); ++k) {
      d[k] = lr[k] - lb[k];
      if (d[k] < 0) return std::nullopt;
    }
    Poly t = Poly::monomial(d, r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

Poly content_in(const Poly& a, std::size_t var) {
  Poly g(a.nvars());
  const int deg = a.degree_in(var);
  for (int k = 0; k <= deg; ++k) {
    Poly c = a.coefficient_in(var, k);
    if (!c.is_zero()) g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

Poly primitive_part(const Poly& a, std::size_t var) {
  if (a.is_zero()) return a;
  return *divide_exact(a, content_in(a, var));
}

Poly pseudo_remainder(Poly r, const Poly& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Poly lcb = b.coefficient_in(var, db);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    Exponents shift(r.nvars(), 0);
    shift[var] = dr - db;
    Poly lead = r.coefficient_in(var, dr) * Poly::monomial(shift, 1);
    r = (lcb * r - lead * b).monic();
  }
  return r;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) fail(ErrorCode::ShapeMismatch, "polynomial rings differ");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::constant(a.nvars(), 1);

  std::size_t var = a.nvars();
  for (std::size_t k = 0; k < a.nvars() && var == a.nvars(); ++k) {
    if (a.degree_in(k) > 0 || b.degree_in(k) > 0) var = k;
  }
  if (a.degree_in(var) == 0) return gcd(a, content_in(b, var));
  if (b.degree_in(var) == 0) return gcd(content_in(a, var), b);

  const Poly ca = content_in(a, var);
  const Poly cb = content_in(b, var);
  Poly pa = divide_exact(a, ca)->monic();
  Poly pb = divide_exact(b, cb)->monic();
  const Poly c = gcd(ca, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);

  Poly g(a.nvars());
  while (true) {
    Poly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(var) == 0) {
      g = Poly::constant(a.nvars(), 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, var).monic();
  }
  return (c * primitive_part(g, var)).monic();
}

}  // namespace chernweil
