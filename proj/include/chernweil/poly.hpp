#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chernweil {

using Rational = mpq_class;
using Exponents = std::vector<int>;

std::string to_string(const Rational& q);

/// Graded lexicographic order, largest first: total degree, then the first
/// variable is most significant.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Multivariate polynomial over the rationals in a fixed number of variables.
/// Zero coefficients are never stored; terms iterate in descending grlex order.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational, GrlexGreater>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(Exponents exps, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;

  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  void add_term(const Exponents& exps, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Poly derivative(std::size_t var) const;

  /// Scaled so the grlex-leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  /// Coefficient of var^k, as a polynomial in the same ring not involving var.
  Poly coefficient_in(std::size_t var, int k) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_;
  Terms terms_;
};

Poly pow(const Poly& p, unsigned n);

/// a / b when b divides a exactly, otherwise nullopt. Throws on b == 0.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Monic greatest common divisor over Q[x_1..x_n]; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace chernweil
