#include "chernweil/simplex.hpp"

#include <gmpxx.h>

#include "chernweil/error.hpp"

namespace chernweil {

bool SimplexMap::is_valid() const {
  if (source < 0 || target < 0 || values.size() != static_cast<std::size_t>(source) + 1) return false;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] < 0 || values[k] > target) return false;
    if (k && values[k] < values[k - 1]) return false;
  }
  return true;
}

bool SimplexMap::is_injective() const {
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] == values[k - 1]) return false;
  }
  return true;
}

std::string SimplexMap::to_string() const {
  std::string s = "[" + std::to_string(source) + "]->[" + std::to_string(target) + "] (";
  for (std::size_t k = 0; k < values.size(); ++k) s += (k ? "," : "") + std::to_string(values[k]);
  return s + ")";
}

SimplexMap coface(int p, int i) {
  if (p < 1 || i < 0 || i > p) fail(ErrorCode::IndexOutOfRange, "coface(" + std::to_string(p) + ", " + std::to_string(i) + ")");
  SimplexMap f{p - 1, p, {}};
  for (int k = 0; k < p; ++k) f.values.push_back(k < i ? k : k + 1);
  return f;
}

SimplexMap codegeneracy(int p, int i) {
  if (p < 0 || i < 0 || i > p) fail(ErrorCode::IndexOutOfRange, "codegeneracy(" + std::to_string(p) + ", " + std::to_string(i) + ")");
  SimplexMap s{p + 1, p, {}};
  for (int k = 0; k <= p + 1; ++k) s.values.push_back(k <= i ? k : k - 1);
  return s;
}

SimplexMap compose(const SimplexMap& g, const SimplexMap& f) {
  if (f.target != g.source) fail(ErrorCode::ShapeMismatch, "compose " + g.to_string() + " after " + f.to_string());
  SimplexMap h{f.source, g.target, {}};
  for (int v : f.values) h.values.push_back(g.values[static_cast<std::size_t>(v)]);
  return h;
}

Rational simplex_monomial_integral(const std::vector<int>& exponents) {
  if (exponents.empty()) fail(ErrorCode::IndexOutOfRange, "simplex integral needs at least one exponent");
  mpz_class num = 1;
  long total = static_cast<long>(exponents.size()) - 1;
  for (int a : exponents) {
    if (a < 0) fail(ErrorCode::IndexOutOfRange, "negative exponent in simplex integral");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(a));
    num *= f;
    total += a;
  }
  mpz_class den;
  mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(total));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace chernweil
