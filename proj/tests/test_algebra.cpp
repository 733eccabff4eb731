#include <doctest.h>

#include <random>

#include "chernweil/error.hpp"
#include "chernweil/linalg.hpp"

using namespace chernweil;

namespace {

ChartPtr u12() { return make_chart("U12", {"z"}, {Poly::variable(1, 0)}); }
ChartPtr u1() { return make_chart("U1", {"z"}); }

Poly zpoly(std::initializer_list<int> coeffs) {
  Poly p(1);
  int k = 0;
  for (int c : coeffs) p.add_term({k++}, c);
  return p;
}

Poly random_poly(std::mt19937& rng, std::size_t nvars, int max_deg) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, max_deg);
  Poly p(nvars);
  for (int n = 0; n < 3; ++n) {
    Exponents e(nvars);
    for (auto& x : e) x = deg(rng);
    p.add_term(e, coef(rng));
  }
  return p;
}

// Denominators are products of powers of the two declared invertibles.
RatFunc random_ratfunc(std::mt19937& rng, const ChartPtr& chart) {
  std::uniform_int_distribution<int> small(0, 2);
  Poly den = pow(chart->invertibles()[0], small(rng)) * pow(chart->invertibles()[1], small(rng));
  return ratfunc_normalize(random_poly(rng, 2, 2), den, chart);
}

}  // namespace

TEST_CASE("normalize cancels and rejects foreign denominators") {
  RatFunc a = ratfunc_normalize(zpoly({0, 0, 1}), zpoly({0, 1}), u12());
  CHECK(a == RatFunc::variable(u12(), 0));
  CHECK(a.to_string() == "z");

  try {
    ratfunc_normalize(zpoly({1}), zpoly({0, 1}), u1());
    FAIL("expected NotInvertibleOnChart");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertibleOnChart);
  }
  CHECK_THROWS_AS(ratfunc_normalize(zpoly({1}), Poly(1), u1()), Error);

  RatFunc b = ratfunc_normalize(zpoly({2, 2}), zpoly({4}), u1());
  // Oracle: (z + 1)/2 expanded is 1/2*z + 1/2.
  Poly expect(1);
  expect.add_term({1}, Rational(1, 2));
  expect.add_term({0}, Rational(1, 2));
  CHECK(b.numerator() == expect);
  CHECK(b.denominator() == zpoly({1}));
  CHECK(b.to_string() == "1/2*z + 1/2");
}

TEST_CASE("gcd of multivariate polynomials") {
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly one = Poly::constant(2, 1);
  const Poly f = (x + y) * (x - one);
  const Poly g = (x + y) * (y + one) * (x + y);
  CHECK(gcd(f, g) == x + y);
  CHECK(gcd(x, y) == one);
  CHECK(gcd(Poly(2), y) == y);
}

TEST_CASE("rendering of rational functions") {
  auto chart = make_chart("V", {"z", "w"}, {Poly::variable(2, 0), Poly::variable(2, 1)});
  const RatFunc z = RatFunc::variable(chart, 0);
  const RatFunc w = RatFunc::variable(chart, 1);
  CHECK((RatFunc(chart, 1) / z).to_string() == "1/z");
  CHECK(((z + w) / (z * z)).to_string() == "(z + w)/z^2");
  CHECK((RatFunc(chart, 3) / (z * w)).to_string() == "3/(z*w)");
  CHECK((z * z - z * w.scaled(Rational(3, 2)) + RatFunc(chart, 1)).to_string() == "z^2 - 3/2*z*w + 1");
}

TEST_CASE("substitution composes and reaches through denominators") {
  auto cz = make_chart("Uz", {"z"}, {Poly::variable(1, 0)});
  auto cw = make_chart("Uw", {"w"}, {Poly::variable(1, 0)});
  Substitution s{cz, cw, {RatFunc(cw, 1) / RatFunc::variable(cw, 0)}};
  Substitution back{cw, cz, {RatFunc(cz, 1) / RatFunc::variable(cz, 0)}};
  CHECK(s.then(back).is_identity());
  const RatFunc f = (RatFunc::variable(cz, 0) + RatFunc(cz, 1)) / RatFunc::variable(cz, 0);
  CHECK(s.apply(f).to_string() == "w + 1");
}

TEST_CASE("field axioms and idempotent normalization on random samples") {
  std::mt19937 rng(7);
  auto chart = make_chart("V", {"x", "y"}, {Poly::variable(2, 0), Poly::variable(2, 1) + Poly::constant(2, 1)});
  for (int n = 0; n < 60; ++n) {
    const RatFunc a = random_ratfunc(rng, chart);
    const RatFunc b = random_ratfunc(rng, chart);
    const RatFunc c = random_ratfunc(rng, chart);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == RatFunc(chart));
    CHECK(ratfunc_normalize(a.numerator(), a.denominator(), chart) == a);
    const Poly k = random_poly(rng, 2, 1);
    if (!k.is_zero()) {
      CHECK(ratfunc_normalize(a.numerator() * k, a.denominator() * k, chart) == a);
    }
  }
}

TEST_CASE("matrix rank over the fraction field") {
  auto chart = u12();
  CHECK(matrix_rank(identity_matrix(chart, 2)) == 2);
  const RatFunc z = RatFunc::variable(chart, 0);
  RMatrix m = zero_matrix(chart, 2, 2);
  m(0, 0) = z;
  m(0, 1) = z * z;
  m(1, 0) = RatFunc(chart, 1);
  m(1, 1) = z;
  CHECK(matrix_rank(m) == 1);
  CHECK(matrix_rank(zero_matrix(chart, 0, 0)) == 0);

  std::mt19937 rng(11);
  auto c2 = make_chart("V", {"x", "y"}, {Poly::variable(2, 0), Poly::variable(2, 1) + Poly::constant(2, 1)});
  for (int n = 0; n < 30; ++n) {
    RMatrix a = zero_matrix(c2, 3, 3);
    std::bernoulli_distribution sparse(0.4);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (!sparse(rng)) a(i, j) = random_ratfunc(rng, c2);
      }
    }
    if (n % 3 == 0) {
      for (std::size_t j = 0; j < 3; ++j) a(2, j) = a(0, j) * RatFunc::variable(c2, 0) + a(1, j);
    }
    CHECK(matrix_rank(a) == matrix_rank(a.transpose()));
  }
}

TEST_CASE("inverse, determinant and left inverses respect the chart") {
  auto chart = u12();
  const RatFunc z = RatFunc::variable(chart, 0);
  RMatrix m = zero_matrix(chart, 2, 2);
  m(0, 0) = z;
  m(0, 1) = RatFunc(chart, 1);
  m(1, 1) = z;
  CHECK(determinant(m) == z * z);
  CHECK(inverse(m) * m == identity_matrix(chart, 2));

  auto plain = u1();
  RMatrix p = zero_matrix(plain, 1, 1);
  p(0, 0) = RatFunc::variable(plain, 0);
  CHECK_FALSE(is_invertible(p));
  CHECK(matrix_rank(p) == 1);

  RMatrix col = zero_matrix(plain, 2, 1);
  col(0, 0) = RatFunc::variable(plain, 0);
  col(1, 0) = RatFunc(plain, 1);
  auto l = left_inverse(col);
  REQUIRE(l);
  CHECK(*l * col == identity_matrix(plain, 1));
  CHECK(left_inverse_fraction(col));
  CHECK_FALSE(left_inverse_fraction(zero_matrix(plain, 2, 1)));
}
