#include <doctest.h>

#include <cmath>

#include "chernweil/error.hpp"
#include "chernweil/simplex.hpp"
#include "support/covers.hpp"
#include "support/quadrature.hpp"

using namespace chernweil;

TEST_CASE("cofaces and their composites") {
  CHECK(coface(1, 0).values == std::vector<int>{1});
  CHECK(coface(2, 1).values == std::vector<int>{0, 2});
  CHECK(compose(coface(2, 0), coface(1, 0)).values == std::vector<int>{2});
  CHECK_THROWS_AS(coface(2, 3), Error);
}

TEST_CASE("cosimplicial identities up to arity 4") {
  for (int p = 2; p <= 4; ++p) {
    // d^j d^i = d^i d^{j-1} for i < j.
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i < j; ++i) {
        CHECK(compose(coface(p, j), coface(p - 1, i)) == compose(coface(p, i), coface(p - 1, j - 1)));
      }
    }
  }
  for (int p = 1; p <= 4; ++p) {
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i <= p; ++i) {
        // s^j d^i as a map [p-1] -> [p-1].
        const SimplexMap lhs = compose(codegeneracy(p - 1, j), coface(p, i));
        if (i < j) {
          CHECK(lhs == compose(coface(p - 1, i), codegeneracy(p - 2, j - 1)));
        } else if (i == j || i == j + 1) {
          SimplexMap id{p - 1, p - 1, {}};
          for (int k = 0; k < p; ++k) id.values.push_back(k);
          CHECK(lhs == id);
        } else if (p >= 2) {
          CHECK(lhs == compose(coface(p - 1, i - 1), codegeneracy(p - 2, j)));
        }
      }
    }
  }
  for (int p = 0; p <= 3; ++p) {
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i <= j; ++i) {
        CHECK(compose(codegeneracy(p, j), codegeneracy(p + 1, i)) ==
              compose(codegeneracy(p, i), codegeneracy(p + 1, j + 1)));
      }
    }
  }
}

TEST_CASE("simplex monomial integral against quadrature") {
  CHECK(simplex_monomial_integral({0, 0}) == 1);
  CHECK(simplex_monomial_integral({0, 1}) == Rational(1, 2));
  CHECK(simplex_monomial_integral({1, 1, 1}) == Rational(1, 120));
  int cases = 0;
  for (int p = 0; p <= 3; ++p) {
    std::vector<int> a(static_cast<std::size_t>(p) + 1, 0);
    while (true) {
      int sum = 0;
      for (int x : a) sum += x;
      if (sum <= 4) {
        ++cases;
        const double q = testsupport::simplex_quadrature(p, [&](const std::vector<double>& t) {
          double v = 1;
          for (std::size_t k = 0; k < a.size(); ++k) v *= std::pow(t[k], a[k]);
          return v;
        });
        CHECK(std::fabs(q - simplex_monomial_integral(a).get_d()) < 1e-9);
      }
      std::size_t k = 0;
      while (k < a.size() && ++a[k] > 4) a[k++] = 0;
      if (k == a.size()) break;
    }
  }
  CHECK(cases == 125);
}

TEST_CASE("nerve faces on the two-open cover") {
  const CoverNerve n = testsupport::p1_nerve(1, false);
  CHECK(n.tuples().size() == 6);
  CHECK(n.depth() == 1);
  auto [f1, s1] = n.face({0, 1}, 1);
  CHECK(f1 == Tuple{0});
  CHECK(s1.source->id() == "U1");
  CHECK(s1.target->id() == "U12");
  auto [f0, s0] = n.face({0, 1}, 0);
  CHECK(f0 == Tuple{1});
  CHECK(s0.to_string() == "w -> 1/z");
  auto [fd, sd] = n.face({0, 0}, 0);
  CHECK(fd == Tuple{0});
  CHECK(sd.is_identity());
  CHECK_THROWS_AS(n.face({0, 1, 0}, 0), Error);
}

TEST_CASE("iterated faces follow the simplicial identity") {
  const CoverNerve n = testsupport::plane_nerve(3, false);
  for (const auto& t : n.tuples()) {
    const int p = static_cast<int>(t.size()) - 1;
    if (p < 2) continue;
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i < j; ++i) {
        // d_i d_j = d_{j-1} d_i
        const Tuple a = omit(omit(t, j), i);
        const Tuple b = omit(omit(t, i), j - 1);
        CHECK(a == b);
        const auto [fa, sa1] = n.face(t, j);
        const auto [ga, sa2] = n.face(fa, i);
        const auto [fb, sb1] = n.face(t, i);
        const auto [gb, sb2] = n.face(fb, j - 1);
        CHECK(sa2.then(sa1) == sb2.then(sb1));
      }
    }
  }
}

TEST_CASE("missing or inconsistent restrictions are rejected") {
  auto build = [](bool add_b, bool twisted) {
    CoverNerve n;
    n.add_open("a");
    n.add_open("b");
    n.add_open("c");
    auto ua = make_chart("Ua", {"z"});
    auto ub = make_chart("Ub", {"z"});
    auto uc = make_chart("Uc", {"z"});
    auto uab = make_chart("Uab", {"z"});
    auto uabc = make_chart("Uabc", {"z"});
    for (const auto& c : {ua, ub, uc, uab, uabc}) n.add_chart(c);
    n.assign_chart({0}, "Ua");
    n.assign_chart({1}, "Ub");
    n.assign_chart({2}, "Uc");
    n.assign_chart({0, 1}, "Uab");
    n.assign_chart({0, 1, 2}, "Uabc");
    n.declare_restriction("Ua", "Uab", Substitution::by_name(ua, uab));
    if (add_b) n.declare_restriction("Ub", "Uab", Substitution::by_name(ub, uab));
    n.declare_restriction("Uab", "Uabc", Substitution::by_name(uab, uabc));
    n.declare_restriction("Uc", "Uabc", Substitution::by_name(uc, uabc));
    const RatFunc z = RatFunc::variable(uabc, 0);
    n.declare_restriction("Ua", "Uabc", twisted ? Substitution{ua, uabc, {z + RatFunc(uabc, 1)}}
                                                : Substitution::by_name(ua, uabc));
    n.generate(1, true);
    n.finalize();
    return n;
  };
  CHECK_NOTHROW(build(true, false));
  CHECK_THROWS_AS(build(false, false), Error);
  CHECK_THROWS_AS(build(true, true), Error);
}
