#include <doctest.h>

#include "chernweil/cech.hpp"
#include "chernweil/error.hpp"
#include "support/covers.hpp"
#include "support/random.hpp"

using namespace chernweil;

namespace {

ChartPtr u12() { return make_chart("U12", {"z"}, {Poly::variable(1, 0)}); }

Form dz_over_z(const ChartPtr& c, int p) {
  return Form::dx(c, p, 0).times(RatFunc(c, 1) / RatFunc::variable(c, 0));
}

}  // namespace

TEST_CASE("wedge signs and vanishing") {
  auto c = u12();
  const Form dz = Form::dx(c, 1, 0);
  CHECK((dz * dz).is_zero());
  const Form a = Form::t(c, 1, 1) * dz_over_z(c, 1);
  CHECK((a * a).is_zero());
  const Form dt1 = Form::dt(c, 1, 1);
  CHECK(dt1 * dz == -(dz * dt1));
  CHECK((dt1 * dz).to_string() == "-dz ^ dt1");
}

TEST_CASE("exterior derivative examples") {
  auto c = u12();
  const Form a = Form::t(c, 1, 1) * dz_over_z(c, 1);
  CHECK(differential(a) == Form::dt(c, 1, 1) * dz_over_z(c, 1));
  CHECK(differential(a).to_string() == "-1/z dz ^ dt1");
  const RatFunc z = RatFunc::variable(c, 0);
  CHECK(differential(Form::scalar(z * z, 0)) == Form::dx(c, 0, 0).times(z.scaled(2)));
  CHECK(differential(differential(Form::t(c, 1, 1).times(z))).is_zero());
  // t0 and dt0 are eliminated.
  CHECK(Form::t(c, 2, 0).to_string() == "-t1 - t2 + 1");
  CHECK(Form::dt(c, 2, 0).to_string() == "-dt1 - dt2");
}

TEST_CASE("coface pullbacks") {
  auto c = u12();
  const Form w = Form::dt(c, 1, 1) * dz_over_z(c, 1);
  CHECK(pullback_coface(w, 1).is_zero());
  const Form tdz = Form::t(c, 1, 1) * Form::dx(c, 1, 0);
  CHECK(pullback_coface(tdz, 0) == Form::dx(c, 0, 0));
  for (int p = 1; p <= 3; ++p) {
    for (int i = 0; i <= p; ++i) CHECK(pullback_coface(Form::constant(c, p, 5), i) == Form::constant(c, p - 1, 5));
  }
  // On the 2-simplex, omitting vertex 0 sends t1 to 1 - s1.
  CHECK(pullback_coface(Form::t(c, 2, 1), 0).to_string() == "-t1 + 1");
  CHECK(pullback_coface(Form::t(c, 2, 2), 1).to_string() == "t1");
  CHECK_THROWS_AS(pullback_coface(w, 2), Error);
}

TEST_CASE("nerve pullbacks apply the chain rule") {
  auto c = u12();
  CHECK(pullback_nerve(dz_over_z(c, 0), Substitution::identity(c)) == dz_over_z(c, 0));
  auto u1 = make_chart("U1", {"z"});
  CHECK(pullback_nerve(Form::dx(u1, 0, 0), Substitution::by_name(u1, c)) == Form::dx(c, 0, 0));
  auto cz = make_chart("Z", {"z"});
  auto cw = make_chart("W", {"w"}, {Poly::variable(1, 0)});
  Substitution s{cz, cw, {RatFunc(cw, 1) / RatFunc::variable(cw, 0)}};
  CHECK(pullback_nerve(Form::dx(cz, 0, 0), s).to_string() == "-1/w^2 dw");
  // A denominator that is not invertible on the target is rejected.
  auto bad = make_chart("B", {"w"});
  auto zi = make_chart("ZI", {"z"}, {Poly::variable(1, 0)});
  Substitution s2{zi, bad, {RatFunc::variable(bad, 0) - RatFunc(bad, 1)}};
  CHECK_THROWS_AS(pullback_nerve(dz_over_z(zi, 0), s2), Error);
}

TEST_CASE("gluing check on the two-open cover") {
  const CoverNerve full = testsupport::p1_nerve(1, false);
  const ChartPtr c12 = full.chart({0, 1});
  FormFamily curv;
  curv.emplace(Tuple{0, 1}, Form::dt(c12, 1, 1) * dz_over_z(c12, 1));
  curv.emplace(Tuple{1, 0}, -(Form::dt(c12, 1, 1) * dz_over_z(c12, 1)));
  CHECK_FALSE(check_gluing(full, curv));
  CHECK_FALSE(check_gluing(full, FormFamily{}));

  const CoverNerve inc = testsupport::p1_nerve(1, true);
  FormFamily bad;
  bad.emplace(Tuple{0}, Form::dx(inc.chart({0}), 0, 0));
  auto v = check_gluing(inc, bad);
  REQUIRE(v);
  CHECK(v->p == 1);
  CHECK(v->i == 1);
  CHECK(v->tuple == Tuple{0, 1});
}

TEST_CASE("random glued families glue") {
  const CoverNerve n = testsupport::plane_nerve(2, false);
  for (std::uint32_t seed = 1; seed <= 4; ++seed) {
    for (int r = 0; r <= 3; ++r) {
      const FormFamily fam = testsupport::random_glued_family(n, r, seed);
      CHECK_FALSE(check_gluing(n, fam));
    }
  }
}

TEST_CASE("algebraic identities on random forms") {
  std::mt19937 rng(3);
  auto chart = make_chart("V", {"x", "y"}, {Poly::variable(2, 0)});
  for (int n = 0; n < 40; ++n) {
    const int p = static_cast<int>(rng() % 4);
    const int da = static_cast<int>(rng() % 3);
    const int db = static_cast<int>(rng() % 3);
    const Form a = testsupport::random_form(rng, chart, p, da);
    const Form b = testsupport::random_form(rng, chart, p, db);
    CHECK(differential(differential(a)).is_zero());
    const Form ba = b * a;
    CHECK(a * b == ((da * db) % 2 ? -ba : ba));
    const Form rhs = differential(a) * b + (da % 2 ? -(a * differential(b)) : a * differential(b));
    CHECK(differential(a * b) == rhs);
    if (p >= 1) {
      const int i = static_cast<int>(rng() % static_cast<unsigned>(p + 1));
      CHECK(pullback_coface(differential(a), i) == differential(pullback_coface(a, i)));
      CHECK(pullback_coface(a * b, i) == pullback_coface(a, i) * pullback_coface(b, i));
    }
  }
}

TEST_CASE("fibre integration examples") {
  const CoverNerve n = testsupport::p1_nerve(1, false);
  const ChartPtr c12 = n.chart({0, 1});
  FormFamily fam;
  fam.emplace(Tuple{0, 1}, Form::dt(c12, 1, 1) * dz_over_z(c12, 1));
  const CechCochain c = fibre_integrate(n, fam, 2);
  CHECK(c.at(n, {0, 1}) == dz_over_z(c12, 0));
  CHECK(c.to_string(n) == "p=1 (1,2): 1/z dz\n");

  FormFamily ones;
  for (const auto& t : n.tuples()) ones.emplace(t, Form::constant(n.chart(t), static_cast<int>(t.size()) - 1, 1));
  const CechCochain one = fibre_integrate(n, ones, 0);
  CHECK(one.at(n, {0}) == Form::constant(n.chart({0}), 0, 1));
  CHECK(one.at(n, {0, 1}).is_zero());
  CHECK(is_cocycle(n, one));

  const CoverNerve inc = testsupport::p1_nerve(1, true);
  FormFamily half;
  half.emplace(Tuple{0, 1}, Form::t(c12, 1, 1) * Form::dt(c12, 1, 1) * Form::dx(c12, 1, 0));
  CHECK(fibre_integrate(inc, half, 2).at(inc, {0, 1}) == Form::dx(c12, 0, 0).scaled(Rational(1, 2)));

  FormFamily broken;
  broken.emplace(Tuple{0}, Form::dx(n.chart({0}), 0, 0));
  CHECK_THROWS_AS(fibre_integrate(n, broken, 1), Error);
}

TEST_CASE("cocycle check") {
  const CoverNerve n = testsupport::p1_nerve(1, false);
  const ChartPtr c12 = n.chart({0, 1});
  CechCochain c{2, {{Tuple{0, 1}, -dz_over_z(c12, 0)}, {Tuple{1, 0}, dz_over_z(c12, 0)}}};
  CHECK(is_cocycle(n, c));
  CHECK(is_cocycle(n, CechCochain{2, {}}));
  // z dz on (1,2) alone: at the triple (1,2,1) the faces give 0 - 0 + z dz.
  const CoverNerve deep = testsupport::p1_nerve(2, false);
  const ChartPtr d12 = deep.chart({0, 1});
  const Form zdz = Form::dx(d12, 0, 0).times(RatFunc::variable(d12, 0));
  CechCochain bad{2, {{Tuple{0, 1}, zdz}}};
  const CechCochain dbad = total_differential(deep, bad);
  CHECK_FALSE(dbad.is_zero());
  CHECK(dbad.at(deep, {0, 1, 0}) == zdz);
}

TEST_CASE("Stokes on random glued families") {
  const CoverNerve n = testsupport::plane_nerve(2, false);
  for (std::uint32_t seed = 10; seed < 16; ++seed) {
    for (int r = 0; r <= 2; ++r) {
      const FormFamily fam = testsupport::random_glued_family(n, r, seed);
      FormFamily dfam;
      for (const auto& [t, w] : fam) dfam.emplace(t, differential(w));
      const CechCochain lhs = fibre_integrate(n, dfam, r + 1);
      const CechCochain rhs = total_differential(n, fibre_integrate(n, fam, r));
      CHECK(lhs == rhs);
      CHECK(total_differential(n, rhs).is_zero());
    }
  }
}
