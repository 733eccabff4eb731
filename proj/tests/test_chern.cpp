#include <doctest.h>

#include "chernweil/chern.hpp"
#include "chernweil/error.hpp"
#include "support/complexes.hpp"

using namespace chernweil;
using testsupport::p1_green;

namespace {

Form dz_over_z(const ChartPtr& c, int p) {
  return Form::dx(c, p, 0).times(RatFunc(c, 1) / RatFunc::variable(c, 0));
}

std::vector<SimplicialConnection> barycentric_all(const testsupport::GreenExample& ex) {
  std::vector<SimplicialConnection> out;
  for (int s = 0; s <= ex.cx.top; ++s) out.push_back(barycentric(ex.nerve, ex.cx, ex.gs, s, {}));
  return out;
}

}  // namespace

TEST_CASE("trace powers and elementary symmetric functions") {
  auto c = make_chart("X", {"x", "y"});
  const Form u = Form::dx(c, 1, 0) * Form::dt(c, 1, 1);
  const Form v = Form::dx(c, 1, 1) * Form::dt(c, 1, 1);
  const Form w = Form::dx(c, 1, 0) * Form::dx(c, 1, 1);
  EndoFamily kappa;
  FMatrix m = zero_forms(c, 1, 2, 2);
  m(0, 0) = u;
  m(1, 1) = w;
  kappa.emplace(Tuple{0, 1}, m);
  CHECK(invariant_trace_power(kappa, 1).at({0, 1}) == u + w);
  CHECK(invariant_trace_power(kappa, 2).at({0, 1}).is_zero());
  CHECK(elementary_symmetric(kappa, 1).at({0, 1}) == u + w);
  CHECK(elementary_symmetric(kappa, 2).at({0, 1}) == u * w);
  m(0, 1) = v;
  kappa.at({0, 1}) = m;
  // Upper triangular: the off-diagonal entry does not reach either invariant.
  CHECK(elementary_symmetric(kappa, 2).at({0, 1}) == u * w);
  CHECK(invariant_trace_power(kappa, 3).at({0, 1}).is_zero());
  CHECK_THROWS_AS(invariant_trace_power(kappa, 0), Error);
}

TEST_CASE("first Chern representative of the P1 skyscraper") {
  const auto ex = p1_green();
  const ChartPtr c = ex.nerve.chart({0, 1});
  const CechCochain ch = chern_representative(ex.nerve, barycentric_all(ex), 1);
  CHECK(ch.degree == 2);
  CHECK(ch.at(ex.nerve, {0, 1}) == -dz_over_z(c, 0));
  CHECK(ch.at(ex.nerve, {1, 0}) == dz_over_z(c, 0));
  CHECK(ch.at(ex.nerve, {0}).is_zero());
  CHECK(ch.at(ex.nerve, {1}).is_zero());
  CHECK(ch.at(ex.nerve, {0, 0}).is_zero());
  CHECK(ch.to_string(ex.nerve) == "p=1 (1,2): -1/z dz\np=1 (2,1): 1/z dz\n");
  CHECK(check_cocycle(ex.nerve, ch).passed);
  CHECK(chern_representative(ex.nerve, barycentric_all(ex), 1, Invariant::Elementary) == ch);
  CHECK(chern_representative(ex.nerve, barycentric_all(ex), 2).is_zero());
}

TEST_CASE("P1 skyscraper at depth 2") {
  const auto ex = p1_green(2);
  CHECK_NOTHROW(validate_complex(ex.nerve, ex.cx));
  const CheckReport green = check_green(ex.nerve, ex.cx, ex.gs);
  INFO(green.to_string());
  CHECK(green.passed);
  const auto conns = barycentric_all(ex);
  for (int s = 0; s <= 1; ++s) {
    CHECK(check_simplicial(ex.nerve, ex.cx, s, conns[static_cast<std::size_t>(s)]).passed);
    const auto& c = conns[static_cast<std::size_t>(s)];
    const CheckReport adm = check_admissible(ex.nerve, ex.cx, s, c, green_witnesses(ex.nerve, ex.cx, ex.gs, s, c));
    INFO(adm.to_string());
    CHECK(adm.passed);
  }
  // Against open 2 the complement of (2,1) is all of E^1 there, which is
  // curved; the least-position witness therefore fails on (1,2,1).
  const CheckReport least = check_admissible(ex.nerve, ex.cx, 1, conns[1], canonical_witnesses(ex.nerve, ex.cx, ex.gs, 1));
  REQUIRE_FALSE(least.passed);
  CHECK(*least.failure == "coface 0 of (1,2,1): (i) source induced connection on the sub-bundle is not flat");
  const CechCochain ch = chern_representative(ex.nerve, conns, 1);
  CHECK(ch.at(ex.nerve, {0, 1}) == -dz_over_z(ex.nerve.chart({0, 1}), 0));
  CHECK(ch.at(ex.nerve, {0, 1, 0}).is_zero());
  CHECK(check_cocycle(ex.nerve, ch).passed);
}

TEST_CASE("cocycle failures are located") {
  const auto ex = p1_green();
  CHECK(check_cocycle(ex.nerve, CechCochain{2, {}}).passed);
  // z on open 1 alone: dz survives on (1) and the restriction survives on (1,2).
  CechCochain one{1, {}};
  one.components.emplace(Tuple{0}, Form::scalar(RatFunc::variable(ex.nerve.chart({0}), 0), 0));
  const CheckReport rep = check_cocycle(ex.nerve, one);
  REQUIRE_FALSE(rep.passed);
  CHECK(*rep.failure == "D c on (1) is dz");
}
