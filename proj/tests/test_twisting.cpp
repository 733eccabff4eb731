#include <doctest.h>

#include "chernweil/error.hpp"
#include "chernweil/twisting.hpp"
#include "support/complexes.hpp"

using namespace chernweil;
using testsupport::p1_twisting;
using testsupport::scalar_matrix;

TEST_CASE("deleted Cech differential skips both end faces") {
  const auto ex = p1_twisting(2);
  // Level zero: the sum over i = 1..0 is empty.
  EndoCochain c0{0, {}};
  for (const auto& t : ex.nerve.tuples_at(0)) c0.components.emplace(t, identity_graded(ex.nerve, ex.v, t));
  for (const auto& [t, m] : deleted_cech_differential(ex.nerve, ex.v, c0, 0).components) CHECK(is_zero(m));
  // Level one: a single term, minus the outer pair.
  EndoCochain c1{1, {}};
  for (const auto& t : ex.nerve.tuples_at(1)) c1.components.emplace(t, zero_graded(ex.nerve, ex.v, t, 0));
  c1.components.at({0, 0}) = identity_graded(ex.nerve, ex.v, {0, 0});
  const auto d = deleted_cech_differential(ex.nerve, ex.v, c1, 1);
  CHECK(d.total_degree == 2);
  const auto& m = d.components.at({0, 1, 0});
  CHECK(m[0](0, 0).to_string() == "-1");
  CHECK(m[1](0, 0).to_string() == "-1");
  CHECK(is_zero(d.components.at({0, 0, 1})));
  c1.components.erase({0, 0});
  CHECK_THROWS_AS(deleted_cech_differential(ex.nerve, ex.v, c1, 1), Error);
}

TEST_CASE("level-one product is the chain-map defect") {
  const auto ex = p1_twisting(1);
  auto a = ex.a;
  const ChartPtr u1 = ex.nerve.chart({0});
  a.components.at({0, 0})[1] = scalar_matrix(RatFunc(u1, 2));
  const auto aa = cochain_product(ex.nerve, ex.v, a, a);
  // f o d - d o f with f = diag(1, 2): block from degree -1 is 2z - z.
  CHECK(aa.components.at({0, 0})[0](0, 0).to_string() == "z");
  CHECK(is_zero(aa.components.at({0})));
}

TEST_CASE("the P1 twisting cochain satisfies Maurer-Cartan") {
  for (int depth = 1; depth <= 3; ++depth) {
    const auto ex = p1_twisting(depth);
    CHECK_NOTHROW(validate_local_complexes(ex.nerve, ex.v));
    const CheckReport rep = mc_check(ex.nerve, ex.v, ex.a);
    INFO(depth, " ", rep.to_string());
    CHECK(rep.passed);
  }
  // Without the homotopy only depth 1 survives.
  CHECK(mc_check(testsupport::p1_nerve(1, false), p1_twisting(1, false).v, p1_twisting(1, false).a).passed);
  const auto bare = p1_twisting(2, false);
  const CheckReport rep = mc_check(bare.nerve, bare.v, bare.a);
  REQUIRE_FALSE(rep.passed);
  CHECK(rep.failure->find("Maurer-Cartan defect on (1,2,1)") == 0);
}

TEST_CASE("single open with identity and differential") {
  CoverNerve n;
  n.add_open("1");
  auto c = make_chart("U", {"x"});
  n.add_chart(c);
  n.assign_chart({0}, "U");
  n.generate(3, false);
  n.finalize();
  LocalComplexFamily v;
  v.lo = 0;
  v.hi = 2;
  v.ranks = {{0, {1, 2, 1}}};
  RMatrix d0 = zero_matrix(c, 2, 1);
  d0(0, 0) = RatFunc::variable(c, 0);
  RMatrix d1 = zero_matrix(c, 1, 2);
  d1(0, 1) = RatFunc(c, 1);
  v.differentials.emplace(0, std::vector<RMatrix>{d0, d1});
  CHECK_NOTHROW(validate_local_complexes(n, v));
  TwistingCochain a;
  for (const auto& t : n.tuples()) {
    const int k = static_cast<int>(t.size()) - 1;
    a.components.emplace(t, k == 0 ? local_differential(n, v, t) : k == 1 ? identity_graded(n, v, t) : zero_graded(n, v, t, 1 - k));
  }
  CHECK(mc_check(n, v, a).passed);
  // d o d != 0 is rejected up front.
  v.differentials.at(0)[1](0, 0) = RatFunc(c, 1);
  CHECK_THROWS_AS(validate_local_complexes(n, v), Error);
}

TEST_CASE("every single perturbation of the P1 cochain is located") {
  const auto ex = p1_twisting(2);
  int mutations = 0;
  for (const auto& [t, m] : ex.a.components) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k].rows() == 0 || m[k].cols() == 0) continue;
      auto a = ex.a;
      auto& entry = a.components.at(t)[k](0, 0);
      entry = entry + RatFunc(entry.chart(), 1);
      const CheckReport rep = mc_check(ex.nerve, ex.v, a);
      INFO(ex.nerve.tuple_name(t), " block ", k);
      CHECK_FALSE(rep.passed);
      CHECK(rep.failure->find(ex.nerve.tuple_name(t).substr(0, 2)) != std::string::npos);
      ++mutations;
    }
  }
  CHECK(mutations >= 5);
}

TEST_CASE("malformed components throw") {
  auto ex = p1_twisting(1);
  ex.a.components.at({0, 1}) = zero_graded(ex.nerve, ex.v, {1, 0}, 0);
  ex.a.components.at({0, 1})[0] = zero_matrix(ex.nerve.chart({0, 1}), 2, 2);
  CHECK_THROWS_AS(mc_check(ex.nerve, ex.v, ex.a), Error);
}
