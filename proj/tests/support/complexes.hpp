#pragma once

#include <algorithm>

#include "chernweil/bundles.hpp"
#include "support/covers.hpp"

namespace testsupport {

using namespace chernweil;

struct GreenExample {
  CoverNerve nerve;
  ComplexOnNerve cx;
  GreenStructure gs;
};

inline RMatrix scalar_matrix(const RatFunc& f) {
  RMatrix m = zero_matrix(f.chart(), 1, 1);
  m(0, 0) = f;
  return m;
}

// The skyscraper resolution on P^1: (O --z--> O) on open 1, zero on open 2,
// over the full nerve. Every tuple meeting open 1 splits off a copy of open
// 1's complex as an elementary summand against sub-tuples that avoid it.
inline GreenExample p1_green(int depth = 1) {
  GreenExample ex{p1_nerve(depth, false), {}, {}};
  auto& cx = ex.cx;
  cx.top = 1;
  auto carries = [](const Tuple& t) { return std::find(t.begin(), t.end(), 0) != t.end(); };
  for (const auto& t : ex.nerve.tuples()) {
    const ChartPtr c = ex.nerve.chart(t);
    const std::size_t r = carries(t) ? 1 : 0;
    cx.ranks[t] = {r, r};
    if (r) cx.differentials[t] = {scalar_matrix(RatFunc::variable(c, 0))};
    for (int i = 0; i < static_cast<int>(t.size()) && t.size() > 1; ++i) {
      const std::size_t fr = carries(omit(t, i)) ? 1 : 0;
      RMatrix m = fr == 1 ? identity_matrix(c, 1) : zero_matrix(c, r, 0);
      cx.cofaces[{t, i}] = {m, m};
    }
    if (!r) continue;
    const RatFunc z = RatFunc::variable(c, 0);
    for (unsigned mask = 1; mask + 1 < (1U << t.size()); ++mask) {
      if (carries(sub_tuple(t, mask))) continue;
      ex.gs.splittings[{t, mask}] = Splitting{{{1, 1, "1"}}, {identity_matrix(c, 1), scalar_matrix(z)}};
    }
  }
  return ex;
}

}  // namespace testsupport

#include "chernweil/twisting.hpp"

namespace testsupport {

struct TwistingExample {
  CoverNerve nerve;
  LocalComplexFamily v;
  TwistingCochain a;
};

// The same skyscraper as a twisting cochain: V_1 = (O --z--> O) in degrees
// -1, 0 and V_2 = 0. From depth 2 on, the triple (1,2,1) needs the homotopy
// 1/z contracting V_1 where z is a unit.
inline TwistingExample p1_twisting(int depth, bool homotopy = true) {
  TwistingExample ex{p1_nerve(depth, false), {}, {}};
  ex.v.lo = -1;
  ex.v.hi = 0;
  ex.v.ranks = {{0, {1, 1}}, {1, {0, 0}}};
  ex.v.differentials.emplace(0, std::vector<RMatrix>{scalar_matrix(RatFunc::variable(ex.nerve.chart({0}), 0))});
  for (const auto& t : ex.nerve.tuples()) {
    const int k = static_cast<int>(t.size()) - 1;
    GradedMap m = zero_graded(ex.nerve, ex.v, t, 1 - k);
    if (k == 0) m = local_differential(ex.nerve, ex.v, t);
    if (k == 1 && t[0] == t[1]) m = identity_graded(ex.nerve, ex.v, t);
    if (homotopy && t == Tuple{0, 1, 0}) m[1] = scalar_matrix(RatFunc(ex.nerve.chart(t), 1) / RatFunc::variable(ex.nerve.chart(t), 0));
    ex.a.components.emplace(t, m);
  }
  return ex;
}

}  // namespace testsupport
