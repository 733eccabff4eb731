#pragma once

#include "chernweil/nerve.hpp"

namespace testsupport {

using namespace chernweil;

// Two opens 1, 2 with charts z, w and w = 1/z on the overlap.
inline CoverNerve p1_nerve(int depth, bool increasing) {
  CoverNerve n;
  n.add_open("1");
  n.add_open("2");
  auto u1 = make_chart("U1", {"z"});
  auto u2 = make_chart("U2", {"w"});
  auto u12 = make_chart("U12", {"z"}, {Poly::variable(1, 0)});
  n.add_chart(u1);
  n.add_chart(u2);
  n.add_chart(u12);
  n.assign_chart({0}, "U1");
  n.assign_chart({1}, "U2");
  n.assign_chart({0, 1}, "U12");
  n.declare_restriction("U1", "U12", Substitution::by_name(u1, u12));
  n.declare_restriction("U2", "U12", Substitution{u2, u12, {RatFunc(u12, 1) / RatFunc::variable(u12, 0)}});
  n.generate(depth, increasing);
  n.finalize();
  return n;
}

// Three opens a, b, c on two-variable charts with non-trivial restrictions.
inline CoverNerve plane_nerve(int depth, bool increasing) {
  CoverNerve n;
  for (const char* o : {"a", "b", "c"}) n.add_open(o);
  const Poly x = Poly::variable(2, 0);
  const Poly y = Poly::variable(2, 1);
  const Poly one = Poly::constant(2, 1);
  auto ua = make_chart("Ua", {"x", "y"});
  auto ub = make_chart("Ub", {"u", "v"});
  auto uc = make_chart("Uc", {"x", "y"});
  auto uab = make_chart("Uab", {"x", "y"}, {x});
  auto uac = make_chart("Uac", {"x", "y"}, {y + one});
  auto ubc = make_chart("Ubc", {"x", "y"}, {x});
  auto uabc = make_chart("Uabc", {"x", "y"}, {x, y + one});
  for (const auto& c : {ua, ub, uc, uab, uac, ubc, uabc}) n.add_chart(c);
  n.assign_chart({0}, "Ua");
  n.assign_chart({1}, "Ub");
  n.assign_chart({2}, "Uc");
  n.assign_chart({0, 1}, "Uab");
  n.assign_chart({0, 2}, "Uac");
  n.assign_chart({1, 2}, "Ubc");
  n.assign_chart({0, 1, 2}, "Uabc");
  auto b_to = [](const ChartPtr& t) {
    const RatFunc X = RatFunc::variable(t, 0);
    const RatFunc Y = RatFunc::variable(t, 1);
    return std::vector<RatFunc>{RatFunc(t, 1) / X, X * Y};
  };
  auto c_to = [](const ChartPtr& t) {
    const RatFunc X = RatFunc::variable(t, 0);
    const RatFunc Y = RatFunc::variable(t, 1);
    return std::vector<RatFunc>{X + Y, Y};
  };
  n.declare_restriction("Ua", "Uab", Substitution::by_name(ua, uab));
  n.declare_restriction("Ua", "Uac", Substitution::by_name(ua, uac));
  n.declare_restriction("Ub", "Uab", Substitution{ub, uab, b_to(uab)});
  n.declare_restriction("Ub", "Ubc", Substitution{ub, ubc, b_to(ubc)});
  n.declare_restriction("Uc", "Uac", Substitution{uc, uac, c_to(uac)});
  n.declare_restriction("Uc", "Ubc", Substitution{uc, ubc, c_to(ubc)});
  n.declare_restriction("Uab", "Uabc", Substitution::by_name(uab, uabc));
  n.declare_restriction("Uac", "Uabc", Substitution::by_name(uac, uabc));
  n.declare_restriction("Ubc", "Uabc", Substitution::by_name(ubc, uabc));
  n.generate(depth, increasing);
  n.finalize();
  return n;
}

}  // namespace testsupport
