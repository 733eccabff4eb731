#include <doctest.h>

#include "chernweil/commands.hpp"
#include "chernweil/error.hpp"

using namespace chernweil;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ValidationError;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kTiny = R"(
[cover]
opens = u
chart U = x
intersection u = U

[complex]
top = 0
rank (u) = 2
rank (u,u) = 2
)";

}  // namespace

TEST_CASE("form expressions") {
  auto c = make_chart("U12", {"z"}, {Poly::variable(1, 0)});
  const Form expect = Form::t(c, 1, 1).times(RatFunc(c, 1) / RatFunc::variable(c, 0)) * Form::dx(c, 1, 0) * Form::dt(c, 1, 1);
  CHECK(parse_form("t1 * (1/z) dz ^ dt1", c, 1) == expect);
  CHECK(parse_form("1/z*t1 dz ^ dt1", c, 1) == expect);
  CHECK(parse_form("-1/z dz", c, 0) == -Form::dx(c, 0, 0).times(RatFunc(c, 1) / RatFunc::variable(c, 0)));
  CHECK(parse_ratfunc("(z^2 - 1)/z", c).to_string() == "(z^2 - 1)/z");
  CHECK(parse_ratfunc("z^-2", c) == pow(RatFunc::variable(c, 0), -2));
  CHECK(parse_form("dz ^ dz", c, 0).is_zero());
  CHECK(parse_form("t0 + t1", c, 1) == Form::constant(c, 1, 1));
  CHECK(code_of([&] { parse_ratfunc("1/(z - 1)", c); }) == ErrorCode::NotInvertibleOnChart);
  CHECK(code_of([&] { parse_form("t2", c, 1); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_form("1/dz", c, 0); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_form("z +", c, 0); }) == ErrorCode::ParseError);
  CHECK(message_of([&] { parse_form("z + q", c, 0); }).find("column 5") != std::string::npos);
}

TEST_CASE("rendered forms parse back") {
  auto c = make_chart("X", {"x", "y"}, {Poly::variable(2, 0)});
  for (const char* text : {"x*y dx ^ dy", "(x + 1)/x^3 dy", "-3/2*t1^2*t2 dx ^ dt2", "x^2*y - y dt1 ^ dt2 + 7", "(x^2 - y)/x*t1 dx"}) {
    const Form f = parse_form(text, c, 2);
    CHECK(parse_form(f.to_string(), c, 2) == f);
  }
}

TEST_CASE("loading the P1 fixture") {
  const Scenario sc = load_scenario(fixture("green_p1.scn"));
  CHECK(sc.name == "green_p1");
  CHECK(sc.nerve.depth() == 1);
  CHECK(sc.nerve.opens().size() == 2);
  REQUIRE(sc.complex.has_value());
  CHECK(sc.green.splittings.size() == 2);
  CHECK(sc.complex->cofaces.size() == 8);
}

TEST_CASE("scenario round trip") {
  for (const char* name : {"green_p1.scn", "twisting_p1.scn", "synthetic_rank2.scn"}) {
    const Scenario sc = load_scenario(fixture(name));
    const std::string text = render_scenario(sc);
    const Scenario back = parse_scenario(text);
    CHECK(same_scenario(sc, back));
    CHECK(render_scenario(back) == text);
  }
  Scenario w = load_scenario(fixture("green_p1.scn"));
  const Scenario base = w;
  w.name = "other";
  CHECK_FALSE(same_scenario(w, base));
}

TEST_CASE("explicit tuples and witnesses round trip") {
  const std::string text = std::string(kTiny) + "\n[witnesses]\nwitness 0 (u,u) 1 = id(2) ; [[1], [0]]\n";
  std::string t = text;
  t.replace(t.find("intersection u = U"), 18, "intersection u = U\ntuples = (u) (u,u)");
  const Scenario sc = parse_scenario(t);
  CHECK_FALSE(sc.nerve.generated());
  CHECK(sc.nerve.tuples().size() == 2);
  CHECK(sc.witnesses.at(0).size() == 1);
  CHECK(same_scenario(parse_scenario(render_scenario(sc)), sc));
}

TEST_CASE("malformed scenarios") {
  CHECK(code_of([] { parse_scenario(""); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_scenario("# only a comment\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_scenario("[bogus]\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_scenario("opens = a\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_scenario(fixture("missing.scn")); }) == ErrorCode::ParseError);
  const std::string bad_entry = std::string(kTiny) + "\n[connections]\nlocal 0 u = [[dx, 0], [0 dq]]\n";
  const std::string msg = message_of([&] { parse_scenario(bad_entry); });
  CHECK(msg.find("ParseError") == 0);
  CHECK(msg.find("line 13, column 26") != std::string::npos);
  std::string wrong_rank = kTiny;
  wrong_rank.replace(wrong_rank.find("rank (u,u) = 2"), 14, "rank (u,u) = 1");
  CHECK(code_of([&] { parse_scenario(wrong_rank); }) == ErrorCode::ValidationError);
  CHECK(message_of([&] { load_scenario(fixture("corrupted_p1.scn")); }).find("(1,2)") != std::string::npos);
  const std::string shape = std::string(kTiny) + "\n[connections]\nlocal 0 u = [[dx]]\n";
  CHECK_THROWS_AS(parse_scenario(shape), Error);
  const std::string witness = std::string(kTiny) + "\n[witnesses]\nwitness 0 (u,u) 1 = id(3) ; id(2)\n";
  CHECK(code_of([&] { parse_scenario(witness); }) == ErrorCode::WitnessShapeMismatch);
}

TEST_CASE("commands on the fixtures") {
  const Scenario p1 = load_scenario(fixture("green_p1.scn"));
  const CommandResult chern = run_command(p1, "chern", {});
  CHECK(chern.status == 0);
  CHECK(chern.lines == std::vector<std::string>{"p=1 (1,2): -1/z dz", "p=1 (2,1): 1/z dz"});
  CHECK(run_command(p1, "chern", {}).text(1) == chern.text(1));
  CommandOptions k2;
  k2.k = 2;
  CHECK(run_command(p1, "chern", k2).lines == std::vector<std::string>{"0"});
  for (const char* c : {"validate", "green-check", "simplicial-check", "admissible-check", "curvature", "integrate"}) {
    CHECK_MESSAGE(run_command(p1, c, {}).status == 0, c);
  }
  CHECK(code_of([&] { run_command(p1, "mc-check", {}); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { run_command(p1, "frobnicate", {}); }) == ErrorCode::UnknownCommand);

  const Scenario tw = load_scenario(fixture("twisting_p1.scn"));
  CHECK(run_command(tw, "mc-check", {}).status == 0);
  Scenario broken = tw;
  broken.twisting->components.at({0, 1, 0})[1](0, 0) = RatFunc(broken.nerve.chart({0, 1, 0}), 1);
  const CommandResult r = run_command(broken, "mc-check", {});
  CHECK(r.status == 1);
  CHECK(r.reports.at(0).failure->find("(1,2,1)") != std::string::npos);
  CHECK(r.json("mc-check", "x").find("\"status\": \"fail\"") != std::string::npos);

  const Scenario syn = load_scenario(fixture("synthetic_rank2.scn"));
  for (const char* c : {"green-check", "simplicial-check", "admissible-check", "chern"}) {
    CHECK_MESSAGE(run_command(syn, c, {}).status == 0, c);
  }
}

TEST_CASE("finite-model command") {
  FiniteModelRequest req{"witness", 5, "", "1 0; 0 0", "1", "1 0"};
  const CommandResult w = run_finite_model(req);
  CHECK(w.status == 0);
  CHECK(w.lines.at(0) == "V1 = [[0], [1]]");
  req.action = "weak-equivalence";
  CHECK(run_finite_model(req).status == 0);
  req.map = "0 0";
  CHECK(run_finite_model(req).status == 1);
  req.map = "1 1";
  CHECK(code_of([&] { run_finite_model(req); }) == ErrorCode::ValidationError);
  const CommandResult inv = run_finite_model({"invariant", 0, "2 0; 0 0", "", "", ""});
  CHECK(inv.lines.at(1) == "canonical form: [[2]]");
  CHECK(code_of([&] { run_finite_model({"sing", 5, "", "", "", ""}); }) == ErrorCode::UnknownCommand);
}
