#include "chernweil/commands.hpp"

#include <json.hpp>

#include "chernweil/cech.hpp"
#include "chernweil/chern.hpp"
#include "chernweil/error.hpp"
#include "chernweil/finite_model.hpp"

namespace chernweil {

void CommandResult::add(CheckReport r) {
  if (!r.passed) status = 1;
  reports.push_back(std::move(r));
}

std::string CommandResult::text(int verbosity) const {
  std::string out;
  if (verbosity >= 1) {
    for (const auto& l : lines) out += l + "\n";
    for (const auto& r : reports) {
      out += r.to_string() + "\n";
      if (verbosity >= 2) {
        for (const auto& n : r.notes) out += "  " + n + "\n";
      }
    }
  }
  return out + (status == 0 ? "result: pass\n" : "result: FAIL\n");
}

std::string CommandResult::json(const std::string& command, const std::string& scenario) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["scenario"] = scenario;
  j["status"] = status == 0 ? "pass" : "fail";
  j["output"] = lines;
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json o;
    o["name"] = r.name;
    o["passed"] = r.passed;
    o["failure"] = r.failure ? nlohmann::ordered_json(*r.failure) : nlohmann::ordered_json(nullptr);
    o["notes"] = r.notes;
    j["reports"].push_back(o);
  }
  return j.dump(2) + "\n";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate",   "green-check", "mc-check",  "simplicial-check", "admissible-check",
                                                 "curvature",  "chern",       "integrate", "finite-model"};
  return names;
}

namespace {

const ComplexOnNerve& need_complex(const Scenario& sc, const std::string& command) {
  if (!sc.complex) fail(ErrorCode::ValidationError, command + " needs a [complex] section");
  return *sc.complex;
}

LocalConnections locals_at(const Scenario& sc, int s) {
  auto it = sc.locals.find(s);
  return it == sc.locals.end() ? LocalConnections{} : it->second;
}

std::vector<SimplicialConnection> barycentric_all(const Scenario& sc, const ComplexOnNerve& cx) {
  std::vector<SimplicialConnection> out;
  for (int s = 0; s <= cx.top; ++s) out.push_back(barycentric(sc.nerve, cx, sc.green, s, locals_at(sc, s)));
  return out;
}

std::string deg(int s) { return "s=" + std::to_string(s); }

template <class M>
void family_lines(CommandResult& res, const CoverNerve& n, const std::string& label, int s, const std::map<Tuple, M>& fam) {
  for (const auto& t : n.tuples()) {
    auto it = fam.find(t);
    if (it == fam.end()) continue;
    res.lines.push_back(label + " " + deg(s) + " " + n.tuple_name(t) + ": " + render_matrix(it->second));
  }
}

}  // namespace

CommandResult run_command(const Scenario& sc, const std::string& command, const CommandOptions& opt) {
  CommandResult res;
  const CoverNerve& n = sc.nerve;
  if (command == "validate") {
    res.lines.push_back("scenario " + sc.name + ": " + std::to_string(n.opens().size()) + " opens, nerve depth " + std::to_string(n.depth()) +
                        ", " + std::to_string(n.tuples().size()) + " tuples");
    if (sc.complex) {
      res.lines.push_back("complex: top degree " + std::to_string(sc.complex->top) + ", " + std::to_string(sc.green.splittings.size()) +
                          " listed splittings");
    }
    for (const auto& [s, l] : sc.locals) res.lines.push_back("local connections " + deg(s) + ": " + std::to_string(l.size()));
    if (sc.twisting) res.lines.push_back("twisting cochain: " + std::to_string(sc.twisting->components.size()) + " components");
    for (const auto& [s, w] : sc.witnesses) res.lines.push_back("witnesses " + deg(s) + ": " + std::to_string(w.size()));
    CheckReport r("structure");
    r.note("loaded and validated");
    res.add(r);
  } else if (command == "green-check") {
    const auto& cx = need_complex(sc, command);
    res.add(check_green(n, cx, sc.green));
    res.add(check_cartesian(n, cx, false));
  } else if (command == "mc-check") {
    if (!sc.twisting || !sc.local_complexes) fail(ErrorCode::ValidationError, "mc-check needs a [twisting] section");
    res.add(mc_check(n, *sc.local_complexes, *sc.twisting));
  } else if (command == "simplicial-check") {
    const auto& cx = need_complex(sc, command);
    const auto cs = barycentric_all(sc, cx);
    for (int s = 0; s <= cx.top; ++s) {
      CheckReport r = check_simplicial(n, cx, s, cs[static_cast<std::size_t>(s)]);
      r.name += " " + deg(s);
      res.add(r);
    }
  } else if (command == "admissible-check") {
    const auto& cx = need_complex(sc, command);
    const auto cs = barycentric_all(sc, cx);
    for (int s = 0; s <= cx.top; ++s) {
      const auto& c = cs[static_cast<std::size_t>(s)];
      WitnessFamily w;
      std::string source;
      if (auto it = sc.witnesses.find(s); it != sc.witnesses.end()) {
        w = it->second;
        source = "scenario";
      } else if (opt.canonical) {
        w = canonical_witnesses(n, cx, sc.green, s);
        source = "least-position Green";
      } else {
        w = green_witnesses(n, cx, sc.green, s, c);
        source = "Green";
      }
      CheckReport r = check_admissible(n, cx, s, c, w);
      r.name += " " + deg(s);
      r.note(std::to_string(w.size()) + " " + source + " witnesses");
      res.add(r);
    }
  } else if (command == "curvature") {
    const auto& cx = need_complex(sc, command);
    const auto cs = barycentric_all(sc, cx);
    for (int s = 0; s <= cx.top; ++s) family_lines(res, n, "connection", s, cs[static_cast<std::size_t>(s)]);
    for (int s = 0; s <= cx.top; ++s) family_lines(res, n, "curvature", s, curvature(cs[static_cast<std::size_t>(s)]));
  } else if (command == "chern") {
    const auto& cx = need_complex(sc, command);
    const CechCochain c = chern_representative(n, barycentric_all(sc, cx), opt.k, opt.elementary ? Invariant::Elementary : Invariant::TracePower);
    std::string body = c.to_string(n);
    if (body.empty()) body = "0\n";
    std::size_t start = 0;
    for (std::size_t nl; (nl = body.find('\n', start)) != std::string::npos; start = nl + 1) res.lines.push_back(body.substr(start, nl - start));
    res.add(check_cocycle(n, c));
  } else if (command == "integrate") {
    const auto& cx = need_complex(sc, command);
    const auto cs = barycentric_all(sc, cx);
    for (int s = 0; s <= cx.top; ++s) {
      const FormFamily fam = invariant_trace_power(curvature(cs[static_cast<std::size_t>(s)]), opt.k);
      for (const auto& t : n.tuples()) {
        if (auto it = fam.find(t); it != fam.end()) res.lines.push_back("form " + deg(s) + " " + n.tuple_name(t) + ": " + it->second.to_string());
      }
      const CechCochain c = fibre_integrate(n, fam, 2 * opt.k);
      std::string body = c.to_string(n);
      std::size_t start = 0;
      for (std::size_t nl; (nl = body.find('\n', start)) != std::string::npos; start = nl + 1) {
        res.lines.push_back("integral " + deg(s) + " " + body.substr(start, nl - start));
      }
      if (body.empty()) res.lines.push_back("integral " + deg(s) + " 0");
      CheckReport r = check_cocycle(n, c);
      r.name += " " + deg(s);
      res.add(r);
    }
  } else {
    fail(ErrorCode::UnknownCommand, "unknown command '" + command + "'");
  }
  return res;
}

CommandResult run_finite_model(const FiniteModelRequest& req) {
  CommandResult res;
  const long p = req.characteristic;
  auto morphism = [&] {
    PairMorphism m{make_pair_over(p, Grid::parse(req.source)), make_pair_over(p, Grid::parse(req.target)), Grid::parse(req.map)};
    for (auto& x : m.f.entries) {
      Grid one(1, 1);
      one(0, 0) = x;
      x = make_pair_over(p, one).phi(0, 0);
    }
    validate_morphism(m);
    return m;
  };
  if (req.action == "apply-e") {
    const EndoPair e = apply_E(make_pair_over(p, Grid::parse(req.phi)));
    res.lines.push_back("E: dimension " + std::to_string(e.dim()) + ", endomorphism " + e.phi.to_string());
  } else if (req.action == "invariant") {
    const ClassInvariant inv = class_invariant(make_pair_over(p, Grid::parse(req.phi)));
    res.lines.push_back("invariant factors: " + inv.to_string());
    res.lines.push_back("canonical form: " + inv.canonical_form().to_string());
  } else if (req.action == "weak-equivalence") {
    const PairMorphism m = morphism();
    CheckReport r("weak-equivalence");
    const Grid e = induced_on_quotients(m);
    r.note("E(f) = " + e.to_string());
    if (!is_weak_equivalence(m)) r.reject("E(f) = " + e.to_string() + " is not bijective");
    res.add(r);
  } else if (req.action == "witness") {
    const PairMorphism m = morphism();
    CheckReport r("admissibility");
    const auto w = admissibility_witness_search(m);
    if (w) {
      res.lines.push_back("V1 = " + w->v1.to_string());
      res.lines.push_back("W1 = " + w->w1.to_string());
    } else {
      r.reject("no subspace pair satisfies the witness criterion");
    }
    res.add(r);
  } else {
    fail(ErrorCode::UnknownCommand, "unknown finite-model action '" + req.action + "'");
  }
  return res;
}

}  // namespace chernweil
