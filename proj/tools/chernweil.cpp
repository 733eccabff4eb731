// Command-line front end: chernweil <command> <scenario> [options].
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "chernweil/commands.hpp"
#include "chernweil/error.hpp"

namespace {

int verbosity_from_env() {
  const char* v = std::getenv("CHERNWEIL_VERBOSITY");
  if (!v) return 1;
  const std::string s = v;
  if (s == "0" || s == "quiet") return 0;
  if (s == "2" || s == "verbose") return 2;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace chernweil;
  CLI::App app{"Cech-de Rham representatives of characteristic classes"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  std::string path;
  CommandOptions opt;
  std::vector<std::pair<std::string, CLI::App*>> scenario_commands;
  for (const auto& name : command_names()) {
    if (name == "finite-model") continue;
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("scenario", path, "Scenario file")->required();
    if (name == "chern" || name == "integrate") {
      sub->add_option("--k", opt.k, "Degree of the invariant polynomial")->check(CLI::PositiveNumber);
    }
    if (name == "chern") sub->add_flag("--elementary", opt.elementary, "Use the elementary symmetric function");
    if (name == "admissible-check") sub->add_flag("--canonical", opt.canonical, "Green witnesses at the least position");
    scenario_commands.emplace_back(name, sub);
  }
  FiniteModelRequest fm;
  CLI::App* fmc = app.add_subcommand("finite-model", "Pairs (V, phi) over Q or F_p");
  fmc->add_option("action", fm.action, "apply-e | invariant | weak-equivalence | witness")->required();
  fmc->add_option("--char", fm.characteristic, "0 or a prime");
  fmc->add_option("--phi", fm.phi, "Endomorphism, rows split by ';'");
  fmc->add_option("--source", fm.source, "Source endomorphism");
  fmc->add_option("--target", fm.target, "Target endomorphism");
  fmc->add_option("--map", fm.map, "Morphism matrix");

  if (argc > 1 && argv[1][0] != '-') {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), argv[1]) == names.end()) {
      std::cerr << "error: UnknownCommand: unknown command '" << argv[1] << "'\n";
      return 2;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  const int verbosity = verbosity_from_env();
  try {
    CommandResult res;
    std::string command, scenario_name;
    if (fmc->parsed()) {
      command = "finite-model " + fm.action;
      res = run_finite_model(fm);
    } else {
      for (const auto& [name, sub] : scenario_commands) {
        if (sub->parsed()) command = name;
      }
      const Scenario sc = load_scenario(path);
      scenario_name = sc.name;
      res = run_command(sc, command, opt);
    }
    std::cout << (json ? res.json(command, scenario_name) : res.text(verbosity));
    return res.status;
  } catch (const Error& e) {
    if (json) {
      std::cout << "{\"status\": \"error\", \"code\": \"" << error_code_name(e.code()) << "\"}\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
