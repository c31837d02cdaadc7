// effectkit: command-line front end for the effect-algebra toolkit.
//
// Exit codes: 0 all asserted checks hold, 1 a violation was found, 2 a check
// ran out of budget, 3 bad input or unsupported operation.

#include <chrono>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "effectkit/commands.hpp"

int main(int argc, char** argv) {
  using namespace effectkit;
  CLI::App app{"Effect algebras, ideals, states and lexicographic representations"};
  app.require_subcommand(1);
  app.fallthrough();

  CommandOptions opts;
  bool json = false, timing = false;
  int jobs = 1;
  app.add_option("--window", opts.budget.window, "Half-width of integer search windows")->check(CLI::NonNegativeNumber);
  app.add_option("--samples", opts.budget.samples, "Random samples per sampled check")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opts.budget.seed, "Seed for sampled checks");
  app.add_option("--jobs", jobs, "Worker threads (checks currently run on one)")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "Emit the report as JSON");
  app.add_flag("--timing", timing, "Include wall-clock time in the report");

  std::map<std::string, std::string> const about{
      {"check", "Axioms, RDP, order type, MV structure and infinitesimals"},
      {"rdp", "Riesz decomposition property with a counterexample if it fails"},
      {"ideals", "Ideal lattice: maximal, prime, radical, strict and lexicographic ideals"},
      {"states", "State existence, extremes and uniqueness"},
      {"decompose", "Decompositions induced by (H,u)-states into a given head"},
      {"represent", "Lexicographic representation over the head"},
      {"subdirect", "Subdirect product of antilattice quotients"},
      {"classify", "Local-retractive classification branches"},
  };
  std::string file;
  std::string chosen;
  for (auto const& name : command_names()) {
    auto* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("file", file, "Algebra document (.ea)")->required();
    if (name == "decompose") {
      sub->add_option("--head", opts.head, "Unital head group, e.g. Z:product(1)@1")->required();
    }
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  try {
    auto doc = load_document(file);
    auto start = std::chrono::steady_clock::now();
    Report r = run_command(chosen, doc, doc.name, opts);
    if (timing)
      r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cout << (json ? emit_json(r) : emit_text(r));
    return r.exit_code();
  } catch (ParseError const& e) {
    std::cerr << file << ": " << e.what() << "\n";
  } catch (Unsupported const& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 3;
}
