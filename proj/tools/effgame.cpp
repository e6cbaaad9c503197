#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "effgame/errors.hpp"
#include "effgame/text.hpp"
#include "effgame/workspace.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw effgame::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::string, std::string> split_binding(const std::string& arg) {
  auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
    throw effgame::Error("expected NAME=FILE, got '" + arg + "'");
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

// Errors from a file are reported with the file name in front.
template <class F>
auto load(const std::string& path, F&& parse) {
  auto text = slurp(path);
  try {
    return parse(text);
  } catch (const effgame::Error& e) {
    throw effgame::Error(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effect signatures, handlers, state machines and costrategies"};
  app.require_subcommand(1);

  std::string sig_file;
  std::string msig_file;
  std::vector<std::string> term_args;
  std::vector<std::string> machine_args;
  std::vector<std::string> strategy_args;
  std::size_t depth = 6;
  app.add_option("--sig", sig_file, "Effect signature file");
  app.add_option("--msig", msig_file, "Multi-sorted signature file");
  app.add_option("--term", term_args, "Load a term: NAME=FILE");
  app.add_option("--machine", machine_args, "Load a state machine: NAME=FILE");
  app.add_option("--strategy", strategy_args, "Load a strategy dump: NAME=FILE");
  app.add_option("--depth", depth, "Truncation / enumeration depth")->capture_default_str();

  std::string name;
  std::string handler;
  std::string suite;
  std::string sort;
  auto* show = app.add_subcommand("show", "Print a term (or unfolded machine) and its tree");
  show->add_option("name", name)->required();
  auto* eval = app.add_subcommand("eval", "Run a handler (identity | io) over a term");
  eval->add_option("term", name)->required();
  eval->add_option("handler", handler)->required();
  auto* strategy = app.add_subcommand("strategy", "Dump the costrategy of a term or machine");
  strategy->add_option("name", name)->required();
  auto* check = app.add_subcommand("check", "Run a property suite over the workspace");
  check->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember(effgame::check_suites()));
  auto* plays = app.add_subcommand("plays", "Enumerate typed plays of --msig from a sort");
  plays->add_option("sort", sort)->required();
  auto* graph = app.add_subcommand("graph", "Print the game graph of the signature");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : effgame::kExitInputError;
  }

  effgame::Workspace ws;
  ws.depth = depth;
  try {
    if (!sig_file.empty()) ws.sig = load(sig_file, effgame::parse_signature);
    if (!msig_file.empty()) ws.msig = load(msig_file, effgame::parse_multisorted);
    for (const auto& arg : term_args) {
      auto [n, path] = split_binding(arg);
      ws.terms.insert_or_assign(
          n, load(path, [&](const std::string& t) { return effgame::parse_partial_term(ws.sig, t); }));
    }
    for (const auto& arg : machine_args) {
      auto [n, path] = split_binding(arg);
      ws.machines.insert_or_assign(
          n, load(path, [&](const std::string& t) { return effgame::parse_machine(ws.sig, t); }));
    }
    for (const auto& arg : strategy_args) {
      auto [n, path] = split_binding(arg);
      ws.strategies.insert_or_assign(
          n, load(path, [&](const std::string& t) { return effgame::parse_strategy(ws.sig, t); }));
    }
  } catch (const effgame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return effgame::kExitInputError;
  }

  try {
    if (*show) return effgame::cmd_show(ws, name, std::cout);
    if (*eval) return effgame::cmd_eval(ws, name, handler, std::cout);
    if (*strategy) return effgame::cmd_strategy(ws, name, std::cout);
    if (*check) return effgame::cmd_check(ws, suite, std::cout);
    if (*plays) return effgame::cmd_plays(ws, sort, std::cout);
    if (*graph) return effgame::cmd_graph(ws, std::cout);
  } catch (const effgame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return effgame::kExitInputError;
  }
  return effgame::kExitInputError;
}
