#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli_commands.hpp"

namespace {

using namespace picod;
using namespace picod::cli;

void add_instance_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("-m", cfg.m, "number of messages")->check(CLI::PositiveNumber);
  app->add_option("-t", cfg.t, "messages each user must decode")->check(CLI::PositiveNumber);
  app->add_option("-S", cfg.S, "side-information sizes, e.g. 0,2-4");
  app->add_option("--instance", cfg.instance_path, "instance JSON file")->check(CLI::ExistingFile);
}

void add_run_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--field", cfg.field, "prime field modulus")->check([](const std::string& v) {
    try {
      return is_prime(static_cast<std::uint32_t>(std::stoul(v))) ? std::string{} : v + " is not prime";
    } catch (const std::exception&) {
      return v + " is not a number";
    }
  });
  app->add_option("--cap-users", cfg.caps.users, "complete-S user cap")->check(CLI::PositiveNumber);
  app->add_option("--cap-assignments", cfg.caps.assignments, "assignment enumeration cap")
      ->check(CLI::PositiveNumber);
  app->add_option("--cap-nodes", cfg.caps.search_nodes, "search node cap")->check(CLI::PositiveNumber);
  app->add_option("--seed", cfg.seed, "seed for randomized suites");
  app->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--trace", cfg.trace, "include derivation traces");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pliable index coding toolkit: complete-S instances, bounds, schemes and oracles"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  bool pretty_out = false;
  std::optional<std::string> output;
  app.add_flag("--pretty", pretty_out, "human-readable output");
  app.add_option("-o,--output", output, "write output to a file instead of stdout");

  auto* gen = app.add_subcommand("gen", "build a complete-S instance");
  add_instance_flags(gen, cfg);
  add_run_flags(gen, cfg);

  auto* report = app.add_subcommand("report", "bounds, scheme and closed form for a complete-S instance");
  add_instance_flags(report, cfg);
  add_run_flags(report, cfg);
  bool exact = false, heuristic = false;
  report->add_flag("--exact", exact, "exact decoding-chain search");
  report->add_flag("--heuristic", heuristic, "greedy decoding-chain search")->excludes("--exact");

  auto* verify = app.add_subcommand("verify", "check a linear code against an instance");
  add_instance_flags(verify, cfg);
  add_run_flags(verify, cfg);
  std::string code_path;
  verify->add_option("--code", code_path, "code JSON file")->required()->check(CLI::ExistingFile);

  auto* hyper = app.add_subcommand("hypergraph", "network topology hypergraph operations");
  add_instance_flags(hyper, cfg);
  add_run_flags(hyper, cfg);
  std::string hyper_sub;
  std::optional<std::string> order;
  hyper->add_option("action", hyper_sub, "topology | one-factor | circular-arc")
      ->required()
      ->check(CLI::IsMember({"topology", "one-factor", "circular-arc"}));
  hyper->add_option("--order", order, "cyclic vertex order, 1-based, e.g. 1,3,2");

  auto* oracle = app.add_subcommand("oracle", "combinatorial lemma oracles");
  add_run_flags(oracle, cfg);
  std::string oracle_sub;
  OracleArgs oargs;
  oracle
      ->add_option("action", oracle_sub,
                   "lemma3-sweep | lemma4-random | block-cover | critical-block-cover | lemma3-witness")
      ->required()
      ->check(CLI::IsMember(
          {"lemma3-sweep", "lemma4-random", "block-cover", "critical-block-cover", "lemma3-witness"}));
  oracle->add_option("--s-max", oargs.s_max, "largest ground size for lemma3-sweep")->check(CLI::Range(1, 6));
  oracle->add_option("--count", oargs.count, "random families for lemma4-random")->check(CLI::PositiveNumber);
  oracle->add_option("--x-max", oargs.x_max, "most blocks per random family")->check(CLI::Range(1, 32));
  oracle->add_option("--y-max", oargs.y_max, "largest ground for random families")->check(CLI::Range(1, 20));
  oracle->add_option("--input", oargs.input_path, "block cover JSON {m,s,t,blocks}")->check(CLI::ExistingFile);
  oracle->add_option("--family", oargs.family, "subsets separated by ';', e.g. \"1;1\"");
  oracle->add_option("-s", oargs.s, "ground size for lemma3-witness")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }
  if (exact) cfg.chain_mode = ChainMode::Exact;
  if (heuristic) cfg.chain_mode = ChainMode::Heuristic;

  CommandResult result;
  try {
    if (*gen) result = cmd_gen(cfg);
    else if (*report) result = cmd_report(cfg);
    else if (*verify) result = cmd_verify(cfg, code_path);
    else if (*hyper) result = cmd_hypergraph(cfg, hyper_sub, order);
    else result = cmd_oracle(cfg, oracle_sub, oargs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return kError;
  }

  const std::string text = pretty_out ? pretty(result.out) : result.out.dump() + "\n";
  if (output) {
    std::ofstream out(*output);
    if (!out) {
      std::cerr << "error: cannot write " << *output << "\n";
      return kError;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return result.code;
}
