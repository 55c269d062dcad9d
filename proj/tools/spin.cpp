#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spinmod/cli.hpp"

int main(int argc, char** argv) {
  using spinmod::RunConfig;
  RunConfig config;
  std::string format = "json";

  CLI::App app{"spin: limit square roots, local spin moduli and enriched spin strata"};
  app.require_subcommand(1);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", config.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", config.seed, "Seed for random-graph sampling");

  auto* supports = app.add_subcommand("supports", "Enumerate spin supports of a curve");
  supports->add_option("file", config.input_path, "Curve file (JSON)")->required();

  auto* local = app.add_subcommand("local", "Local model of D_X and its blow-up charts");
  local->add_option("--delta", config.delta, "Number of nodes")->required();

  auto* strata = app.add_subcommand("strata", "Stratification of enriched spin curves");
  auto* verify = app.add_subcommand("verify", "Exhaustive torsor verification over F_q");
  for (auto* sub : {strata, verify}) {
    sub->add_option("--g1", config.g1, "Genus of C1")->required();
    sub->add_option("--g2", config.g2, "Genus of C2")->required();
    sub->add_option("--delta", config.delta, "Number of nodes")->required();
  }
  std::uint64_t q = 0;
  strata->add_option("--q", q, "Odd prime for label counts");
  verify->add_option("--q", q, "Odd prime")->required();

  auto* all = app.add_subcommand("all", "Run every verification family");
  auto& bounds = config.bounds;
  all->add_option("--max-delta", bounds.max_delta, "Largest node count (<= 6)");
  all->add_option("--max-genus", bounds.max_genus, "Largest component genus (<= 3)");
  all->add_option("--primes", bounds.primes, "Odd primes for finite-field checks");
  all->add_option("--random-graphs", bounds.random_graphs, "Number of random dual graphs");
  all->add_option("--torsor-max-delta", bounds.torsor_max_delta, "Largest delta for torsor checks");
  all->add_flag("--inject-fault", config.inject_multiplicity_fault,
                "Raise multiplicity exponents by one (harness self-test)")
      ->group("");

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--seed", config.seed, "Seed for random-graph sampling");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.format = format == "text" ? RunConfig::Format::text : RunConfig::Format::json;
  if (q != 0) config.q = q;
  if (supports->parsed()) config.command = RunConfig::Command::supports;
  if (local->parsed()) config.command = RunConfig::Command::local;
  if (strata->parsed()) config.command = RunConfig::Command::strata;
  if (verify->parsed()) config.command = RunConfig::Command::verify;
  if (all->parsed()) config.command = RunConfig::Command::all;
  return spinmod::run(config, std::cout, std::cerr);
}
