#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace degroot::cli;

  CLI::App app{"Heterogeneous DeGroot dynamics with conformists and rebels"};
  app.require_subcommand(1);

  RunConfig config;
  std::string topology_path;
  std::string out_dir;

  auto add_instance_flags = [&](CLI::App* cmd) {
    auto* topo = cmd->add_option("--topology", topology_path, "Topology JSON file");
    auto* gen = cmd->add_option("--generate", config.generate, "Random topology: n,d,seed[,sc]");
    topo->excludes(gen);
    cmd->add_option("--rebels", config.rebels, "Rebel indices (0-based, comma separated), 'all' or 'none'");
    cmd->add_option("--lambda", config.lambda, "Confidence level, or one value per agent");
  };
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--x0", config.x0, "Initial opinions: list, 'ones' or 'rand:SEED'");
    cmd->add_option("--tol", config.tol, "Step tolerance for convergence detection")->capture_default_str();
    cmd->add_option("--window", config.window, "Consecutive steps required by the detectors")->capture_default_str();
    cmd->add_option("--max-iter", config.max_iter, "Iteration cap")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "Structural and spectral report with convergence prediction");
  add_instance_flags(analyze);
  analyze->add_option("--out", out_dir, "Also write report.json into this directory");

  auto* simulate = app.add_subcommand("simulate", "Run the dynamic and write trajectory.csv and verdict.json");
  add_instance_flags(simulate);
  add_run_flags(simulate);
  simulate->add_option("--thin", config.thin, "Keep every k-th state in the CSV")->capture_default_str();
  simulate->add_option("--out", out_dir, "Output directory (default: current directory)");

  auto* verify = app.add_subcommand("verify", "Randomized audit of predictions against simulation");
  add_instance_flags(verify);
  add_run_flags(verify);
  verify->add_option("--trials", config.trials, "Number of random instances")->capture_default_str();
  verify->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  verify->add_option("--out", out_dir, "Also write verify.json into this directory");

  auto* generate = app.add_subcommand("generate", "Write a random topology as JSON");
  generate->add_option("--generate", config.generate, "n,d,seed[,sc]")->required();
  generate->add_option("--out", out_dir, "Write topology.json into this directory instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  if (!topology_path.empty()) config.topology_path = topology_path;
  if (!out_dir.empty()) config.out_dir = out_dir;

  if (*analyze) return cmd_analyze(config, std::cout, std::cerr);
  if (*simulate) return cmd_simulate(config, std::cout, std::cerr);
  if (*verify) return cmd_verify(config, std::cout, std::cerr);
  return cmd_generate(config, std::cout, std::cerr);
}
