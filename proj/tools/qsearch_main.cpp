// Command-line front end: flag parsing only. All behavior lives in
// qsearch::cli::execute so the test suite can drive it in-process.

#include <string>

#include "CLI11.hpp"
#include "qsearch/cli.hpp"

namespace {

using qsearch::cli::OutputFormat;
using qsearch::cli::RunConfig;

void add_output_flags(CLI::App* cmd, RunConfig& config, std::string& format) {
  cmd->add_option("--out", config.out_path,
                  "write the result document to this path (relative paths "
                  "resolve against $QSEARCH_OUTPUT_DIR)");
  cmd->add_option("--format", format, "output format for table runs")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--timing", config.timing,
                "include wall-clock time (breaks byte reproducibility)");
}

void add_sampling_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--shots", config.shots,
                  "sample this many measurements into a histogram")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", config.seed, "measurement sampling seed");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  std::string format;

  CLI::App app{"Exact state-vector lab for quantum search algorithms"};
  app.require_subcommand(1);

  CLI::App* dj = app.add_subcommand(
      "dj", "constant-vs-balanced classification in one query");
  dj->add_option("--n", config.n, "input bits")->required();
  dj->add_option("--function-file", config.function_file,
                 "truth table file (one 0/1 per line)");
  dj->add_option("--family", config.family,
                 "built-in function family: constant0|constant1|balanced");
  dj->add_option("--probe-bit", config.probe_bit,
                 "bit the built-in balanced family reads");
  add_output_flags(dj, config, format);

  CLI::App* bv = app.add_subcommand(
      "bv", "hidden linear-string recovery in one query");
  bv->add_option("--n", config.n, "input bits")->required();
  bv->add_option("--hidden-a", config.hidden_a,
                 "hidden string as an integer bit mask");
  add_output_flags(bv, config, format);

  CLI::App* grover = app.add_subcommand(
      "grover", "quadratic-speedup search for marked items");
  grover->add_option("--n", config.n, "database size")->required();
  grover->add_option("--m", config.m, "number of marked items (targets 0..m-1)");
  grover->add_option("--targets", config.targets,
                     "explicit marked indices (comma separated)")
      ->delimiter(',');
  grover->add_option("--j", config.j, "iteration override");
  add_sampling_flags(grover, config);
  add_output_flags(grover, config, format);

  CLI::App* amplify = app.add_subcommand(
      "amplify", "amplitude amplification from a general preparation");
  amplify->add_option("--n", config.n, "register size")->required();
  amplify->add_option("--target", config.target, "target index");
  amplify->add_option("--prepare", config.prepare,
                      "preparation circuit: uniform|half");
  add_sampling_flags(amplify, config);
  add_output_flags(amplify, config, format);

  CLI::App* structured = app.add_subcommand(
      "structured", "two-criterion pair search with a partially known first "
                    "coordinate");
  structured->add_option("--n", config.n, "per-coordinate range")->required();
  structured->add_option("--a-target", config.a_target, "true first coordinate");
  structured->add_option("--b-target", config.b_target, "true second coordinate");
  structured->add_option("--g-size", config.g_size,
                         "size of the candidate set for the first coordinate");
  add_output_flags(structured, config, format);

  CLI::App* optimality = app.add_subcommand(
      "optimality", "query-drift bounds behind the iteration lower bound");
  optimality->add_option("--n", config.n, "database size")->required();
  optimality->add_option("--j", config.j, "iteration override");
  add_output_flags(optimality, config, format);

  CLI::App* partial = app.add_subcommand(
      "partial", "block-level search: fewer queries for a coarser answer");
  partial->add_option("--n", config.n, "database size")->required();
  partial->add_option("--k", config.k, "number of blocks")->required();
  partial->add_option("--kt", config.kt, "number of target blocks");
  partial->add_option("--bt", config.bt, "targets per target block");
  partial->add_option("--j1", config.j1, "global iteration override");
  partial->add_option("--j2", config.j2, "local iteration override");
  add_sampling_flags(partial, config);
  add_output_flags(partial, config, format);

  CLI::App* sure = app.add_subcommand(
      "sure-success", "phase-tuned block search with certain outcome");
  sure->add_option("--n", config.n, "database size");
  sure->add_option("--k", config.k, "number of blocks");
  sure->add_option("--kt", config.kt, "number of target blocks");
  sure->add_option("--bt", config.bt, "targets per target block");
  sure->add_flag("--sweep", config.sweep, "tabulate the standard size grid");
  add_output_flags(sure, config, format);

  CLI::App* adiabatic = app.add_subcommand(
      "adiabatic", "continuous-time search by slow Hamiltonian interpolation");
  adiabatic->add_option("--n", config.n, "database size");
  adiabatic->add_option("--m", config.m, "number of marked items");
  adiabatic->add_option("--epsilon", config.epsilon, "adiabaticity budget");
  adiabatic->add_option("--schedule", config.schedule,
                        "interpolation schedule: linear|local");
  adiabatic->add_option("--total-time", config.total_time, "evolution time override");
  adiabatic->add_option("--dt", config.dt, "integrator step override");
  adiabatic->add_flag("--sweep", config.sweep, "tabulate fidelity over a size grid");
  add_output_flags(adiabatic, config, format);

  CLI::App* compare = app.add_subcommand(
      "compare-partial", "query-cost comparison of block-search strategies");
  compare->add_option("--n", config.n, "database size");
  compare->add_option("--k", config.k, "number of blocks");
  compare->add_option("--sweep-k", config.sweep_k,
                      "tabulate plan parameters for these block counts")
      ->delimiter(',');
  add_output_flags(compare, config, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {  // --help and friends
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // flag/usage problems are configuration errors
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  config.hidden_a_set = bv->count("--hidden-a") > 0;
  if (!format.empty()) {
    config.format_set = true;
    config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  }
  return qsearch::cli::execute(config);
}
