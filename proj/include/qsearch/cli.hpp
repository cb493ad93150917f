#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsearch/state.hpp"

// Library-level command harness. The binary front end only parses flags into
// a RunConfig and calls execute(); everything observable (documents, exit
// codes) is produced here so tests can drive the full harness in-process.

namespace qsearch::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  // One of: dj, bv, grover, amplify, structured, optimality, partial,
  // sure-success, adiabatic, compare-partial.
  std::string subcommand;

  std::int64_t n = 0;   // elements (grover/partial/...) or bits (dj/bv)
  std::int64_t k = 0;   // block count
  std::int64_t m = -1;  // target count; -1 = subcommand default
  std::int64_t kt = 1;  // target blocks
  std::int64_t bt = 1;  // targets per target block
  double epsilon = 0.1;

  // Iteration overrides; -1 = planned value.
  std::int64_t j = -1;
  std::int64_t j1 = -1;
  std::int64_t j2 = -1;

  std::vector<std::int64_t> targets;  // explicit target indices (grover)

  std::uint64_t hidden_a = 0;  // hidden-string oracle parameter
  bool hidden_a_set = false;
  std::string function_file;          // truth-table file (dj)
  std::string family = "balanced";    // dj built-in family: constant0|constant1|balanced
  std::int64_t probe_bit = 0;         // bit used by the built-in balanced family

  std::int64_t target = 0;            // amplification target index
  std::string prepare = "uniform";    // amplification preparation: uniform|half

  std::int64_t a_target = 0;  // structured search row criterion target
  std::int64_t b_target = 1;  // structured search column criterion target
  std::int64_t g_size = -1;   // |G|; -1 = max(1, n/4)

  std::string schedule = "local";  // adiabatic: linear|local
  double total_time = -1.0;        // adiabatic override; -1 = schedule default
  double dt = -1.0;                // integrator override; -1 = default

  bool sweep = false;                // grid mode (sure-success, adiabatic)
  std::vector<std::int64_t> sweep_k; // compare-partial block-count sweep

  std::int64_t shots = 0;  // optional measurement sampling (grover/amplify/partial)
  std::uint64_t seed = 1;

  OutputFormat format = OutputFormat::Json;  // table subcommands honor csv/json
  bool format_set = false;  // true when --format was given explicitly
  std::string out_path;  // empty = stdout; relative paths resolve against
                         // $QSEARCH_OUTPUT_DIR when that is set
  bool timing = false;   // append wall_time_ms (breaks byte-reproducibility)
};

struct RunOutcome {
  int exit_code = 0;       // 0 ok, 2 invalid config, 3 infeasible, 4 numeric
  std::string output;      // result document (JSON or CSV)
  std::string diagnostic;  // failure explanation, empty on success
};

// Runs the subcommand and renders its document. Never throws; errors land in
// exit_code/diagnostic.
RunOutcome run(const RunConfig& config);

// run() plus artifact plumbing: writes the document to the resolved output
// path (or stdout) and the diagnostic to stderr; returns the exit code.
int execute(const RunConfig& config);

// Draws `shots` measurement outcomes from |amplitude|^2 by CDF inversion of
// a seeded 64-bit Mersenne Twister; returns per-index counts. Deterministic
// for a given seed on every platform.
std::vector<std::int64_t> sample_measurement(const StateVector& state,
                                             std::uint64_t seed,
                                             std::int64_t shots);

}  // namespace qsearch::cli
