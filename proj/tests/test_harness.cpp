#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsearch/cli.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/grover.hpp"
#include "qsearch/state.hpp"

using qsearch::cli::OutputFormat;
using qsearch::cli::RunConfig;
using qsearch::cli::RunOutcome;

namespace {

RunConfig base(const std::string& subcommand) {
  RunConfig config;
  config.subcommand = subcommand;
  return config;
}

// Extracts the first number following `"key": ` in a JSON document.
double json_number(const std::string& doc, const std::string& key) {
  const std::string needle = "\"" + key + "\": ";
  const auto pos = doc.find(needle);
  REQUIRE(pos != std::string::npos);
  return std::strtod(doc.c_str() + pos + needle.size(), nullptr);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("documents are byte-identical across reruns") {
  for (const char* sub : {"grover", "partial", "compare-partial", "adiabatic"}) {
    RunConfig config = base(sub);
    config.n = sub[0] == 'g' ? 1024 : 4096;
    config.k = 4;
    const RunOutcome first = qsearch::cli::run(config);
    const RunOutcome second = qsearch::cli::run(config);
    CHECK_MESSAGE(first.exit_code == 0, sub, ": ", first.diagnostic);
    CHECK(first.output == second.output);
    CHECK(first.diagnostic.empty());
  }
}

TEST_CASE("exit codes separate configuration, feasibility, and accuracy") {
  // Invalid configuration.
  RunConfig bad_n = base("grover");
  bad_n.n = 0;
  CHECK(qsearch::cli::run(bad_n).exit_code == 2);
  CHECK_FALSE(qsearch::cli::run(bad_n).diagnostic.empty());

  RunConfig bad_k = base("partial");
  bad_k.n = 4096;
  bad_k.k = 3;  // does not divide 4096
  CHECK(qsearch::cli::run(bad_k).exit_code == 2);

  // Feasibility: the smallest-block sure-success case has no phase solution.
  RunConfig infeasible = base("sure-success");
  infeasible.n = 4;
  infeasible.k = 2;
  const RunOutcome inf = qsearch::cli::run(infeasible);
  CHECK(inf.exit_code == 3);
  CHECK(inf.diagnostic.find("infeasible") != std::string::npos);

  // Numeric accuracy: integrator step far too coarse for the gap.
  RunConfig coarse = base("adiabatic");
  coarse.n = 64;
  coarse.dt = 5.0;
  const RunOutcome num = qsearch::cli::run(coarse);
  CHECK(num.exit_code == 4);
  CHECK(num.diagnostic.find("numeric") != std::string::npos);

  // Success for scale.
  RunConfig good = base("grover");
  good.n = 64;
  CHECK(qsearch::cli::run(good).exit_code == 0);
}

TEST_CASE("format policy: tables default to csv, scalars refuse csv") {
  RunConfig table = base("compare-partial");
  table.n = 4096;
  table.k = 4;
  const RunOutcome csv = qsearch::cli::run(table);
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("strategy,queries,prefactor", 0) == 0);

  table.format = OutputFormat::Json;
  table.format_set = true;
  const RunOutcome json = qsearch::cli::run(table);
  CHECK(json.exit_code == 0);
  CHECK(json.output.front() == '{');
  CHECK(json.output.find("\"rows\"") != std::string::npos);

  RunConfig scalar = base("grover");
  scalar.n = 64;
  scalar.format = OutputFormat::Csv;
  scalar.format_set = true;
  const RunOutcome refused = qsearch::cli::run(scalar);
  CHECK(refused.exit_code == 2);
  CHECK(refused.diagnostic.find("csv") != std::string::npos);
}

TEST_CASE("output files land where the environment points") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qsearch_harness_test";
  fs::remove_all(dir);

  RunConfig config = base("grover");
  config.n = 256;
  const RunOutcome reference = qsearch::cli::run(config);

  // Relative out_path resolves against QSEARCH_OUTPUT_DIR.
  REQUIRE(setenv("QSEARCH_OUTPUT_DIR", dir.c_str(), 1) == 0);
  config.out_path = "nested/result.json";
  CHECK(qsearch::cli::execute(config) == 0);
  CHECK(read_file(dir / "nested" / "result.json") == reference.output);

  // Absolute out_path ignores the environment.
  config.out_path = (dir / "direct.json").string();
  CHECK(qsearch::cli::execute(config) == 0);
  CHECK(read_file(dir / "direct.json") == reference.output);

  REQUIRE(unsetenv("QSEARCH_OUTPUT_DIR") == 0);
  fs::remove_all(dir);
}

TEST_CASE("printed doubles round-trip to the exact binary value") {
  RunConfig config = base("optimality");
  config.n = 1024;
  config.j = 25;
  const RunOutcome outcome = qsearch::cli::run(config);
  REQUIRE(outcome.exit_code == 0);

  const qsearch::DriftReport report = qsearch::optimality_experiment(1024, 25);
  const double printed = json_number(outcome.output, "drift_sum");
  CHECK(printed == report.drift_sum);  // bit-exact, not approximate

  RunConfig grover = base("grover");
  grover.n = 16384;
  const RunOutcome gout = qsearch::cli::run(grover);
  const qsearch::GroverPlan plan = qsearch::plan_grover(16384, 1);
  const double theta = json_number(gout.output, "theta");
  CHECK(theta == plan.theta);
}

TEST_CASE("timing is opt-in so default documents stay reproducible") {
  RunConfig config = base("grover");
  config.n = 256;
  const RunOutcome plain = qsearch::cli::run(config);
  CHECK(plain.output.find("wall_time_ms") == std::string::npos);

  config.timing = true;
  const RunOutcome timed = qsearch::cli::run(config);
  CHECK(timed.output.find("wall_time_ms") != std::string::npos);
}

TEST_CASE("measurement sampling is seeded and honest about its distribution") {
  using qsearch::StateVector;

  // Deterministic state: all shots land on the single support index.
  StateVector point(8);
  point[5] = {1.0, 0.0};
  const std::vector<std::int64_t> counts =
      qsearch::cli::sample_measurement(point, 7, 1000);
  CHECK(counts[5] == 1000);
  for (int i = 0; i < 8; ++i) {
    if (i != 5) CHECK(counts[i] == 0);
  }

  // Same seed, same draw; different seed, different draw (with overwhelming
  // probability for 10^5 shots on a uniform state).
  StateVector uniform(4);
  for (int i = 0; i < 4; ++i) uniform[i] = {0.5, 0.0};
  const auto a = qsearch::cli::sample_measurement(uniform, 42, 100000);
  const auto b = qsearch::cli::sample_measurement(uniform, 42, 100000);
  const auto c = qsearch::cli::sample_measurement(uniform, 43, 100000);
  CHECK(a == b);
  CHECK(a != c);

  // Uniform state: every bin close to the expected quarter share, and the
  // total variation distance from uniform stays small.
  double tv = 0.0;
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(a[i] - 25000) < 600);  // ~4.4 sigma
    tv += std::abs(a[i] / 100000.0 - 0.25);
  }
  CHECK(tv / 2.0 < 0.02);

  // Guard rails.
  CHECK_THROWS_AS(qsearch::cli::sample_measurement(point, 1, 0),
                  qsearch::config_error);
  StateVector zero(4);
  CHECK_THROWS_AS(qsearch::cli::sample_measurement(zero, 1, 10),
                  qsearch::config_error);
}

TEST_CASE("histogram output is sparse and sorted") {
  RunConfig config = base("grover");
  config.n = 64;
  config.shots = 1000;
  config.seed = 42;
  const RunOutcome outcome = qsearch::cli::run(config);
  REQUIRE(outcome.exit_code == 0);
  const auto pos = outcome.output.find("\"histogram\"");
  REQUIRE(pos != std::string::npos);
  CHECK(outcome.output.find("\"shots\": 1000", pos) != std::string::npos);
  CHECK(outcome.output.find("\"seed\": 42", pos) != std::string::npos);
  // Target index 0 dominates at the optimal iteration count.
  const auto counts_pos = outcome.output.find("\"counts\"", pos);
  REQUIRE(counts_pos != std::string::npos);
  const double on_target = json_number(outcome.output.substr(counts_pos), "0");
  CHECK(on_target > 950);
}
