#include "qsearch/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>

#include "qsearch/adiabatic.hpp"
#include "qsearch/early.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/grover.hpp"
#include "qsearch/partial.hpp"
#include "qsearch/report.hpp"
#include "qsearch/sure_success.hpp"

namespace qsearch::cli {

namespace {

using report::Csv;
using report::Json;

constexpr double kPi = std::numbers::pi;

// Document under construction: scalar runs fill `json`, table runs fill both
// renderings and the format flag picks one.
struct Document {
  Json json = Json::object();
  std::string csv;
  bool is_table = false;
};

Json histogram_json(const StateVector& state, std::uint64_t seed,
                    std::int64_t shots) {
  const std::vector<std::int64_t> counts = sample_measurement(state, seed, shots);
  Json hist = Json::object();
  hist.set("shots", Json::integer(shots));
  hist.set("seed", Json::integer(static_cast<std::int64_t>(seed)));
  Json nonzero = Json::object();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) {
      nonzero.set(std::to_string(i), Json::integer(counts[i]));
    }
  }
  hist.set("counts", std::move(nonzero));
  return hist;
}

// ---------------------------------------------------------------------------
// dj / bv
// ---------------------------------------------------------------------------

BooleanOracle build_dj_oracle(const RunConfig& config) {
  const int bits = static_cast<int>(config.n);
  if (!config.function_file.empty()) {
    return BooleanOracle::from_file(config.function_file,
                                    OraclePromise::ConstantOrBalanced);
  }
  if (config.family == "constant0") return BooleanOracle::constant(bits, false);
  if (config.family == "constant1") return BooleanOracle::constant(bits, true);
  if (config.family == "balanced") {
    return BooleanOracle::balanced_bit(bits, static_cast<int>(config.probe_bit));
  }
  throw config_error("unknown function family: " + config.family);
}

// Replays the interference circuit to expose the outcome distribution the
// classifier reads out.
StateVector interference_state(const BooleanOracle& oracle) {
  StateVector state(oracle.n_inputs());
  state[0] = complex{1.0, 0.0};
  walsh_hadamard(state);
  QueryCounter scratch;
  oracle.apply_phase(state, scratch);
  walsh_hadamard(state);
  return state;
}

Document run_dj(const RunConfig& config) {
  if (config.n < 1 || config.n > 20) {
    throw config_error("dj needs --n between 1 and 20 (input bits)");
  }
  const BooleanOracle oracle = build_dj_oracle(config);
  QueryCounter counter;
  const Classification verdict = classify_deutsch_jozsa(oracle, counter);
  const StateVector state = interference_state(oracle);
  const double p_zero = std::norm(state[0]);
  const bool is_constant = verdict == Classification::Constant;

  Document doc;
  doc.json.set("algorithm", Json::str("deutsch-jozsa"));
  Json params = Json::object();
  params.set("n_bits", Json::integer(config.n));
  if (!config.function_file.empty()) {
    params.set("function_file", Json::str(config.function_file));
  } else {
    params.set("family", Json::str(config.family));
    if (config.family == "balanced") {
      params.set("probe_bit", Json::integer(config.probe_bit));
    }
  }
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(counter.queries));
  doc.json.set("classification", Json::str(is_constant ? "constant" : "balanced"));
  Json probs = Json::object();
  probs.set("p_all_zeros", Json::number(p_zero));
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("p_all_zeros", Json::number(is_constant ? 1.0 : 0.0));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("p_all_zeros",
                Json::number(std::abs(p_zero - (is_constant ? 1.0 : 0.0))));
  doc.json.set("residuals", std::move(residuals));
  return doc;
}

Document run_bv(const RunConfig& config) {
  if (config.n < 1 || config.n > 20) {
    throw config_error("bv needs --n between 1 and 20 (input bits)");
  }
  std::uint64_t a = config.hidden_a;
  if (!config.hidden_a_set) {
    // Default demonstration string: alternating bits.
    a = 0;
    for (std::int64_t bit = 0; bit < config.n; bit += 2) a |= std::uint64_t{1} << bit;
  }
  const BooleanOracle oracle = BooleanOracle::linear(static_cast<int>(config.n), a);
  QueryCounter counter;
  const std::uint64_t recovered = recover_hidden_string(oracle, counter);
  const StateVector state = interference_state(oracle);
  const double p_recovered = std::norm(state[static_cast<std::int64_t>(recovered)]);

  Document doc;
  doc.json.set("algorithm", Json::str("bernstein-vazirani"));
  Json params = Json::object();
  params.set("n_bits", Json::integer(config.n));
  params.set("hidden_string", Json::str(bit_string(a, static_cast<int>(config.n))));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(counter.queries));
  doc.json.set("recovered_string",
               Json::str(bit_string(recovered, static_cast<int>(config.n))));
  doc.json.set("match", Json::boolean(recovered == a));
  Json probs = Json::object();
  probs.set("p_recovered_string", Json::number(p_recovered));
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("p_recovered_string", Json::number(1.0));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("p_recovered_string", Json::number(std::abs(p_recovered - 1.0)));
  doc.json.set("residuals", std::move(residuals));
  return doc;
}

// ---------------------------------------------------------------------------
// grover / amplify
// ---------------------------------------------------------------------------

Document run_grover_cmd(const RunConfig& config) {
  if (config.n < 2) throw config_error("grover needs --n of at least 2");
  std::vector<std::int64_t> marked = config.targets;
  if (marked.empty()) {
    const std::int64_t m = config.m < 0 ? 1 : config.m;
    for (std::int64_t i = 0; i < m; ++i) marked.push_back(i);
  }
  const SearchSpace space(config.n, marked);
  const GroverPlan plan = plan_grover(config.n, space.n_targets());
  const std::int64_t j_run = config.j >= 0 ? config.j : plan.j_opt;
  const auto [state, counter] = run_grover(space, j_run);
  const double p_target = probability_of_set(state, space.marked);
  const double p_closed = success_probability(plan, j_run);

  Document doc;
  doc.json.set("algorithm", Json::str("grover"));
  Json params = Json::object();
  params.set("n", Json::integer(config.n));
  params.set("m", Json::integer(space.n_targets()));
  params.set("theta", Json::number(plan.theta));
  params.set("j_opt", Json::integer(plan.j_opt));
  params.set("j_run", Json::integer(j_run));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(counter.queries));
  Json probs = Json::object();
  probs.set("p_target", Json::number(p_target));
  if (space.n_targets() <= 64) {
    Json per_target = Json::array();
    for (const std::int64_t idx : space.marked) {
      per_target.push(Json::number(std::norm(state[idx])));
    }
    probs.set("per_target", std::move(per_target));
  }
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("p_target", Json::number(p_closed));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("p_target", Json::number(std::abs(p_target - p_closed)));
  doc.json.set("residuals", std::move(residuals));
  if (config.shots > 0) {
    doc.json.set("histogram", histogram_json(state, config.seed, config.shots));
  }
  return doc;
}

Document run_amplify(const RunConfig& config) {
  if (config.n < 2) throw config_error("amplify needs --n of at least 2");
  if (config.target < 0 || config.target >= config.n) {
    throw config_error("amplify target out of range");
  }
  const std::int64_t n = config.n;
  const std::int64_t target = config.target;
  std::function<void(StateVector&)> prepare;
  if (config.prepare == "uniform") {
    prepare = [n](StateVector& state) {
      state = uniform_state(n);
    };
  } else if (config.prepare == "half") {
    // Fixed preparation with target amplitude exactly 1/2 regardless of N:
    // one generalized iteration then lands exactly on the target.
    prepare = [n, target](StateVector& state) {
      state = StateVector(n);
      const double rest =
          std::sqrt(3.0 / (4.0 * static_cast<double>(n - 1)));
      for (std::int64_t i = 0; i < n; ++i) {
        state[i] = complex{i == target ? 0.5 : rest, 0.0};
      }
    };
  } else {
    throw config_error("unknown preparation: " + config.prepare);
  }
  const AmplificationPlan plan = plan_amplified(prepare, n, target);
  const auto [state, counter] = run_amplified(plan);
  const double p_target = std::norm(state[target]);
  const double theta_a = std::asin(std::abs(plan.target_amplitude));
  const double p_closed =
      std::pow(std::sin((2.0 * static_cast<double>(plan.j_u) + 1.0) * theta_a), 2);

  Document doc;
  doc.json.set("algorithm", Json::str("amplitude-amplification"));
  Json params = Json::object();
  params.set("n", Json::integer(n));
  params.set("target", Json::integer(target));
  params.set("prepare", Json::str(config.prepare));
  params.set("initial_amplitude", Json::number(std::abs(plan.target_amplitude)));
  params.set("j_u", Json::integer(plan.j_u));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(counter.queries));
  Json probs = Json::object();
  probs.set("p_target", Json::number(p_target));
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("p_target", Json::number(p_closed));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("p_target", Json::number(std::abs(p_target - p_closed)));
  doc.json.set("residuals", std::move(residuals));
  if (config.shots > 0) {
    doc.json.set("histogram", histogram_json(state, config.seed, config.shots));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// structured / optimality
// ---------------------------------------------------------------------------

Document run_structured_cmd(const RunConfig& config) {
  if (config.n < 2) throw config_error("structured needs --n of at least 2");
  const std::int64_t g_size = config.g_size > 0
                                  ? config.g_size
                                  : std::max<std::int64_t>(1, config.n / 4);
  if (g_size > config.n) throw config_error("g-size exceeds the register range");
  // G = the first g_size values, adjusted so it contains the true first
  // coordinate (the promise run_structured relies on).
  std::vector<std::int64_t> g_true(static_cast<std::size_t>(g_size));
  std::iota(g_true.begin(), g_true.end(), std::int64_t{0});
  if (config.a_target >= g_size) {
    g_true.back() = config.a_target;
  }
  std::sort(g_true.begin(), g_true.end());
  const StructuredOracle oracle(config.n, config.a_target, config.b_target, g_true);
  const StructuredResult result = run_structured(oracle);

  Document doc;
  doc.json.set("algorithm", Json::str("structured-pair-search"));
  Json params = Json::object();
  params.set("n", Json::integer(config.n));
  params.set("n_pairs", Json::integer(config.n * config.n));
  params.set("a_target", Json::integer(config.a_target));
  params.set("b_target", Json::integer(config.b_target));
  params.set("g_size", Json::integer(oracle.n_g()));
  params.set("j1", Json::integer(result.j1));
  params.set("j", Json::integer(result.j));
  params.set("j12", Json::integer(result.j12));
  params.set("exact_angles", Json::boolean(result.exact_angles));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(result.counter.queries));
  Json found = Json::object();
  found.set("a", Json::integer(result.found_a));
  found.set("b", Json::integer(result.found_b));
  doc.json.set("found", std::move(found));
  Json probs = Json::object();
  probs.set("p_pair", Json::number(result.pair_probability));
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("expansion_total", Json::integer(result.expansion_total));
  closed.set("asymptotic_queries", Json::number(result.asymptotic_queries));
  closed.set("plain_grover_queries", Json::number(result.plain_grover_queries));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("counter_minus_expansion",
                Json::integer(result.counter.queries - result.expansion_total));
  doc.json.set("residuals", std::move(residuals));
  doc.json.set("exceeds_plain_grover", Json::boolean(result.exceeds_plain_grover));
  return doc;
}

Document run_optimality(const RunConfig& config) {
  if (config.n < 2) throw config_error("optimality needs --n of at least 2");
  const std::int64_t j =
      config.j >= 0 ? config.j : plan_grover(config.n, 1).j_opt;
  const DriftReport report = optimality_experiment(config.n, j);

  Document doc;
  doc.json.set("algorithm", Json::str("query-drift-bounds"));
  Json params = Json::object();
  params.set("n", Json::integer(config.n));
  params.set("iterations", Json::integer(report.iterations));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(report.iterations));
  Json probs = Json::object();
  probs.set("drift_sum", Json::number(report.drift_sum));
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("lower_bound", Json::number(report.lower_bound));
  closed.set("upper_bound", Json::number(report.upper_bound));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("lower_fraction", Json::number(report.lower_fraction));
  residuals.set("upper_margin", Json::number(report.upper_bound - report.drift_sum));
  doc.json.set("residuals", std::move(residuals));
  doc.json.set("upper_holds", Json::boolean(report.upper_holds));
  return doc;
}

// ---------------------------------------------------------------------------
// partial / sure-success
// ---------------------------------------------------------------------------

BlockLayout layout_from_config(const RunConfig& config, const char* who) {
  if (config.n < 2) throw config_error(std::string(who) + " needs --n of at least 2");
  if (config.k < 2) throw config_error(std::string(who) + " needs --k of at least 2");
  return BlockLayout::leading(config.n, config.k, config.kt, config.bt);
}

Document run_partial_cmd(const RunConfig& config) {
  const BlockLayout layout = layout_from_config(config, "partial");
  const PartialPlan plan = make_partial_plan(layout);
  const std::int64_t j1 = config.j1 >= 0 ? config.j1 : plan.j1;
  const std::int64_t j2 = config.j2 >= 0 ? config.j2 : plan.j2;
  const PartialRunResult result = run_partial(layout, j1, j2);
  const ReducedState3 reduced = run_partial_reduced(layout, static_cast<double>(j1),
                                                    static_cast<double>(j2));
  double p_target_blocks = 0.0;
  for (const std::int64_t blk : layout.target_blocks) {
    p_target_blocks += result.block_probs[static_cast<std::size_t>(blk)];
  }
  const double p_reduced = reduced.target_block_probability();

  Document doc;
  doc.json.set("algorithm", Json::str("partial-block-search"));
  Json params = Json::object();
  params.set("n", Json::integer(layout.n_elements));
  params.set("k", Json::integer(layout.n_blocks));
  params.set("kt", Json::integer(layout.n_target_blocks()));
  params.set("bt", Json::integer(layout.targets_per_block));
  params.set("k_eff", Json::number(plan.k_eff));
  params.set("beta", Json::number(plan.beta));
  params.set("eta", Json::number(plan.eta));
  params.set("lambda", Json::number(plan.lambda));
  params.set("block_angle", Json::number(plan.block_angle));
  params.set("j1", Json::integer(j1));
  params.set("j2", Json::integer(j2));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(result.counter.queries));
  doc.json.set("found_block", Json::integer(result.found_block));
  Json probs = Json::object();
  probs.set("p_target_blocks", Json::number(p_target_blocks));
  if (layout.n_blocks <= 256) {
    Json per_block = Json::array();
    for (const double p : result.block_probs) per_block.push(Json::number(p));
    probs.set("per_block", std::move(per_block));
  }
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("p_target_blocks", Json::number(p_reduced));
  closed.set("queries_per_sqrt_n", Json::number(plan.queries_per_sqrt_n));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("p_target_blocks", Json::number(std::abs(p_target_blocks - p_reduced)));
  doc.json.set("residuals", std::move(residuals));
  if (config.shots > 0) {
    doc.json.set("histogram", histogram_json(result.state, config.seed, config.shots));
  }
  return doc;
}

Document run_sure_success_sweep() {
  Document doc;
  doc.is_table = true;
  Csv csv({"N", "K", "B", "j1", "j2", "extra", "phi1", "phi2", "success_prob",
           "feasible"});
  Json rows = Json::array();
  for (int exp = 6; exp <= 20; ++exp) {
    const std::int64_t n = std::int64_t{1} << exp;
    for (const std::int64_t k : {std::int64_t{2}, std::int64_t{4}, std::int64_t{8}}) {
      const std::int64_t b = n / k;
      if (b <= 2) continue;
      const BlockLayout layout = BlockLayout::leading(n, k);
      std::int64_t j1 = 0;
      std::int64_t j2 = 0;
      int extra = 0;
      double phi1 = 0.0;
      double phi2 = 0.0;
      double success = 0.0;
      bool feasible = true;
      try {
        const SureSuccessResult result = run_sure_success(layout);
        j1 = result.j1;
        j2 = result.j2;
        extra = result.solution.extra_local_steps;
        phi1 = result.solution.phi1;
        phi2 = result.solution.phi2;
        success = result.final_state.target_block_probability();
      } catch (const infeasible_error&) {
        feasible = false;
      }
      csv.add_row({std::to_string(n), std::to_string(k), std::to_string(b),
                   std::to_string(j1), std::to_string(j2), std::to_string(extra),
                   report::format_double(phi1), report::format_double(phi2),
                   report::format_double(success), feasible ? "1" : "0"});
      Json row = Json::object();
      row.set("N", Json::integer(n));
      row.set("K", Json::integer(k));
      row.set("B", Json::integer(b));
      row.set("j1", Json::integer(j1));
      row.set("j2", Json::integer(j2));
      row.set("extra", Json::integer(extra));
      row.set("phi1", Json::number(phi1));
      row.set("phi2", Json::number(phi2));
      row.set("success_prob", Json::number(success));
      row.set("feasible", Json::boolean(feasible));
      rows.push(std::move(row));
    }
  }
  doc.csv = csv.dump();
  doc.json = Json::object();
  doc.json.set("algorithm", Json::str("sure-success-sweep"));
  doc.json.set("rows", std::move(rows));
  return doc;
}

Document run_sure_success_cmd(const RunConfig& config) {
  if (config.sweep) return run_sure_success_sweep();
  const BlockLayout layout = layout_from_config(config, "sure-success");
  const SureSuccessResult result = run_sure_success(layout);
  const double success = result.final_state.target_block_probability();
  const double leak = result.final_state.non_target_mass();

  Document doc;
  doc.json.set("algorithm", Json::str("sure-success-partial-search"));
  Json params = Json::object();
  params.set("n", Json::integer(layout.n_elements));
  params.set("k", Json::integer(layout.n_blocks));
  params.set("kt", Json::integer(layout.n_target_blocks()));
  params.set("bt", Json::integer(layout.targets_per_block));
  params.set("j1", Json::integer(result.j1));
  params.set("j2", Json::integer(result.j2));
  params.set("extra_local_steps", Json::integer(result.solution.extra_local_steps));
  params.set("phi1", Json::number(result.solution.phi1));
  params.set("phi2", Json::number(result.solution.phi2));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(result.counter.queries));
  Json probs = Json::object();
  probs.set("p_target_blocks", Json::number(success));
  probs.set("p_non_target_blocks", Json::number(leak));
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("p_target_blocks", Json::number(1.0));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("p_target_blocks", Json::number(std::abs(success - 1.0)));
  doc.json.set("residuals", std::move(residuals));
  return doc;
}

// ---------------------------------------------------------------------------
// adiabatic
// ---------------------------------------------------------------------------

ScheduleKind parse_schedule(const std::string& name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "local") return ScheduleKind::Local;
  throw config_error("unknown schedule: " + name + " (use linear or local)");
}

Document run_adiabatic_sweep(const RunConfig& config) {
  const std::int64_t m = config.m < 0 ? 1 : config.m;
  Document doc;
  doc.is_table = true;
  Csv csv({"N", "M", "epsilon", "schedule", "T", "fidelity"});
  Json rows = Json::array();
  for (const char* name : {"linear", "local"}) {
    const ScheduleKind kind = parse_schedule(name);
    for (int exp = 6; exp <= 12; ++exp) {
      const std::int64_t n = std::int64_t{1} << exp;
      AdiabaticConfig run_config = AdiabaticConfig::make(n, m, config.epsilon, kind);
      if (config.dt > 0.0) run_config.dt = config.dt;
      const double fidelity = evolve(run_config);
      csv.add_row({std::to_string(n), std::to_string(m),
                   report::format_double(config.epsilon), name,
                   report::format_double(run_config.total_time),
                   report::format_double(fidelity)});
      Json row = Json::object();
      row.set("N", Json::integer(n));
      row.set("M", Json::integer(m));
      row.set("epsilon", Json::number(config.epsilon));
      row.set("schedule", Json::str(name));
      row.set("T", Json::number(run_config.total_time));
      row.set("fidelity", Json::number(fidelity));
      rows.push(std::move(row));
    }
  }
  doc.csv = csv.dump();
  doc.json = Json::object();
  doc.json.set("algorithm", Json::str("adiabatic-sweep"));
  doc.json.set("rows", std::move(rows));
  return doc;
}

Document run_adiabatic_cmd(const RunConfig& config) {
  if (config.sweep) return run_adiabatic_sweep(config);
  if (config.n < 2) throw config_error("adiabatic needs --n of at least 2");
  const std::int64_t m = config.m < 0 ? 1 : config.m;
  const ScheduleKind kind = parse_schedule(config.schedule);
  AdiabaticConfig run_config = AdiabaticConfig::make(config.n, m, config.epsilon, kind);
  if (config.total_time >= 0.0) run_config.total_time = config.total_time;
  if (config.dt > 0.0) run_config.dt = config.dt;
  const double fidelity = evolve(run_config);

  const double n_prime = static_cast<double>(config.n) / static_cast<double>(m);
  const double local_t = local_schedule(config.n, m, config.epsilon).total_time;
  const double linear_t = linear_runtime_bound(config.n, m, config.epsilon);
  const double asymptote = (kPi / (2.0 * config.epsilon)) * std::sqrt(n_prime);

  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double coupling_max = 0.0;
  if (run_config.total_time > 0.0) {
    bool first = true;
    for (int i = 0; i <= 100; ++i) {
      const double s = static_cast<double>(i) / 100.0;
      const double r =
          adiabaticity_ratio(config.n, m, s, run_config.total_time, kind);
      coupling_max = std::max(coupling_max, eigenstate_coupling(config.n, m, s));
      if (first || r < ratio_min) ratio_min = r;
      if (first || r > ratio_max) ratio_max = r;
      first = false;
    }
  }

  Document doc;
  doc.json.set("algorithm", Json::str("adiabatic-search"));
  Json params = Json::object();
  params.set("n", Json::integer(config.n));
  params.set("m", Json::integer(m));
  params.set("epsilon", Json::number(config.epsilon));
  params.set("schedule", Json::str(config.schedule));
  params.set("total_time", Json::number(run_config.total_time));
  params.set("dt", Json::number(run_config.dt));
  params.set("min_gap", Json::number(min_gap(config.n, m)));
  doc.json.set("parameters", std::move(params));
  doc.json.set("query_count", Json::integer(0));
  Json probs = Json::object();
  probs.set("fidelity", Json::number(fidelity));
  doc.json.set("probabilities", std::move(probs));
  Json closed = Json::object();
  closed.set("local_schedule_time", Json::number(local_t));
  closed.set("linear_runtime_bound", Json::number(linear_t));
  closed.set("local_time_asymptote", Json::number(asymptote));
  doc.json.set("closed_form_predictions", std::move(closed));
  Json residuals = Json::object();
  residuals.set("fidelity_deficit", Json::number(1.0 - fidelity));
  doc.json.set("residuals", std::move(residuals));
  Json diag = Json::object();
  diag.set("adiabaticity_ratio_min", Json::number(ratio_min));
  diag.set("adiabaticity_ratio_max", Json::number(ratio_max));
  diag.set("eigenstate_coupling_max", Json::number(coupling_max));
  doc.json.set("diagnostics", std::move(diag));
  return doc;
}

// ---------------------------------------------------------------------------
// compare-partial
// ---------------------------------------------------------------------------

Document run_compare_partial(const RunConfig& config) {
  Document doc;
  doc.is_table = true;
  if (!config.sweep_k.empty()) {
    Csv csv({"K", "beta", "eta", "lambda", "queries_per_sqrtN", "omega"});
    Json rows = Json::array();
    for (const std::int64_t k : config.sweep_k) {
      const auto [beta, eta] = grk_optimal_params(static_cast<double>(k));
      const double lambda = beta - eta;
      const double prefactor = kPi / 4.0 + lambda / std::sqrt(static_cast<double>(k));
      const double omega = block_angle_limit(static_cast<double>(k), beta);
      csv.add_row({std::to_string(k), report::format_double(beta),
                   report::format_double(eta), report::format_double(lambda),
                   report::format_double(prefactor), report::format_double(omega)});
      Json row = Json::object();
      row.set("K", Json::integer(k));
      row.set("beta", Json::number(beta));
      row.set("eta", Json::number(eta));
      row.set("lambda", Json::number(lambda));
      row.set("queries_per_sqrtN", Json::number(prefactor));
      row.set("omega", Json::number(omega));
      rows.push(std::move(row));
    }
    doc.csv = csv.dump();
    doc.json = Json::object();
    doc.json.set("algorithm", Json::str("partial-search-plans"));
    doc.json.set("rows", std::move(rows));
    return doc;
  }

  if (config.n < 2) throw config_error("compare-partial needs --n of at least 2");
  if (config.k < 2) throw config_error("compare-partial needs --k of at least 2");
  const StrategyQueries q = compare_strategies(config.n, config.k);
  const double root_n = std::sqrt(static_cast<double>(config.n));
  Csv csv({"strategy", "queries", "prefactor"});
  Json rows = Json::array();
  const auto add = [&](const std::string& name, double queries) {
    csv.add_row({name, report::format_double(queries),
                 report::format_double(queries / root_n)});
    Json row = Json::object();
    row.set("strategy", Json::str(name));
    row.set("queries", Json::number(queries));
    row.set("prefactor", Json::number(queries / root_n));
    rows.push(std::move(row));
  };
  add("full", q.full);
  add("naive", q.naive);
  if (q.binary) add("binary", *q.binary);
  add("gr_simple", q.gr_simple);
  add("grk", q.grk);
  doc.csv = csv.dump();
  doc.json = Json::object();
  doc.json.set("algorithm", Json::str("partial-search-strategies"));
  doc.json.set("rows", std::move(rows));
  return doc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Harness surface
// ---------------------------------------------------------------------------

std::vector<std::int64_t> sample_measurement(const StateVector& state,
                                             std::uint64_t seed,
                                             std::int64_t shots) {
  if (shots < 1) throw config_error("sampling needs at least 1 shot");
  const std::int64_t n = state.size();
  if (n < 1) throw config_error("cannot sample an empty state");
  std::vector<double> cdf(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    acc += std::norm(state[i]);
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  if (!(acc > 0.0)) throw config_error("cannot sample a zero state");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
  std::mt19937_64 rng(seed);
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    // Top 53 bits -> uniform double in [0, 1); bit-stable across platforms.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min(static_cast<std::size_t>(it - cdf.begin()),
                                     static_cast<std::size_t>(n - 1));
    ++counts[idx];
  }
  return counts;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  try {
    Document doc;
    if (config.subcommand == "dj") {
      doc = run_dj(config);
    } else if (config.subcommand == "bv") {
      doc = run_bv(config);
    } else if (config.subcommand == "grover") {
      doc = run_grover_cmd(config);
    } else if (config.subcommand == "amplify") {
      doc = run_amplify(config);
    } else if (config.subcommand == "structured") {
      doc = run_structured_cmd(config);
    } else if (config.subcommand == "optimality") {
      doc = run_optimality(config);
    } else if (config.subcommand == "partial") {
      doc = run_partial_cmd(config);
    } else if (config.subcommand == "sure-success") {
      doc = run_sure_success_cmd(config);
    } else if (config.subcommand == "adiabatic") {
      doc = run_adiabatic_cmd(config);
    } else if (config.subcommand == "compare-partial") {
      doc = run_compare_partial(config);
    } else {
      throw config_error("unknown subcommand: " + config.subcommand);
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
    if (config.format_set && config.format == OutputFormat::Csv && !doc.is_table) {
      throw config_error("csv output is only available for table subcommands");
    }
    // Tables are CSV unless JSON was requested explicitly; scalar runs are JSON.
    const bool want_csv =
        doc.is_table && !(config.format_set && config.format == OutputFormat::Json);
    if (want_csv) {
      outcome.output = doc.csv;
      if (config.timing) {
        outcome.diagnostic = "wall_time_ms=" + report::format_double(wall_ms);
      }
    } else {
      if (config.timing) {
        doc.json.set("wall_time_ms", Json::number(wall_ms));
      }
      outcome.output = doc.json.dump();
    }
    outcome.exit_code = 0;
  } catch (const config_error& e) {
    outcome.exit_code = 2;
    outcome.diagnostic = std::string("invalid configuration: ") + e.what();
  } catch (const infeasible_error& e) {
    outcome.exit_code = 3;
    outcome.diagnostic = std::string("infeasible: ") + e.what();
  } catch (const numeric_error& e) {
    outcome.exit_code = 4;
    outcome.diagnostic = std::string("numeric accuracy: ") + e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 1;
    outcome.diagnostic = std::string("unexpected failure: ") + e.what();
  }
  return outcome;
}

int execute(const RunConfig& config) {
  const RunOutcome outcome = run(config);
  if (!outcome.output.empty()) {
    if (config.out_path.empty()) {
      std::cout << outcome.output;
      std::cout.flush();
    } else {
      std::filesystem::path path(config.out_path);
      if (path.is_relative()) {
        if (const char* dir = std::getenv("QSEARCH_OUTPUT_DIR")) {
          path = std::filesystem::path(dir) / path;
        }
      }
      if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
      }
      std::ofstream out(path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot open output path: " << path.string() << "\n";
        return 2;
      }
      out << outcome.output;
    }
  }
  if (!outcome.diagnostic.empty()) {
    std::cerr << outcome.diagnostic << "\n";
  }
  return outcome.exit_code;
}

}  // namespace qsearch::cli
