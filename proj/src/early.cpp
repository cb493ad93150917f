#include <cmath>

#include "qsearch/early.hpp"
#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

// Runs the single-query circuit: Hadamard layer, phase oracle, Hadamard
// layer, and returns the final state.
StateVector interference_circuit(const BooleanOracle& oracle, QueryCounter& counter) {
  StateVector state(oracle.n_inputs());
  state[0] = complex{1.0, 0.0};
  walsh_hadamard(state);
  oracle.apply_phase(state, counter);
  walsh_hadamard(state);
  return state;
}

}  // namespace

Classification classify_deutsch(const BooleanOracle& oracle, QueryCounter& counter) {
  if (oracle.n_bits() != 1)
    throw config_error("one-bit decision requires a one-bit oracle");
  return classify_deutsch_jozsa(oracle, counter);
}

Classification classify_deutsch_jozsa(const BooleanOracle& oracle, QueryCounter& counter) {
  if (oracle.promise() != OraclePromise::ConstantOrBalanced)
    throw config_error("constant/balanced decision requires that promise");
  const StateVector state = interference_circuit(oracle, counter);
  const double p_zero = std::norm(state[0]);
  // The all-zero probability is exactly 1 (constant) or exactly 0
  // (balanced); anything in between would indicate a broken simulation.
  if (p_zero > 1e-9 && p_zero < 1.0 - 1e-9)
    throw numeric_error("all-zero probability is neither 0 nor 1");
  return p_zero > 0.5 ? Classification::Constant : Classification::Balanced;
}

std::uint64_t recover_hidden_string(const BooleanOracle& oracle, QueryCounter& counter) {
  if (oracle.promise() != OraclePromise::Linear)
    throw config_error("hidden string recovery requires a linear oracle");
  const StateVector state = interference_circuit(oracle, counter);
  std::int64_t best = 0;
  double best_p = -1.0;
  for (std::int64_t x = 0; x < state.size(); ++x) {
    const double p = std::norm(state[x]);
    if (p > best_p) {
      best_p = p;
      best = x;
    }
  }
  if (best_p < 1.0 - 1e-9)
    throw numeric_error("hidden string did not come out deterministic");
  return static_cast<std::uint64_t>(best);
}

}  // namespace qsearch
