#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qsearch/state.hpp"

// Full database search: the quadratic-speedup iteration, its generalization
// to an arbitrary preparation unitary, the structured two-criterion search
// over pairs, and the query-complexity optimality experiment.

namespace qsearch {

// Closed-form plan for searching M targets among N elements.
struct GroverPlan {
  std::int64_t n_elements = 0;  // N
  std::int64_t n_targets = 0;   // M
  double theta = 0.0;           // sin^2(theta) = M / N
  std::int64_t j_opt = 0;       // round((pi / 4) sqrt(N / M) - 1/2), floored at 0
};

GroverPlan plan_grover(std::int64_t n, std::int64_t m);

// Probability of landing on a target after j iterations: sin^2((2j+1) theta).
double success_probability(const GroverPlan& plan, std::int64_t j);

// Runs j iterations (marked reflection, then inversion about the average)
// from the uniform state. Counts j queries.
std::pair<StateVector, QueryCounter> run_grover(const SearchSpace& space, std::int64_t j);

// Amplitude amplification with an arbitrary preparation map in place of the
// Hadamard layer. prepare must implement a fixed unitary applied to |0>;
// the plan stores A = <target | prepare |0>.
struct AmplificationPlan {
  std::function<void(StateVector&)> prepare;
  std::int64_t n_elements = 0;
  std::int64_t target = 0;         // single target index
  complex target_amplitude{0, 0};  // A, |A| in (0, 1]
  std::int64_t j_u = 0;            // round((pi / 4) / |A| - 1/2), floored at 0
};

AmplificationPlan plan_amplified(std::function<void(StateVector&)> prepare,
                                 std::int64_t n, std::int64_t target);

// Runs j_u generalized iterations: marked reflection, then the negated
// reflection about the prepared state. Counts j_u queries.
std::pair<StateVector, QueryCounter> run_amplified(const AmplificationPlan& plan);

// Two-criterion search over pairs (a, b) in [0, n)^2: F(a, b) is true only
// for (a_target, b_target), G(a) is true for g_true (which contains
// a_target). |g_true| = M plays the role of the G-marked count.
struct StructuredOracle {
  std::int64_t n = 0;
  std::int64_t a_target = 0;
  std::int64_t b_target = 0;
  std::vector<std::int64_t> g_true;  // sorted, unique, contains a_target

  StructuredOracle(std::int64_t n_side, std::int64_t a_t, std::int64_t b_t,
                   std::vector<std::int64_t> g_set);
  std::int64_t n_g() const { return static_cast<std::int64_t>(g_true.size()); }
};

struct StructuredResult {
  std::int64_t j1 = 0;   // first-register rounds
  std::int64_t j = 0;    // amplification rounds
  std::int64_t j12 = 0;  // pair rounds per amplification step and in the tail
  bool exact_angles = false;  // counts from exact arcsines (small n) or asymptotics
  std::int64_t expansion_total = 0;  // j12 + 2 j12 j + j1
  QueryCounter counter;              // must equal expansion_total
  double pair_probability = 0.0;     // mass on (a_target, b_target)
  std::int64_t found_a = 0;
  std::int64_t found_b = 0;
  double asymptotic_queries = 0.0;   // (pi^2 / 8) sqrt(N M) with N = n^2... dominant term
  double plain_grover_queries = 0.0; // (pi / 4) n for the unstructured pair search
  bool exceeds_plain_grover = false;
};

// Iteration counts and closed-form query totals for the two-criterion search,
// sized without materializing the n^2 pair space. Small instances (n < 64)
// round the exact rotation angles; larger ones use the asymptotic counts.
struct StructuredCounts {
  std::int64_t j1 = 0;
  std::int64_t j = 0;
  std::int64_t j12 = 0;
  bool exact_angles = false;
  std::int64_t expansion_total = 0;  // j12 + 2 j12 j + j1
  double asymptotic_queries = 0.0;   // (pi^2 / 8) sqrt(n m), the large-n query cost
  double plain_grover_queries = 0.0; // (pi / 4) n for the unstructured pair search
};

StructuredCounts structured_iteration_counts(std::int64_t n, std::int64_t m);

StructuredResult run_structured(const StructuredOracle& oracle);

// Query-optimality experiment: runs J iterations against every possible
// single target and accumulates sum_a || psi_J^a - psi_J ||^2 where psi_J
// is the target-independent reference (the uniform state).
struct DriftReport {
  std::int64_t n_elements = 0;
  std::int64_t iterations = 0;  // J
  double drift_sum = 0.0;
  double lower_bound = 0.0;  // 2N - 2 sqrt(N): drift needed for reliable success
  double upper_bound = 0.0;  // 4 J^2, holds for every J
  bool upper_holds = false;      // drift_sum <= 4 J^2; must always be true
  double lower_fraction = 0.0;   // drift_sum / lower_bound; ~1 at the optimal J
};

DriftReport optimality_experiment(std::int64_t n, std::int64_t j);

// Shared helper: nearest integer with halves rounded up, floored at zero.
std::int64_t round_iterations(double x);

}  // namespace qsearch
