#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsearch/state.hpp"

// Two-stage block search: j1 global iterations concentrate amplitude on the
// target blocks, j2 simultaneous per-block local iterations re-phase the
// target-block interior, and one final global step cancels the non-target
// blocks. Parameters (beta, eta) control the split between the stages; the
// optimal pair makes the total query count strictly cheaper than full
// search. Everything here exists twice: as a full state-vector pipeline and
// as an exact 3-dimensional reduction in the symmetric subspace spanned by
//   |A_T>   uniform over all targets,
//   |A_nTT> uniform over non-target elements inside target blocks,
//   |A_N>   uniform over all elements of non-target blocks.

namespace qsearch {

// Subspace angles. sin(theta) = sqrt(M/N) is the global target fraction,
// sin(theta1) = sqrt(B_T/B) the in-block fraction, sin(gamma) = sqrt(K_T/K)
// the target-block fraction; sin(theta) = sin(theta1) * sin(gamma) exactly.
struct ReducedAngles {
  double theta = 0.0;
  double theta1 = 0.0;
  double gamma = 0.0;
};

// Angles of a concrete layout; requires K_T < K and B_T < B, otherwise the
// three basis directions degenerate.
ReducedAngles reduced_angles(const BlockLayout& layout);
// Angles from (theta, theta1) alone, with gamma fixed by the exact identity
// sin(gamma) = sin(theta)/sin(theta1). Lets callers model databases far
// larger than any representable layout.
ReducedAngles reduced_angles(double theta, double theta1);

// Small dense real 3x3 matrix used by the reduced pipeline.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity();
  Mat3 operator*(const Mat3& rhs) const;
  std::array<double, 3> apply(const std::array<double, 3>& x) const;
};

// Reduced three-component state.
struct ReducedState3 {
  std::array<complex, 3> components{};

  // Block-wise summation of a full symmetric state vector.
  static ReducedState3 from_full(const StateVector& state, const BlockLayout& layout);

  double norm_sq() const;
  // Probability mass inside the target blocks (first two basis directions).
  double target_block_probability() const;
  // Probability mass left in the non-target blocks.
  double non_target_mass() const;
};

// ---------------------------------------------------------------------------
// Parameter optimization
// ---------------------------------------------------------------------------

// Closed-form optimum for effective block count k_bar (real, >= 2):
// beta = arcsin(sqrt(k/(4(k-1)))), eta = (sqrt(k)/2) arctan(sqrt(3k-4)/(k-2)),
// with the k=2 pole resolved to eta = pi/(2 sqrt 2).
std::pair<double, double> grk_optimal_params(double k_bar);

// eta forced by the non-target-block cancellation at a given beta:
// tan(2 eta / sqrt k) = 2 sqrt(k) sin(2 beta) / (k - 4 sin^2 beta), on the
// branch with eta in [0, (pi/4) sqrt k].
double cancellation_eta(double k_bar, double beta_bar);

// Objective Lambda(beta) = beta - eta(beta); negative values beat full search.
double grk_objective(double k_bar, double beta_bar);

// Second stationary point sin^2(beta) = k/4, present only for k_bar <= 4.
// Reported for completeness; never selected (the k/(4(k-1)) root is the
// global minimum for every k >= 2).
std::optional<double> grk_second_stationary_beta(double k_bar);

// ---------------------------------------------------------------------------
// Iteration scheduling
// ---------------------------------------------------------------------------

// Real-valued iteration counts from the (beta, eta) parameterization:
// j1 = (pi/4 - eta_t sqrt(M)/sqrt(K)) sqrt(N/M), j2 = (beta_t sqrt(M)/sqrt(K)) sqrt(N/M)
// with beta_t = beta_bar / sqrt(B_T), eta_t = eta_bar / sqrt(B_T).
std::pair<double, double> analytic_iteration_counts(const BlockLayout& layout,
                                                    double beta_bar, double eta_bar);

// Rounded integer counts; throws if j1 rounds negative (the database is too
// small for this parameter pair).
std::pair<std::int64_t, std::int64_t> schedule_iterations(const BlockLayout& layout,
                                                          double beta_bar,
                                                          double eta_bar);

// Everything the planner derives for one layout.
struct PartialPlan {
  BlockLayout layout;
  double k_eff = 0.0;        // K / K_T
  double beta = 0.0;         // optimal beta for k_eff
  double eta = 0.0;          // optimal eta for k_eff
  double lambda = 0.0;       // beta - eta (negative = cheaper than full search)
  double queries_per_sqrt_n = 0.0;  // pi/4 + lambda / sqrt(k_eff)
  double block_angle = 0.0;  // large-N in-block angle omega at the optimum
  double j1_analytic = 0.0;
  double j2_analytic = 0.0;
  std::int64_t j1 = 0;
  std::int64_t j2 = 0;
  std::optional<double> beta_second;  // reported-only second stationary point
};

PartialPlan make_partial_plan(const BlockLayout& layout);

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct PartialRunResult {
  StateVector state;
  std::vector<double> block_probs;
  std::int64_t found_block = 0;  // argmax block probability, lowest index on ties
  QueryCounter counter;          // j1 + j2 + 1 for the default final step
};

// Full pipeline: j1 x (marked reflection + global diffusion), j2 x (marked
// reflection + blockwise diffusion), then the final step. The default final
// step is the diffusion-then-marked-reflection composition (one more query);
// final_diffusion_only replaces it with the bare negated-uniform reflection,
// which flips the target amplitude sign and costs no query.
PartialRunResult run_partial(const BlockLayout& layout, std::int64_t j1,
                             std::int64_t j2, bool final_diffusion_only = false);

// Exact reduced pipeline at real-valued counts (rotation angles 2*j1*theta
// and 2*j2*theta1). Matches the block-summed full run at integer counts.
ReducedState3 run_partial_reduced(const BlockLayout& layout, double j1, double j2,
                                  bool final_diffusion_only = false);
ReducedState3 run_partial_reduced(const ReducedAngles& angles, double j1, double j2,
                                  bool final_diffusion_only = false);

// Reduced initial vector (sin theta, sin gamma cos theta1, cos gamma).
std::array<double, 3> reduced_initial(const ReducedAngles& angles);

// Reduced state after j1 global and j2 local iterations, before any final
// step; real counts allowed.
std::array<double, 3> pre_final_reduced(const ReducedAngles& angles, double j1,
                                        double j2);

// Exact reduced one-step operators.
Mat3 reduced_global_matrix(const ReducedAngles& angles);
Mat3 reduced_local_matrix(const ReducedAngles& angles, double j2);
Mat3 reduced_final_matrix(const ReducedAngles& angles, bool diffusion_only = false);
// Exact integer power of the global iteration (in-plane rotation plus the
// alternating sign on the orthogonal direction).
std::array<double, 3> apply_global_power(const ReducedAngles& angles, std::int64_t j1,
                                         const std::array<double, 3>& x);
// Large-N closed form of the j1-fold global iteration; documentation /
// comparison only.
Mat3 asymptotic_global_power(const ReducedAngles& angles, std::int64_t j1);

// Entries of the compact large-N form of the full pipeline at optimal
// parameters; xi1^2 + xi2^2 = 1.
double compact_form_xi1(double k);
double compact_form_xi2(double k);

// ---------------------------------------------------------------------------
// Closed-form diagnostics
// ---------------------------------------------------------------------------

// Large-N limit of the in-block angle: tan(omega) = cot(beta)/2 +
// (2/K - 1/2) tan(beta). K real (effective counts allowed).
double block_angle_limit(double k, double beta);

// Finite-N in-block angle after the pipeline (before the large-N limit).
double block_angle_finite(double theta, double theta1, double j1, double j2);

// Finite-N cancellation condition, returned as LHS - RHS; its zero set is
// exactly the set of (j1, j2) at which the final step empties the
// non-target blocks.
double finite_n_cancellation_residual(double theta, double theta1, double j1,
                                      double j2);
// Analytic partial derivatives (d/dj1, d/dj2) of the residual.
std::pair<double, double> finite_n_cancellation_residual_derivatives(double theta,
                                                                     double theta1,
                                                                     double j1,
                                                                     double j2);

// ---------------------------------------------------------------------------
// Strategy comparison
// ---------------------------------------------------------------------------

// Large-N query counts of the competing block-search strategies.
struct StrategyQueries {
  double full = 0.0;       // (pi/4) sqrt(N)
  double naive = 0.0;      // (K-1)(pi/4) sqrt(N/K): scan blocks separately
  double gr_simple = 0.0;  // (pi/4) sqrt(N (K-1)/K): search the complement
  double grk = 0.0;        // (pi/4 + (beta-eta)/sqrt K) sqrt(N)
  std::optional<double> binary;  // halving; only defined for K = 2^k
  double beta = 0.0;
  double eta = 0.0;
};

StrategyQueries compare_strategies(std::int64_t n, std::int64_t k);

// Binary-halving query count; throws unless k is a power of two.
double binary_strategy_queries(std::int64_t n, std::int64_t k);

}  // namespace qsearch
