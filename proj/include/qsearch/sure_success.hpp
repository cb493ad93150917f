#pragma once

#include <array>
#include <cstdint>

#include "qsearch/errors.hpp"
#include "qsearch/partial.hpp"
#include "qsearch/state.hpp"

// Sure-success refinement of the two-stage block search: the two reflections
// of the final step carry adjustable phase factors (phi1 on the diffusion,
// phi1 - phi2 on the oracle) chosen so the non-target-block amplitude of the
// final state is exactly zero even though the iteration counts are integers.
// The probability of measuring inside a target block is then 1 up to double
// rounding.

namespace qsearch {

// Raised when the phase condition has no solution at the given counts; the
// caller retries with extra local iterations.
class no_phase_solution_error : public infeasible_error {
 public:
  using infeasible_error::infeasible_error;
};

// Raised when the phase-condition geometry degenerates (vanishing x or
// sin(phi1)), which makes the recovery formulas singular.
class degenerate_geometry_error : public infeasible_error {
 public:
  using infeasible_error::infeasible_error;
};

// Complex 3x3 matrix over the reduced basis.
struct Mat3c {
  std::array<std::array<complex, 3>, 3> m{};

  static Mat3c identity();
  Mat3c operator*(const Mat3c& rhs) const;
  std::array<complex, 3> apply(const std::array<complex, 3>& x) const;
  // max-norm of M^dagger M - I; zero for a unitary matrix.
  double unitarity_defect() const;
};

// A solved pair of final-step phases together with the state and condition
// data they were derived from.
struct PhaseSolution {
  double phi1 = 0.0;
  double phi2 = 0.0;
  std::array<complex, 3> c{};   // pre-final reduced state
  std::array<double, 3> xyz{};  // coefficients of the vanish condition
  int extra_local_steps = 0;    // local iterations added beyond floor(analytic j2)
};

// Exact reduced state after j1 global and j2 local iterations (no final
// step); identical to the pipeline prefix of run_partial_reduced.
std::array<complex, 3> pre_final_state(const BlockLayout& layout, std::int64_t j1,
                                       std::int64_t j2);

// The phase-modified final operator on the reduced basis:
//   [ (1 - e^{2 i phi1}) v v^T - I ] . diag(e^{i (phi1 - phi2)}, 1, 1)
// where v is the reduced uniform vector. (phi1, phi2) = (pi/2, -pi/2)
// degenerates to the real diffusion-after-oracle iteration.
Mat3c phased_final_matrix(const ReducedAngles& angles, double phi1, double phi2);

// Solves the vanish condition <A_N| F(phi1, phi2) |c> = 0 for the phases.
// Throws no_phase_solution_error when the solvability inequality fails and
// degenerate_geometry_error when the recovery formulas are singular.
PhaseSolution solve_phases(const std::array<complex, 3>& c, const BlockLayout& layout);
PhaseSolution solve_phases(const std::array<complex, 3>& c, const ReducedAngles& angles);

struct SureSuccessResult {
  ReducedState3 final_state;
  PhaseSolution solution;
  std::int64_t j1 = 0;
  std::int64_t j2 = 0;
  QueryCounter counter;
};

// Full planner + solver: j1 is the nearest integer to the analytic count,
// j2 = floor(analytic) + extra with extra in {0, 1, 2}, first solvable wins.
// Throws infeasible_error when all three fail (the smallest-block case).
SureSuccessResult run_sure_success(const BlockLayout& layout);

// Full state-vector cross-check of the phased pipeline at explicit counts
// and phases: j1 global + j2 local plain iterations, then the phased oracle
// (factor e^{i (phi1 - phi2)}) and the phased diffusion (factor e^{2 i phi1}).
std::pair<StateVector, QueryCounter> run_sure_success_full(const BlockLayout& layout,
                                                           std::int64_t j1,
                                                           std::int64_t j2,
                                                           double phi1, double phi2);

}  // namespace qsearch
