#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qsearch/errors.hpp"
#include "qsearch/partial.hpp"
#include "qsearch/state.hpp"
#include "qsearch/sure_success.hpp"

using qsearch::BlockLayout;
using qsearch::complex;
using qsearch::Mat3c;
using qsearch::PhaseSolution;
using qsearch::ReducedAngles;
using qsearch::ReducedState3;

namespace {

constexpr double kPi = std::numbers::pi;

double cnorm(const std::array<complex, 3>& v) {
  double s = 0.0;
  for (const complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("phased final operator is unitary and reduces to the real step") {
  const BlockLayout layout = BlockLayout::leading(4096, 4);
  const ReducedAngles angles = qsearch::reduced_angles(layout);

  // Unitarity across a grid of phases.
  for (double phi1 : {0.3, 1.0, kPi / 2, 2.7}) {
    for (double phi2 : {-1.2, 0.0, 0.5, kPi}) {
      const Mat3c f = qsearch::phased_final_matrix(angles, phi1, phi2);
      CHECK_MESSAGE(f.unitarity_defect() < 1e-12,
                    "phi1=", phi1, " phi2=", phi2);
    }
  }

  // (phi1, phi2) = (pi/2, -pi/2) makes both phase factors -1, which is the
  // plain diffusion-after-oracle iteration.
  const Mat3c phased = qsearch::phased_final_matrix(angles, kPi / 2, -kPi / 2);
  const qsearch::Mat3 real_step = qsearch::reduced_global_matrix(angles);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      CHECK(std::abs(phased.m[r][c] - complex{real_step.m[r][c], 0.0}) < 1e-12);
    }
  }
}

TEST_CASE("pre-final state matches the reduced pipeline prefix") {
  for (const auto& [n, k] : {std::pair<std::int64_t, std::int64_t>{256, 4},
                             {1024, 8},
                             {4096, 4}}) {
    const BlockLayout layout = BlockLayout::leading(n, k);
    const ReducedAngles angles = qsearch::reduced_angles(layout);
    for (std::int64_t j1 : {0, 3, 10}) {
      for (std::int64_t j2 : {0, 2, 7}) {
        const std::array<complex, 3> c = qsearch::pre_final_state(layout, j1, j2);
        CHECK(std::abs(cnorm(c) - 1.0) < 1e-12);

        // Against the real-valued reduced rotation formulas.
        const std::array<double, 3> ref = qsearch::pre_final_reduced(
            angles, static_cast<double>(j1), static_cast<double>(j2));
        for (int i = 0; i < 3; ++i) {
          CHECK_MESSAGE(std::abs(c[i] - complex{ref[i], 0.0}) < 1e-12,
                        "n=", n, " k=", k, " j1=", j1, " j2=", j2, " i=", i);
        }
      }
    }
  }
}

TEST_CASE("solved phases cancel the non-target block exactly") {
  const BlockLayout layout = BlockLayout::leading(4096, 4);
  const ReducedAngles angles = qsearch::reduced_angles(layout);
  const qsearch::SureSuccessResult res = qsearch::run_sure_success(layout);

  // Planner picks the analytic counts for this size.
  const qsearch::PartialPlan plan = qsearch::make_partial_plan(layout);
  CHECK(res.j1 == std::llround(plan.j1_analytic));
  CHECK(res.j2 ==
        static_cast<std::int64_t>(std::floor(plan.j2_analytic)) +
            res.solution.extra_local_steps);
  CHECK(res.solution.extra_local_steps == 0);
  CHECK(res.counter.queries == res.j1 + res.j2 + 1);

  // The residual in the third component is the whole point: identically zero
  // and the final state keeps unit norm.
  CHECK(std::abs(res.final_state.components[2]) < 1e-10);
  CHECK(res.final_state.target_block_probability() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(res.final_state.norm_sq() - 1.0) < 1e-12);

  // Check the vanish condition directly on the solved phases.
  const Mat3c f =
      qsearch::phased_final_matrix(angles, res.solution.phi1, res.solution.phi2);
  const std::array<complex, 3> out = f.apply(res.solution.c);
  CHECK(std::abs(out[2]) < 1e-10);
}

TEST_CASE("full state-vector run reproduces the reduced sure-success state") {
  for (const auto& [n, k, kt, bt] :
       {std::array<std::int64_t, 4>{4096, 4, 1, 1},
        {1024, 8, 2, 2},
        {256, 4, 1, 2}}) {
    const BlockLayout layout(
        n, k,
        [&] {
          std::vector<std::int64_t> blocks;
          for (std::int64_t i = 0; i < kt; ++i) blocks.push_back(i);
          return blocks;
        }(),
        bt);
    qsearch::SureSuccessResult reduced;
    try {
      reduced = qsearch::run_sure_success(layout);
    } catch (const qsearch::infeasible_error&) {
      continue;  // feasibility itself is covered elsewhere
    }
    const auto [state, counter] = qsearch::run_sure_success_full(
        layout, reduced.j1, reduced.j2, reduced.solution.phi1,
        reduced.solution.phi2);
    CHECK(counter.queries == reduced.counter.queries);

    const ReducedState3 folded = ReducedState3::from_full(state, layout);
    for (int i = 0; i < 3; ++i) {
      CHECK_MESSAGE(
          std::abs(folded.components[i] - reduced.final_state.components[i]) <
              1e-10,
          "n=", n, " k=", k, " component ", i);
    }
    CHECK(folded.target_block_probability() ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("smallest-block geometry admits no phase solution") {
  // N=4, K=2 means two blocks of two: the phase condition degenerates to a
  // real reflection for every allowed extra step, so the solver must refuse.
  const BlockLayout layout = BlockLayout::leading(4, 2);
  const qsearch::PartialPlan plan = qsearch::make_partial_plan(layout);
  const std::int64_t j1 = std::llround(plan.j1_analytic);
  const std::int64_t j2_base =
      static_cast<std::int64_t>(std::floor(plan.j2_analytic));
  for (int extra = 0; extra < 3; ++extra) {
    const std::array<complex, 3> c =
        qsearch::pre_final_state(layout, j1, j2_base + extra);
    CHECK_THROWS_AS(qsearch::solve_phases(c, layout), qsearch::infeasible_error);
  }
  CHECK_THROWS_AS(qsearch::run_sure_success(layout), qsearch::infeasible_error);
}

TEST_CASE("sure success sweep reaches certainty on every feasible layout") {
  // Reduced-model sweep over rising sizes and block counts; blocks of size
  // two or less are skipped (no room for the in-block rotation).
  for (std::int64_t n = 64; n <= (std::int64_t{1} << 20); n *= 4) {
    for (std::int64_t k : {2, 4, 8}) {
      if (n / k <= 2) continue;
      const BlockLayout layout = BlockLayout::leading(n, k);
      const qsearch::SureSuccessResult res = qsearch::run_sure_success(layout);
      CHECK_MESSAGE(
          std::abs(res.final_state.target_block_probability() - 1.0) < 1e-9,
          "n=", n, " k=", k, " extra=", res.solution.extra_local_steps);
      CHECK(res.solution.extra_local_steps >= 0);
      CHECK(res.solution.extra_local_steps <= 2);
    }
  }
}

TEST_CASE("phases beat the plain final step at identical counts") {
  // With the same iteration counts the plain real final step leaves leakage
  // in the non-target blocks; the phased step removes it entirely.
  const BlockLayout layout = BlockLayout::leading(16384, 8);
  const qsearch::SureSuccessResult phased = qsearch::run_sure_success(layout);
  const ReducedState3 plain = qsearch::run_partial_reduced(
      layout, static_cast<double>(phased.j1), static_cast<double>(phased.j2));
  CHECK(plain.target_block_probability() <
        phased.final_state.target_block_probability());
  CHECK(phased.final_state.target_block_probability() ==
        doctest::Approx(1.0).epsilon(1e-12));
}
