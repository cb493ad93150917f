#include "qsearch/sure_success.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace qsearch {

namespace {

constexpr double kResidualTol = 1e-10;

// Relative floor for cos^2(phi1). At exactly zero the oracle phase becomes
// e^{2 i phi1} = -1 and the "phased" final operator is the plain real
// reflection pair — no phase correction is actually applied, so the method
// has failed even if that real step happens to work. Two-element blocks land
// exactly on this boundary, where the sign of the num cancellation is
// rounding noise; the tolerance keeps the verdict deterministic.
constexpr double kDegenerateTol = 1e-12;

complex unit_phase(double angle) { return complex{std::cos(angle), std::sin(angle)}; }

}  // namespace

// ---------------------------------------------------------------------------
// Mat3c
// ---------------------------------------------------------------------------

Mat3c Mat3c::identity() {
  Mat3c r;
  for (int i = 0; i < 3; ++i) r.m[i][i] = complex{1.0, 0.0};
  return r;
}

Mat3c Mat3c::operator*(const Mat3c& rhs) const {
  Mat3c r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      complex acc{0.0, 0.0};
      for (int k = 0; k < 3; ++k) acc += m[i][k] * rhs.m[k][j];
      r.m[i][j] = acc;
    }
  }
  return r;
}

std::array<complex, 3> Mat3c::apply(const std::array<complex, 3>& x) const {
  std::array<complex, 3> r{};
  for (int i = 0; i < 3; ++i) {
    r[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
  }
  return r;
}

double Mat3c::unitarity_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      complex acc{0.0, 0.0};
      for (int k = 0; k < 3; ++k) acc += std::conj(m[k][i]) * m[k][j];
      if (i == j) acc -= complex{1.0, 0.0};
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Pipeline pieces
// ---------------------------------------------------------------------------

std::array<complex, 3> pre_final_state(const BlockLayout& layout, std::int64_t j1,
                                       std::int64_t j2) {
  if (j1 < 0 || j2 < 0) {
    throw config_error("iteration counts must be non-negative");
  }
  const std::array<double, 3> pre =
      pre_final_reduced(reduced_angles(layout), static_cast<double>(j1),
                        static_cast<double>(j2));
  return {complex{pre[0], 0.0}, complex{pre[1], 0.0}, complex{pre[2], 0.0}};
}

Mat3c phased_final_matrix(const ReducedAngles& angles, double phi1, double phi2) {
  const std::array<double, 3> v = reduced_initial(angles);
  const complex p = unit_phase(2.0 * phi1);        // diffusion phase factor
  const complex q = unit_phase(phi1 - phi2);       // oracle phase factor
  Mat3c f;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      complex entry = (complex{1.0, 0.0} - p) *
                      (v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);
      if (i == j) entry -= complex{1.0, 0.0};
      if (j == 0) entry *= q;
      f.m[i][j] = entry;
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Phase solving
// ---------------------------------------------------------------------------

PhaseSolution solve_phases(const std::array<complex, 3>& c,
                           const ReducedAngles& angles) {
  for (const complex& comp : c) {
    if (std::abs(comp.imag()) > 1e-12) {
      throw config_error("pre-final state must be real up to rounding");
    }
  }
  const std::array<double, 3> v = reduced_initial(angles);
  const double c1 = c[0].real();
  const double c2 = c[1].real();
  const double c3 = c[2].real();
  // Vanish condition from the third row of the phased final matrix:
  //   e^{i(phi1-phi2)} (1 - e^{2 i phi1}) x + (1 - e^{2 i phi1}) y + 2 z = 0
  const double x = v[2] * v[0] * c1;
  const double y = v[2] * v[1] * c2 + v[2] * v[2] * c3;
  const double z = -0.5 * c3;

  if (std::abs(x) < 1e-15) {
    throw degenerate_geometry_error("vanish condition has no oracle-phase lever (x = 0)");
  }
  const double num = x * x - (y + z) * (y + z);
  const double den = x * x - y * y - 2.0 * y * z;  // equals num + z^2
  if (den <= 0.0) {
    throw degenerate_geometry_error("phase condition degenerate (zero denominator)");
  }
  if (num < -kDegenerateTol * den) {
    throw no_phase_solution_error("phase condition unsolvable at these counts");
  }
  if (num <= kDegenerateTol * den) {
    throw degenerate_geometry_error(
        "phase solution collapses to a real reflection (cos phi1 = 0)");
  }
  const double r = std::min(1.0, std::sqrt(num / den));

  struct Candidate {
    double phi1;
    double phi2;
    double residual;
    double target_mag;
  };
  std::vector<Candidate> accepted;
  bool saw_degenerate = false;
  const complex two_z{2.0 * z, 0.0};
  for (const double cos_phi1 : {r, -r}) {
    const double phi1 = std::acos(cos_phi1);  // in (0, pi) when r < 1
    const double sin_phi1 = std::sin(phi1);
    if (sin_phi1 < 1e-12) {  // phase factor real: no lever left
      saw_degenerate = true;
      continue;
    }
    // Recovery of phi2 on the principal branch...
    const double sin_psi = -(y / x) * sin_phi1 - z / (x * sin_phi1);
    const double cos_psi = -(y / x) * cos_phi1;
    const double psi = std::atan2(sin_psi, cos_psi);
    // ...and the matrix-consistent reflection of that branch. Both are
    // checked against the vanish condition; only a verified pair survives.
    for (const double phi2 : {2.0 * phi1 - psi, psi}) {
      const complex p = unit_phase(2.0 * phi1);
      const complex q = unit_phase(phi1 - phi2);
      const complex residual =
          q * (complex{1.0, 0.0} - p) * x + (complex{1.0, 0.0} - p) * y + two_z;
      if (std::abs(residual) > kResidualTol) continue;
      const Mat3c f = phased_final_matrix(angles, phi1, phi2);
      const std::array<complex, 3> fin = f.apply(c);
      accepted.push_back({phi1, phi2, std::abs(residual), std::abs(fin[0])});
    }
  }
  if (accepted.empty()) {
    if (saw_degenerate) {
      throw degenerate_geometry_error("phase solution collapses to a real factor");
    }
    throw no_phase_solution_error("no phase branch satisfies the vanish condition");
  }
  const Candidate* best = &accepted.front();
  for (const Candidate& cand : accepted) {
    if (cand.target_mag > best->target_mag + 1e-12 ||
        (std::abs(cand.target_mag - best->target_mag) <= 1e-12 &&
         std::abs(cand.phi1) < std::abs(best->phi1))) {
      best = &cand;
    }
  }
  PhaseSolution sol;
  sol.phi1 = best->phi1;
  sol.phi2 = best->phi2;
  sol.c = c;
  sol.xyz = {x, y, z};
  return sol;
}

PhaseSolution solve_phases(const std::array<complex, 3>& c, const BlockLayout& layout) {
  return solve_phases(c, reduced_angles(layout));
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

SureSuccessResult run_sure_success(const BlockLayout& layout) {
  const ReducedAngles angles = reduced_angles(layout);
  const double k_eff = static_cast<double>(layout.n_blocks) /
                       static_cast<double>(layout.n_target_blocks());
  const auto [beta, eta] = grk_optimal_params(k_eff);
  const auto [j1a, j2a] = analytic_iteration_counts(layout, beta, eta);
  const std::int64_t j1 = std::llround(j1a);
  if (j1 < 0) {
    throw infeasible_error(
        "database too small: global iteration count rounds negative");
  }
  const std::int64_t j2_base = static_cast<std::int64_t>(std::floor(j2a));
  for (int extra = 0; extra <= 2; ++extra) {
    const std::int64_t j2 = j2_base + extra;
    if (j2 < 0) continue;
    const std::array<complex, 3> c = pre_final_state(layout, j1, j2);
    try {
      PhaseSolution sol = solve_phases(c, angles);
      sol.extra_local_steps = extra;
      SureSuccessResult result;
      const Mat3c f = phased_final_matrix(angles, sol.phi1, sol.phi2);
      result.final_state.components = f.apply(c);
      result.solution = sol;
      result.j1 = j1;
      result.j2 = j2;
      result.counter.queries = j1 + j2 + 1;
      return result;
    } catch (const infeasible_error&) {
      // includes the no-solution and degenerate subtypes; try more local steps
    }
  }
  throw infeasible_error(
      "no phase solution for any extra local step; layout admits no sure-success "
      "final iteration");
}

std::pair<StateVector, QueryCounter> run_sure_success_full(const BlockLayout& layout,
                                                           std::int64_t j1,
                                                           std::int64_t j2,
                                                           double phi1, double phi2) {
  if (j1 < 0 || j2 < 0) {
    throw config_error("iteration counts must be non-negative");
  }
  StateVector state = uniform_state(layout.n_elements);
  QueryCounter counter;
  const SearchSpace space = layout.search_space();
  for (std::int64_t i = 0; i < j1; ++i) {
    reflect_marked(state, space, counter);
    invert_about_average(state);
  }
  for (std::int64_t i = 0; i < j2; ++i) {
    reflect_marked(state, space, counter);
    block_invert_about_average(state, layout);
  }
  reflect_marked_phased(state, space, unit_phase(phi1 - phi2), counter);
  invert_about_average_phased(state, unit_phase(2.0 * phi1));
  return {std::move(state), counter};
}

}  // namespace qsearch
