#include "qsearch/partial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsearch/errors.hpp"

namespace qsearch {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

// ---------------------------------------------------------------------------
// Angles
// ---------------------------------------------------------------------------

ReducedAngles reduced_angles(const BlockLayout& layout) {
  if (layout.n_target_blocks() >= layout.n_blocks) {
    throw config_error(
        "reduced basis needs at least one non-target block (K_T < K)");
  }
  if (layout.targets_per_block >= layout.block_size) {
    throw config_error(
        "reduced basis needs non-target elements inside target blocks (B_T < B)");
  }
  ReducedAngles a;
  a.theta = layout.theta();
  a.theta1 = layout.theta1();
  a.gamma = layout.gamma();
  return a;
}

ReducedAngles reduced_angles(double theta, double theta1) {
  if (!(theta > 0.0) || !(theta1 > 0.0) || theta1 >= kPi / 2 || theta > theta1) {
    throw config_error("reduced angles require 0 < theta <= theta1 < pi/2");
  }
  ReducedAngles a;
  a.theta = theta;
  a.theta1 = theta1;
  a.gamma = std::asin(std::sin(theta) / std::sin(theta1));
  return a;
}

// ---------------------------------------------------------------------------
// Mat3
// ---------------------------------------------------------------------------

Mat3 Mat3::identity() {
  Mat3 r;
  for (int i = 0; i < 3; ++i) r.m[i][i] = 1.0;
  return r;
}

Mat3 Mat3::operator*(const Mat3& rhs) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += m[i][k] * rhs.m[k][j];
      r.m[i][j] = acc;
    }
  }
  return r;
}

std::array<double, 3> Mat3::apply(const std::array<double, 3>& x) const {
  std::array<double, 3> r{};
  for (int i = 0; i < 3; ++i) {
    r[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
  }
  return r;
}

// ---------------------------------------------------------------------------
// ReducedState3
// ---------------------------------------------------------------------------

ReducedState3 ReducedState3::from_full(const StateVector& state,
                                       const BlockLayout& layout) {
  if (static_cast<std::int64_t>(state.size()) != layout.n_elements) {
    throw config_error("state size does not match layout");
  }
  if (layout.n_target_blocks() >= layout.n_blocks ||
      layout.targets_per_block >= layout.block_size) {
    throw config_error("degenerate layout cannot be reduced to three components");
  }
  const std::int64_t b = layout.block_size;
  const std::int64_t bt = layout.targets_per_block;
  const std::int64_t kt = layout.n_target_blocks();
  complex sum_t{0.0, 0.0};
  complex sum_ntt{0.0, 0.0};
  complex sum_n{0.0, 0.0};
  const complex* amps = state.data();
  for (std::int64_t blk = 0; blk < layout.n_blocks; ++blk) {
    const complex* base = amps + blk * b;
    if (layout.is_target_block(blk)) {
      for (std::int64_t i = 0; i < bt; ++i) sum_t += base[i];
      for (std::int64_t i = bt; i < b; ++i) sum_ntt += base[i];
    } else {
      for (std::int64_t i = 0; i < b; ++i) sum_n += base[i];
    }
  }
  const double m = static_cast<double>(kt) * static_cast<double>(bt);
  const double ntt = static_cast<double>(kt) * static_cast<double>(b - bt);
  const double nn = static_cast<double>(layout.n_blocks - kt) *
                    static_cast<double>(b);
  ReducedState3 r;
  r.components[0] = sum_t / std::sqrt(m);
  r.components[1] = sum_ntt / std::sqrt(ntt);
  r.components[2] = sum_n / std::sqrt(nn);
  return r;
}

double ReducedState3::norm_sq() const {
  double acc = 0.0;
  for (const complex& c : components) acc += std::norm(c);
  return acc;
}

double ReducedState3::target_block_probability() const {
  return std::norm(components[0]) + std::norm(components[1]);
}

double ReducedState3::non_target_mass() const { return std::norm(components[2]); }

// ---------------------------------------------------------------------------
// Parameter optimization
// ---------------------------------------------------------------------------

std::pair<double, double> grk_optimal_params(double k_bar) {
  if (!(k_bar >= 2.0)) {
    throw config_error("effective block count must be at least 2");
  }
  const double beta = std::asin(std::sqrt(k_bar / (4.0 * (k_bar - 1.0))));
  // atan2 keeps the K=2 pole (denominator -> 0) on the right branch:
  // atan2(sqrt(2), 0) = pi/2, hence eta = pi/(2 sqrt 2).
  const double eta =
      0.5 * std::sqrt(k_bar) * std::atan2(std::sqrt(3.0 * k_bar - 4.0), k_bar - 2.0);
  return {beta, eta};
}

double cancellation_eta(double k_bar, double beta_bar) {
  if (!(k_bar >= 2.0)) {
    throw config_error("effective block count must be at least 2");
  }
  if (!(beta_bar >= 0.0) || beta_bar > kPi / 2) {
    throw config_error("beta must lie in [0, pi/2]");
  }
  const double s = std::sin(beta_bar);
  const double denom = k_bar - 4.0 * s * s;
  if (denom < 0.0) {
    // The forced eta would exceed (pi/4) sqrt(k): outside the valid branch.
    throw config_error("beta too large: cancellation eta leaves its bound");
  }
  const double num = 2.0 * std::sqrt(k_bar) * std::sin(2.0 * beta_bar);
  return 0.5 * std::sqrt(k_bar) * std::atan2(num, denom);
}

double grk_objective(double k_bar, double beta_bar) {
  return beta_bar - cancellation_eta(k_bar, beta_bar);
}

std::optional<double> grk_second_stationary_beta(double k_bar) {
  if (!(k_bar >= 2.0)) {
    throw config_error("effective block count must be at least 2");
  }
  if (k_bar > 4.0) return std::nullopt;
  return std::asin(std::sqrt(k_bar) / 2.0);
}

// ---------------------------------------------------------------------------
// Iteration scheduling
// ---------------------------------------------------------------------------

std::pair<double, double> analytic_iteration_counts(const BlockLayout& layout,
                                                    double beta_bar,
                                                    double eta_bar) {
  const double n = static_cast<double>(layout.n_elements);
  const double m = static_cast<double>(layout.n_targets());
  const double k = static_cast<double>(layout.n_blocks);
  const double root_bt = std::sqrt(static_cast<double>(layout.targets_per_block));
  const double beta_t = beta_bar / root_bt;
  const double eta_t = eta_bar / root_bt;
  const double scale = std::sqrt(n / m);
  const double mk = std::sqrt(m / k);
  const double j1 = (kPi / 4.0 - eta_t * mk) * scale;
  const double j2 = beta_t * mk * scale;
  return {j1, j2};
}

std::pair<std::int64_t, std::int64_t> schedule_iterations(const BlockLayout& layout,
                                                          double beta_bar,
                                                          double eta_bar) {
  const auto [j1a, j2a] = analytic_iteration_counts(layout, beta_bar, eta_bar);
  const std::int64_t j1 = std::llround(j1a);
  const std::int64_t j2 = std::llround(j2a);
  if (j1 < 0) {
    throw infeasible_error(
        "database too small: global iteration count rounds negative");
  }
  return {j1, std::max<std::int64_t>(j2, 0)};
}

PartialPlan make_partial_plan(const BlockLayout& layout) {
  PartialPlan plan{layout};
  plan.k_eff = static_cast<double>(layout.n_blocks) /
               static_cast<double>(layout.n_target_blocks());
  const auto [beta, eta] = grk_optimal_params(plan.k_eff);
  plan.beta = beta;
  plan.eta = eta;
  plan.lambda = beta - eta;
  plan.queries_per_sqrt_n = kPi / 4.0 + plan.lambda / std::sqrt(plan.k_eff);
  plan.block_angle = block_angle_limit(plan.k_eff, beta);
  const auto [j1a, j2a] = analytic_iteration_counts(layout, beta, eta);
  plan.j1_analytic = j1a;
  plan.j2_analytic = j2a;
  const auto [j1, j2] = schedule_iterations(layout, beta, eta);
  plan.j1 = j1;
  plan.j2 = j2;
  plan.beta_second = grk_second_stationary_beta(plan.k_eff);
  return plan;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

PartialRunResult run_partial(const BlockLayout& layout, std::int64_t j1,
                             std::int64_t j2, bool final_diffusion_only) {
  if (j1 < 0 || j2 < 0) {
    throw config_error("iteration counts must be non-negative");
  }
  PartialRunResult result;
  result.state = uniform_state(layout.n_elements);
  const SearchSpace space = layout.search_space();
  for (std::int64_t i = 0; i < j1; ++i) {
    reflect_marked(result.state, space, result.counter);
    invert_about_average(result.state);
  }
  for (std::int64_t i = 0; i < j2; ++i) {
    reflect_marked(result.state, space, result.counter);
    block_invert_about_average(result.state, layout);
  }
  // Final step: diffusion followed by the marked reflection composes the
  // diffusion-then-oracle operator; the bare-diffusion variant skips the
  // query and leaves the target amplitude sign flipped relative to it.
  invert_about_average(result.state);
  if (!final_diffusion_only) {
    reflect_marked(result.state, space, result.counter);
  }
  result.block_probs = block_probabilities(result.state, layout);
  std::int64_t best = 0;
  for (std::int64_t blk = 1; blk < layout.n_blocks; ++blk) {
    if (result.block_probs[static_cast<std::size_t>(blk)] >
        result.block_probs[static_cast<std::size_t>(best)]) {
      best = blk;
    }
  }
  result.found_block = best;
  return result;
}

std::array<double, 3> reduced_initial(const ReducedAngles& angles) {
  return {std::sin(angles.gamma) * std::sin(angles.theta1),
          std::sin(angles.gamma) * std::cos(angles.theta1),
          std::cos(angles.gamma)};
}

std::array<double, 3> pre_final_reduced(const ReducedAngles& angles, double j1,
                                        double j2) {
  if (j1 < 0.0 || j2 < 0.0) {
    throw config_error("iteration counts must be non-negative");
  }
  const std::array<double, 3> v = reduced_initial(angles);
  const double ct = std::cos(angles.theta);
  // After the global stage the state stays in the plane spanned by |A_T> and
  // the normalized non-target direction of the uniform state; component one
  // advances as sin((2 j1 + 1) theta), the rest shrinks by the matching
  // cosine. Exact for integer counts, smooth in between.
  const double s1 = std::sin((2.0 * j1 + 1.0) * angles.theta);
  const double c1 = std::cos((2.0 * j1 + 1.0) * angles.theta);
  std::array<double, 3> c{s1, c1 * v[1] / ct, c1 * v[2] / ct};
  // The local stage is an exact plane rotation of the two in-target-block
  // components by 2 j2 theta1.
  const double a = 2.0 * j2 * angles.theta1;
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  const double c0 = ca * c[0] + sa * c[1];
  const double c1n = -sa * c[0] + ca * c[1];
  c[0] = c0;
  c[1] = c1n;
  return c;
}

ReducedState3 run_partial_reduced(const ReducedAngles& angles, double j1, double j2,
                                  bool final_diffusion_only) {
  const std::array<double, 3> pre = pre_final_reduced(angles, j1, j2);
  const Mat3 fin = reduced_final_matrix(angles, final_diffusion_only);
  const std::array<double, 3> out = fin.apply(pre);
  ReducedState3 r;
  for (int i = 0; i < 3; ++i) r.components[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)];
  return r;
}

ReducedState3 run_partial_reduced(const BlockLayout& layout, double j1, double j2,
                                  bool final_diffusion_only) {
  return run_partial_reduced(reduced_angles(layout), j1, j2, final_diffusion_only);
}

// ---------------------------------------------------------------------------
// Reduced operators
// ---------------------------------------------------------------------------

namespace {

// Reflection about the reduced uniform vector: 2 v v^T - I.
Mat3 uniform_reflection(const ReducedAngles& angles) {
  const std::array<double, 3> v = reduced_initial(angles);
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r.m[i][j] = 2.0 * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] -
                  (i == j ? 1.0 : 0.0);
    }
  }
  return r;
}

}  // namespace

Mat3 reduced_global_matrix(const ReducedAngles& angles) {
  // Oracle (negate |A_T>) followed by the reflection about the uniform state.
  Mat3 g = uniform_reflection(angles);
  for (int i = 0; i < 3; ++i) g.m[i][0] = -g.m[i][0];
  return g;
}

Mat3 reduced_local_matrix(const ReducedAngles& angles, double j2) {
  const double a = 2.0 * j2 * angles.theta1;
  Mat3 r = Mat3::identity();
  r.m[0][0] = std::cos(a);
  r.m[0][1] = std::sin(a);
  r.m[1][0] = -std::sin(a);
  r.m[1][1] = std::cos(a);
  return r;
}

Mat3 reduced_final_matrix(const ReducedAngles& angles, bool diffusion_only) {
  Mat3 f = uniform_reflection(angles);
  if (!diffusion_only) {
    // Marked reflection after the diffusion: negate the |A_T> row.
    for (int j = 0; j < 3; ++j) f.m[0][j] = -f.m[0][j];
  }
  return f;
}

std::array<double, 3> apply_global_power(const ReducedAngles& angles,
                                         std::int64_t j1,
                                         const std::array<double, 3>& x) {
  if (j1 < 0) throw config_error("iteration count must be non-negative");
  const std::array<double, 3> v = reduced_initial(angles);
  const double ct = std::cos(angles.theta);
  // Plane basis: e1 and n = (0, v2, v3)/cos(theta); the orthogonal direction
  // w = (0, -v3, v2)/cos(theta) picks up a sign per application.
  const std::array<double, 3> n{0.0, v[1] / ct, v[2] / ct};
  const std::array<double, 3> w{0.0, -v[2] / ct, v[1] / ct};
  const double x1 = x[0];
  const double xn = n[1] * x[1] + n[2] * x[2];
  const double xw = w[1] * x[1] + w[2] * x[2];
  const double a = 2.0 * static_cast<double>(j1) * angles.theta;
  const double y1 = std::cos(a) * x1 + std::sin(a) * xn;
  const double yn = -std::sin(a) * x1 + std::cos(a) * xn;
  const double yw = (j1 % 2 == 0) ? xw : -xw;
  return {y1, yn * n[1] + yw * w[1], yn * n[2] + yw * w[2]};
}

Mat3 asymptotic_global_power(const ReducedAngles& angles, std::int64_t j1) {
  const double a = 2.0 * static_cast<double>(j1) * angles.theta;
  const double sg = std::sin(angles.gamma);
  const double cg = std::cos(angles.gamma);
  const double parity = (j1 % 2 == 0) ? 1.0 : -1.0;
  Mat3 r;
  r.m[0][0] = std::cos(a);
  r.m[0][1] = std::sin(a) * sg;
  r.m[0][2] = std::sin(a) * cg;
  r.m[1][0] = -r.m[0][1];
  r.m[1][1] = parity * cg * cg + std::cos(a) * sg * sg;
  r.m[1][2] = sg * cg * (-parity + std::cos(a));
  r.m[2][0] = -r.m[0][2];
  r.m[2][1] = r.m[1][2];
  r.m[2][2] = parity * sg * sg + std::cos(a) * cg * cg;
  return r;
}

double compact_form_xi1(double k) {
  if (!(k >= 2.0)) throw config_error("block count must be at least 2");
  return 1.0 / (2.0 * std::sqrt(k - 1.0)) - 0.5 * std::sqrt((3.0 * k - 4.0) / k);
}

double compact_form_xi2(double k) {
  if (!(k >= 2.0)) throw config_error("block count must be at least 2");
  return 0.5 + 0.5 * std::sqrt((3.0 * k - 4.0) / (k * (k - 1.0)));
}

// ---------------------------------------------------------------------------
// Closed-form diagnostics
// ---------------------------------------------------------------------------

double block_angle_limit(double k, double beta) {
  if (!(k >= 2.0)) throw config_error("block count must be at least 2");
  if (!(beta > 0.0) || !(beta < kPi / 2)) {
    throw config_error("beta must lie in (0, pi/2)");
  }
  const double t = std::tan(beta);
  return std::atan(0.5 / t + (2.0 / k - 0.5) * t);
}

double block_angle_finite(double theta, double theta1, double j1, double j2) {
  const double s = std::sin((2.0 * j1 + 1.0) * theta);
  const double c = std::cos((2.0 * j1 + 1.0) * theta);
  const double c2 = std::cos(2.0 * j2 * theta1);
  const double s2 = std::sin(2.0 * j2 * theta1);
  const double t = std::tan(theta);
  const double t1 = std::tan(theta1);
  const double num = s * c2 + c * t * (s2 / t1 - 1.0);
  const double den = s * s2 + (c * t / t1) * (1.0 - c2);
  return std::atan2(num, den);
}

double finite_n_cancellation_residual(double theta, double theta1, double j1,
                                      double j2) {
  if (!(theta > 0.0) || !(theta < kPi / 2) || !(theta1 > 0.0) ||
      !(theta1 < kPi / 2)) {
    throw config_error("angles must lie in (0, pi/2)");
  }
  const double s = std::sin((2.0 * j1 + 1.0) * theta);
  const double c = std::cos((2.0 * j1 + 1.0) * theta);
  const double c2 = std::cos(2.0 * j2 * theta1);
  const double s2 = std::sin(2.0 * j2 * theta1);
  const double st = std::sin(theta);
  const double st1 = std::sin(theta1);
  const double t = std::tan(theta);
  const double t1 = std::tan(theta1);
  const double lhs =
      -(1.0 / (st * std::cos(theta))) * (0.5 - (st * st) / (st1 * st1)) * c;
  const double rhs = s * c2 + (t / t1) * c * s2 - (1.0 / t1) * s * s2 +
                     (t / (t1 * t1)) * c * c2;
  return lhs - rhs;
}

std::pair<double, double> finite_n_cancellation_residual_derivatives(
    double theta, double theta1, double j1, double j2) {
  const double s = std::sin((2.0 * j1 + 1.0) * theta);
  const double c = std::cos((2.0 * j1 + 1.0) * theta);
  const double c2 = std::cos(2.0 * j2 * theta1);
  const double s2 = std::sin(2.0 * j2 * theta1);
  const double st = std::sin(theta);
  const double st1 = std::sin(theta1);
  const double t = std::tan(theta);
  const double t1 = std::tan(theta1);
  // d/dj1: the compound angle advances by 2 theta per unit of j1.
  const double dlhs_dj1 =
      (2.0 * theta / (st * std::cos(theta))) * (0.5 - (st * st) / (st1 * st1)) * s;
  const double drhs_dj1 = 2.0 * theta * c * c2 - (t / t1) * 2.0 * theta * s * s2 -
                          (1.0 / t1) * 2.0 * theta * c * s2 -
                          (t / (t1 * t1)) * 2.0 * theta * s * c2;
  // d/dj2: the local angle advances by 2 theta1 per unit of j2.
  const double drhs_dj2 = -2.0 * theta1 * s * s2 + (t / t1) * 2.0 * theta1 * c * c2 -
                          (1.0 / t1) * 2.0 * theta1 * s * c2 -
                          (t / (t1 * t1)) * 2.0 * theta1 * c * s2;
  return {dlhs_dj1 - drhs_dj1, -drhs_dj2};
}

// ---------------------------------------------------------------------------
// Strategy comparison
// ---------------------------------------------------------------------------

double binary_strategy_queries(std::int64_t n, std::int64_t k) {
  if (k < 2 || (k & (k - 1)) != 0) {
    throw config_error("binary halving needs a power-of-two block count");
  }
  // Accumulates sqrt(1/2^i) for i = 1..log2(K): each halving searches the
  // remaining half at its own Grover cost.
  double factor = 0.0;
  double term = 1.0;
  for (std::int64_t half = k; half > 1; half /= 2) {
    term /= std::sqrt(2.0);
    factor += term;
  }
  return (kPi / 4.0) * std::sqrt(static_cast<double>(n)) * factor;
}

StrategyQueries compare_strategies(std::int64_t n, std::int64_t k) {
  if (k < 2) throw config_error("strategy comparison needs at least 2 blocks");
  if (n < k) throw config_error("database smaller than its block count");
  StrategyQueries q;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  q.full = (kPi / 4.0) * std::sqrt(nd);
  q.naive = (kd - 1.0) * (kPi / 4.0) * std::sqrt(nd / kd);
  q.gr_simple = (kPi / 4.0) * std::sqrt(nd * (kd - 1.0) / kd);
  const auto [beta, eta] = grk_optimal_params(kd);
  q.beta = beta;
  q.eta = eta;
  q.grk = (kPi / 4.0 + (beta - eta) / std::sqrt(kd)) * std::sqrt(nd);
  if ((k & (k - 1)) == 0) {
    q.binary = binary_strategy_queries(n, k);
  }
  return q;
}

}  // namespace qsearch
