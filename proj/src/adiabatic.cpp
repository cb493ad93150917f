#include "qsearch/adiabatic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "qsearch/errors.hpp"

namespace qsearch {

namespace {

void check_instance(std::int64_t n, std::int64_t m) {
  if (n < 2) throw config_error("need at least 2 elements");
  if (m < 1) throw config_error("need at least 1 target");
  if (m >= n) throw config_error("gap formula degenerates for M >= N");
}

// 2x2 symmetric Hamiltonian in the basis (|A_T>, uniform-over-non-targets):
// H(s) = I - (1-s) |u><u| - s |e1><e1| with u = (sin th, cos th).
struct Ham2 {
  double h11, h12, h22;
};

Ham2 hamiltonian(double sin_th, double cos_th, double s) {
  Ham2 h;
  h.h11 = 1.0 - (1.0 - s) * sin_th * sin_th - s;
  h.h12 = -(1.0 - s) * sin_th * cos_th;
  h.h22 = 1.0 - (1.0 - s) * cos_th * cos_th;
  return h;
}

// Eigen-decomposition of a symmetric 2x2: returns (E1, E2, v1, v2), E1 <= E2.
struct Eigen2 {
  double e1, e2;
  std::array<double, 2> v1, v2;
};

Eigen2 eigen_sym2(const Ham2& h) {
  const double tr = h.h11 + h.h22;
  const double diff = h.h11 - h.h22;
  const double disc = std::sqrt(diff * diff + 4.0 * h.h12 * h.h12);
  Eigen2 e;
  e.e1 = 0.5 * (tr - disc);
  e.e2 = 0.5 * (tr + disc);
  // Ground-state angle from the shifted matrix; stable for h12 -> 0.
  const double phi = 0.5 * std::atan2(2.0 * h.h12, diff);
  e.v1 = {std::cos(phi), std::sin(phi)};
  e.v2 = {-std::sin(phi), std::cos(phi)};
  // Ensure v1 belongs to e1: check Rayleigh quotient against midpoint.
  const double q = e.v1[0] * (h.h11 * e.v1[0] + h.h12 * e.v1[1]) +
                   e.v1[1] * (h.h12 * e.v1[0] + h.h22 * e.v1[1]);
  if (q > 0.5 * tr) std::swap(e.v1, e.v2);
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Gap and bounds
// ---------------------------------------------------------------------------

double gap(std::int64_t n, std::int64_t m, double s) {
  check_instance(n, m);
  if (!(s >= 0.0) || !(s <= 1.0)) throw config_error("s must lie in [0, 1]");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return std::sqrt(nd - 4.0 * (nd - md) * s * (1.0 - s)) / std::sqrt(nd);
}

double min_gap(std::int64_t n, std::int64_t m) {
  check_instance(n, m);
  return std::sqrt(static_cast<double>(m) / static_cast<double>(n));
}

GapCurve gap_curve(std::int64_t n, std::int64_t m, int n_samples) {
  if (n_samples < 2) throw config_error("need at least 2 gap samples");
  GapCurve curve;
  curve.samples.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n_samples - 1);
    curve.samples.emplace_back(s, gap(n, m, s));
  }
  return curve;
}

double linear_runtime_bound(std::int64_t n, std::int64_t m, double epsilon) {
  check_instance(n, m);
  if (!(epsilon > 0.0)) throw config_error("epsilon must be positive");
  return static_cast<double>(n) / (static_cast<double>(m) * epsilon);
}

// ---------------------------------------------------------------------------
// Local schedule
// ---------------------------------------------------------------------------

double LocalSchedule::t_of_s(double s) const {
  if (!(s >= 0.0) || !(s <= 1.0)) throw config_error("s must lie in [0, 1]");
  if (n_prime <= 1.0) return 0.0;
  const double root = std::sqrt(n_prime - 1.0);
  return (n_prime / root) / (2.0 * epsilon) *
         (std::atan(root * (2.0 * s - 1.0)) + std::atan(root));
}

double LocalSchedule::s_of_t(double t) const {
  if (n_prime <= 1.0) return 1.0;
  if (t <= 0.0) return 0.0;
  if (t >= total_time) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  // t_of_s is strictly increasing; bisect to 1e-12 in s.
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (t_of_s(mid) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LocalSchedule local_schedule(std::int64_t n, std::int64_t m, double epsilon) {
  check_instance(n, m);
  if (!(epsilon > 0.0)) throw config_error("epsilon must be positive");
  LocalSchedule sched;
  sched.n_prime = static_cast<double>(n) / static_cast<double>(m);
  sched.epsilon = epsilon;
  sched.total_time = sched.t_of_s(1.0);
  return sched;
}

// ---------------------------------------------------------------------------
// Config and evolution
// ---------------------------------------------------------------------------

AdiabaticConfig AdiabaticConfig::make(std::int64_t n, std::int64_t m, double epsilon,
                                      ScheduleKind schedule) {
  check_instance(n, m);
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw config_error("epsilon must lie in (0, 1]");
  }
  AdiabaticConfig config;
  config.n_elements = n;
  config.n_targets = m;
  config.epsilon = epsilon;
  config.schedule = schedule;
  if (schedule == ScheduleKind::Linear) {
    config.total_time = linear_runtime_bound(n, m, epsilon);
  } else {
    config.total_time = local_schedule(n, m, epsilon).total_time;
  }
  config.dt = std::min(0.01, min_gap(n, m) / 10.0);
  return config;
}

double evolve(const AdiabaticConfig& config) {
  check_instance(config.n_elements, config.n_targets);
  if (!(config.epsilon > 0.0) || config.epsilon > 1.0) {
    throw config_error("epsilon must lie in (0, 1]");
  }
  if (!(config.total_time >= 0.0)) throw config_error("total time must be >= 0");
  if (!(config.dt > 0.0)) throw config_error("dt must be positive");

  const double nd = static_cast<double>(config.n_elements);
  const double md = static_cast<double>(config.n_targets);
  const double sin_th = std::sqrt(md / nd);
  const double cos_th = std::sqrt(1.0 - md / nd);

  using cplx = std::complex<double>;
  std::array<cplx, 2> y{cplx{sin_th, 0.0}, cplx{cos_th, 0.0}};
  const double total = config.total_time;
  if (total == 0.0) return sin_th * sin_th;

  // Fixed schedule shape on the unit interval, rescaled to total_time.
  const LocalSchedule shape =
      config.schedule == ScheduleKind::Local
          ? local_schedule(config.n_elements, config.n_targets, 1.0)
          : LocalSchedule{};
  const auto s_at = [&](double t) {
    if (config.schedule == ScheduleKind::Linear) return t / total;
    return shape.s_of_t(t / total * shape.total_time);
  };

  const auto rhs = [&](double t, const std::array<cplx, 2>& v) {
    const Ham2 h = hamiltonian(sin_th, cos_th, s_at(t));
    const cplx minus_i{0.0, -1.0};
    return std::array<cplx, 2>{minus_i * (h.h11 * v[0] + h.h12 * v[1]),
                               minus_i * (h.h12 * v[0] + h.h22 * v[1])};
  };

  const std::int64_t n_steps =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(total / config.dt)));
  const double h = total / static_cast<double>(n_steps);
  for (std::int64_t step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * h;
    const auto k1 = rhs(t, y);
    std::array<cplx, 2> y2{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
    const auto k2 = rhs(t + 0.5 * h, y2);
    std::array<cplx, 2> y3{y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
    const auto k3 = rhs(t + 0.5 * h, y3);
    std::array<cplx, 2> y4{y[0] + h * k3[0], y[1] + h * k3[1]};
    const auto k4 = rhs(t + h, y4);
    y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  }

  const double norm = std::norm(y[0]) + std::norm(y[1]);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw numeric_error("integrator step too coarse: norm drift above 1e-6");
  }
  return std::norm(y[0]);
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

double eigenstate_coupling(std::int64_t n, std::int64_t m, double s) {
  check_instance(n, m);
  if (!(s >= 0.0) || !(s <= 1.0)) throw config_error("s must lie in [0, 1]");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double sin_th = std::sqrt(md / nd);
  const double cos_th = std::sqrt(1.0 - md / nd);
  const Eigen2 e = eigen_sym2(hamiltonian(sin_th, cos_th, s));
  // dH/ds = |u><u| - |e1><e1| in this basis.
  const double d11 = sin_th * sin_th - 1.0;
  const double d12 = sin_th * cos_th;
  const double d22 = cos_th * cos_th;
  const double me = e.v2[0] * (d11 * e.v1[0] + d12 * e.v1[1]) +
                    e.v2[1] * (d12 * e.v1[0] + d22 * e.v1[1]);
  return std::abs(me);
}

double adiabaticity_ratio(std::int64_t n, std::int64_t m, double s, double total_time,
                          ScheduleKind schedule) {
  check_instance(n, m);
  if (!(total_time > 0.0)) throw config_error("total time must be positive");
  const double g = gap(n, m, s);
  double ds_dt = 0.0;
  if (schedule == ScheduleKind::Linear) {
    ds_dt = 1.0 / total_time;
  } else {
    // The schedule family satisfies ds/dt = eps * gap^2 with eps = C / T,
    // where C is the closed-form runtime at eps = 1.
    const double c1 = local_schedule(n, m, 1.0).total_time;
    ds_dt = (c1 / total_time) * g * g;
  }
  return eigenstate_coupling(n, m, s) * ds_dt / (g * g);
}

double minimal_time_for_fidelity(std::int64_t n, std::int64_t m,
                                 ScheduleKind schedule, double target_fidelity) {
  check_instance(n, m);
  if (!(target_fidelity > 0.0) || !(target_fidelity < 1.0)) {
    throw config_error("target fidelity must lie in (0, 1)");
  }
  AdiabaticConfig config = AdiabaticConfig::make(n, m, 1.0, schedule);
  const auto fidelity_at = [&](double t) {
    config.total_time = t;
    return evolve(config);
  };
  double hi = std::max(1.0, config.total_time);
  int doublings = 0;
  while (fidelity_at(hi) < target_fidelity) {
    hi *= 2.0;
    if (++doublings > 60) {
      throw numeric_error("target fidelity unreachable by time doubling");
    }
  }
  double lo = 0.0;
  for (int iter = 0; iter < 60 && (hi - lo) > 1e-9 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (fidelity_at(mid) >= target_fidelity) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw config_error("slope fit needs two same-length samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) throw config_error("degenerate abscissae in slope fit");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace qsearch
