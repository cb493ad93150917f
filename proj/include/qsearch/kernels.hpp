#pragma once

#include <complex>
#include <cstdint>
#include <vector>

// Low-level amplitude kernels.
//
// Two implementations live side by side:
//   * kernels::serial  — plain textbook loops, kept as the reference the
//     unit tests and the benchmark compare against;
//   * kernels (dispatch) — the production path, OpenMP-parallel above a size
//     threshold.
//
// Reductions in the production path accumulate fixed-size chunk partials and
// combine them in index order. That makes every result invariant to the
// thread count (and to OpenMP being disabled entirely), which the command
// line harness relies on for byte-identical reruns.

namespace qsearch::kernels {

using complex = std::complex<double>;

// Minimum problem size before the parallel path is used. Below this the
// fork/join overhead dominates.
inline constexpr std::int64_t parallel_threshold = 1 << 14;

// Fixed reduction chunk size; must not depend on the thread count.
inline constexpr std::int64_t reduction_chunk = 1 << 12;

namespace serial {

inline complex sum(const complex* a, std::int64_t n) {
  complex acc{0.0, 0.0};
  for (std::int64_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

inline double norm_sq(const complex* a, std::int64_t n) {
  double acc = 0.0;
  for (std::int64_t i = 0; i < n; ++i) acc += std::norm(a[i]);
  return acc;
}

// <u|a> = sum conj(u[i]) * a[i].
inline complex dot(const complex* u, const complex* a, std::int64_t n) {
  complex acc{0.0, 0.0};
  for (std::int64_t i = 0; i < n; ++i) acc += std::conj(u[i]) * a[i];
  return acc;
}

// a[i] <- shifted - a[i]; with shifted = 2 * mean this is the inversion
// about the average.
inline void flip_about(complex* a, std::int64_t n, complex shifted) {
  for (std::int64_t i = 0; i < n; ++i) a[i] = shifted - a[i];
}

inline void scale(complex* a, std::int64_t n, double factor) {
  for (std::int64_t i = 0; i < n; ++i) a[i] *= factor;
}

// a[i] <- coeff * u[i] - a[i]; with coeff = 2 <u|a> this is the negated
// reflection about the unit vector u.
inline void flip_about_vector(complex* a, const complex* u, std::int64_t n,
                              complex coeff) {
  for (std::int64_t i = 0; i < n; ++i) a[i] = coeff * u[i] - a[i];
}

// One Walsh-Hadamard butterfly stage: pairs (i, i + half) within each block
// of size 2 * half are mapped to ((a + b), (a - b)) / sqrt(2).
inline void hadamard_stage(complex* a, std::int64_t n, std::int64_t half) {
  const double inv_sqrt2 = 0.70710678118654752440;
  for (std::int64_t base = 0; base < n; base += 2 * half) {
    for (std::int64_t i = base; i < base + half; ++i) {
      const complex x = a[i];
      const complex y = a[i + half];
      a[i] = (x + y) * inv_sqrt2;
      a[i + half] = (x - y) * inv_sqrt2;
    }
  }
}

}  // namespace serial

// Deterministic chunked sum: identical bit pattern for any thread count.
complex sum(const complex* a, std::int64_t n);
double norm_sq(const complex* a, std::int64_t n);
complex dot(const complex* u, const complex* a, std::int64_t n);
void flip_about(complex* a, std::int64_t n, complex shifted);
void flip_about_vector(complex* a, const complex* u, std::int64_t n, complex coeff);
void scale(complex* a, std::int64_t n, double factor);
void hadamard_stage(complex* a, std::int64_t n, std::int64_t half);

}  // namespace qsearch::kernels
