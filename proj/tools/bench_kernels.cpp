// Timing comparison between the serial reference kernels and the production
// (OpenMP-dispatched) kernels, plus a whole-iteration measurement. Prints a
// CSV table to stdout.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qsearch/grover.hpp"
#include "qsearch/kernels.hpp"
#include "qsearch/state.hpp"

namespace {

using qsearch::kernels::complex;

double time_best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (ms < best) best = ms;
  }
  return best;
}

std::vector<complex> make_state(std::int64_t n) {
  std::vector<complex> a(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i % 97) / 97.0;
    a[static_cast<std::size_t>(i)] = complex{x, 1.0 - x};
  }
  return a;
}

// Keeps reductions from being optimized away.
volatile double g_sink = 0.0;

void report(const char* kernel, std::int64_t n, double serial_ms,
            double dispatch_ms) {
  std::printf("%s,%lld,%.4f,%.4f,%.2f\n", kernel,
              static_cast<long long>(n), serial_ms, dispatch_ms,
              dispatch_ms > 0.0 ? serial_ms / dispatch_ms : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("# openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("# openmp disabled; dispatch path falls back to serial\n");
#endif
  std::printf("kernel,n,serial_ms,dispatch_ms,speedup\n");

  const int repeats = 5;
  for (const std::int64_t n :
       {std::int64_t{1} << 16, std::int64_t{1} << 20, std::int64_t{1} << 24}) {
    std::vector<complex> a = make_state(n);
    const std::vector<complex> u = make_state(n);

    report("norm_sq", n, time_best_of(repeats, [&] {
             g_sink = qsearch::kernels::serial::norm_sq(a.data(), n);
           }),
           time_best_of(repeats, [&] {
             g_sink = qsearch::kernels::norm_sq(a.data(), n);
           }));

    report("dot", n, time_best_of(repeats, [&] {
             g_sink = qsearch::kernels::serial::dot(u.data(), a.data(), n).real();
           }),
           time_best_of(repeats, [&] {
             g_sink = qsearch::kernels::dot(u.data(), a.data(), n).real();
           }));

    report("flip_about", n, time_best_of(repeats, [&] {
             qsearch::kernels::serial::flip_about(a.data(), n, complex{0.5, 0.0});
           }),
           time_best_of(repeats, [&] {
             qsearch::kernels::flip_about(a.data(), n, complex{0.5, 0.0});
           }));

    report("hadamard_stage", n, time_best_of(repeats, [&] {
             qsearch::kernels::serial::hadamard_stage(a.data(), n, n / 2);
           }),
           time_best_of(repeats, [&] {
             qsearch::kernels::hadamard_stage(a.data(), n, n / 2);
           }));
  }

  // Whole-algorithm number: one optimally iterated single-target search.
  for (const std::int64_t n : {std::int64_t{1} << 20, std::int64_t{1} << 22}) {
    const qsearch::SearchSpace space(n, {std::int64_t{7}});
    const std::int64_t j = qsearch::plan_grover(n, 1).j_opt;
    const double ms = time_best_of(2, [&] {
      const auto [state, counter] = qsearch::run_grover(space, j);
      g_sink = std::norm(state[7]);
    });
    std::printf("# full_search,n=%lld,j=%lld: %.2f ms\n",
                static_cast<long long>(n), static_cast<long long>(j), ms);
  }
  return 0;
}
