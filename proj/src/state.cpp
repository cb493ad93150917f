#include "qsearch/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsearch/errors.hpp"
#include "qsearch/kernels.hpp"

namespace qsearch {

namespace kernels {

namespace {

// Number of fixed-size reduction chunks covering n elements.
inline std::int64_t chunk_count(std::int64_t n) {
  return (n + reduction_chunk - 1) / reduction_chunk;
}

}  // namespace

complex sum(const complex* a, std::int64_t n) {
  const std::int64_t nchunks = chunk_count(n);
  if (nchunks <= 1) return serial::sum(a, n);
  std::vector<complex> partial(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * reduction_chunk;
    const std::int64_t hi = std::min(n, lo + reduction_chunk);
    partial[static_cast<std::size_t>(c)] = serial::sum(a + lo, hi - lo);
  }
  // Combine in index order so the result never depends on the thread count.
  complex acc{0.0, 0.0};
  for (const complex& p : partial) acc += p;
  return acc;
}

double norm_sq(const complex* a, std::int64_t n) {
  const std::int64_t nchunks = chunk_count(n);
  if (nchunks <= 1) return serial::norm_sq(a, n);
  std::vector<double> partial(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * reduction_chunk;
    const std::int64_t hi = std::min(n, lo + reduction_chunk);
    partial[static_cast<std::size_t>(c)] = serial::norm_sq(a + lo, hi - lo);
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

complex dot(const complex* u, const complex* a, std::int64_t n) {
  const std::int64_t nchunks = chunk_count(n);
  if (nchunks <= 1) return serial::dot(u, a, n);
  std::vector<complex> partial(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * reduction_chunk;
    const std::int64_t hi = std::min(n, lo + reduction_chunk);
    partial[static_cast<std::size_t>(c)] = serial::dot(u + lo, a + lo, hi - lo);
  }
  complex acc{0.0, 0.0};
  for (const complex& p : partial) acc += p;
  return acc;
}

void flip_about(complex* a, std::int64_t n, complex shifted) {
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) a[i] = shifted - a[i];
}

void flip_about_vector(complex* a, const complex* u, std::int64_t n, complex coeff) {
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) a[i] = coeff * u[i] - a[i];
}

void scale(complex* a, std::int64_t n, double factor) {
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) a[i] *= factor;
}

void hadamard_stage(complex* a, std::int64_t n, std::int64_t half) {
  const double inv_sqrt2 = 0.70710678118654752440;
  if (n < parallel_threshold) {
    serial::hadamard_stage(a, n, half);
    return;
  }
  if (half >= reduction_chunk) {
    // Few large blocks: parallelize inside each block.
    for (std::int64_t base = 0; base < n; base += 2 * half) {
#pragma omp parallel for schedule(static)
      for (std::int64_t i = base; i < base + half; ++i) {
        const complex x = a[i];
        const complex y = a[i + half];
        a[i] = (x + y) * inv_sqrt2;
        a[i + half] = (x - y) * inv_sqrt2;
      }
    }
  } else {
    // Many small blocks: one block per iteration.
    const std::int64_t nblocks = n / (2 * half);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nblocks; ++b) {
      const std::int64_t base = b * 2 * half;
      for (std::int64_t i = base; i < base + half; ++i) {
        const complex x = a[i];
        const complex y = a[i + half];
        a[i] = (x + y) * inv_sqrt2;
        a[i + half] = (x - y) * inv_sqrt2;
      }
    }
  }
}

}  // namespace kernels

SearchSpace::SearchSpace(std::int64_t n, std::vector<std::int64_t> marked_indices)
    : n_elements(n), marked(std::move(marked_indices)) {
  if (n <= 0) throw config_error("search space needs at least one element");
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  for (std::int64_t idx : marked) {
    if (idx < 0 || idx >= n)
      throw config_error("marked index " + std::to_string(idx) + " outside [0, " +
                         std::to_string(n) + ")");
  }
}

BlockLayout::BlockLayout(std::int64_t n, std::int64_t k,
                         std::vector<std::int64_t> target_block_indices,
                         std::int64_t targets_per_block_count)
    : n_elements(n),
      n_blocks(k),
      target_blocks(std::move(target_block_indices)),
      targets_per_block(targets_per_block_count) {
  if (n <= 0) throw config_error("block layout needs at least one element");
  if (k < 2) throw config_error("block layout needs at least two blocks");
  if (n % k != 0)
    throw config_error("block count " + std::to_string(k) + " must divide " +
                       std::to_string(n));
  block_size = n / k;
  std::sort(target_blocks.begin(), target_blocks.end());
  target_blocks.erase(std::unique(target_blocks.begin(), target_blocks.end()),
                      target_blocks.end());
  if (target_blocks.empty()) throw config_error("layout needs at least one target block");
  for (std::int64_t b : target_blocks) {
    if (b < 0 || b >= k)
      throw config_error("target block " + std::to_string(b) + " outside [0, " +
                         std::to_string(k) + ")");
  }
  if (targets_per_block < 1 || targets_per_block > block_size)
    throw config_error("targets per block must lie in [1, " +
                       std::to_string(block_size) + "]");
}

BlockLayout BlockLayout::leading(std::int64_t n, std::int64_t k, std::int64_t k_t,
                                 std::int64_t b_t) {
  std::vector<std::int64_t> blocks;
  for (std::int64_t i = 0; i < k_t; ++i) blocks.push_back(i);
  return BlockLayout(n, k, std::move(blocks), b_t);
}

std::vector<std::int64_t> BlockLayout::marked_indices() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n_targets()));
  for (std::int64_t b : target_blocks)
    for (std::int64_t i = 0; i < targets_per_block; ++i)
      out.push_back(b * block_size + i);
  return out;
}

SearchSpace BlockLayout::search_space() const {
  return SearchSpace(n_elements, marked_indices());
}

bool BlockLayout::is_target_block(std::int64_t block) const {
  return std::binary_search(target_blocks.begin(), target_blocks.end(), block);
}

double BlockLayout::theta() const {
  return std::asin(std::sqrt(static_cast<double>(n_targets()) /
                             static_cast<double>(n_elements)));
}

double BlockLayout::theta1() const {
  return std::asin(std::sqrt(static_cast<double>(targets_per_block) /
                             static_cast<double>(block_size)));
}

double BlockLayout::gamma() const {
  return std::asin(std::sqrt(static_cast<double>(n_target_blocks()) /
                             static_cast<double>(n_blocks)));
}

double StateVector::norm_sq() const { return kernels::norm_sq(data(), size()); }

StateVector uniform_state(std::int64_t n) {
  if (n <= 0) throw config_error("uniform state needs at least one element");
  StateVector state(n);
  const complex amp{1.0 / std::sqrt(static_cast<double>(n)), 0.0};
  auto& a = state.amplitudes();
#pragma omp parallel for schedule(static) if (n >= kernels::parallel_threshold)
  for (std::int64_t i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = amp;
  return state;
}

StateVector uniform_state(const SearchSpace& space) {
  return uniform_state(space.n_elements);
}

void reflect_marked(StateVector& state, const SearchSpace& space, QueryCounter& counter) {
  reflect_marked_phased(state, space, complex{-1.0, 0.0}, counter);
}

void reflect_marked_phased(StateVector& state, const SearchSpace& space,
                           complex phase, QueryCounter& counter) {
  if (state.size() != space.n_elements)
    throw config_error("state size does not match search space");
  const std::int64_t m = space.n_targets();
#pragma omp parallel for schedule(static) if (m >= kernels::parallel_threshold)
  for (std::int64_t i = 0; i < m; ++i)
    state[space.marked[static_cast<std::size_t>(i)]] *= phase;
  counter.queries += 1;
}

void invert_about_average(StateVector& state) {
  invert_about_average_phased(state, complex{-1.0, 0.0});
}

void invert_about_average_phased(StateVector& state, complex p) {
  const std::int64_t n = state.size();
  if (n == 0) throw config_error("empty state");
  const complex mean = kernels::sum(state.data(), n) / static_cast<double>(n);
  kernels::flip_about(state.data(), n, (1.0 - p) * mean);
}

void block_invert_about_average(StateVector& state, const BlockLayout& layout) {
  block_invert_about_average_phased(state, layout, complex{-1.0, 0.0});
}

void block_invert_about_average_phased(StateVector& state, const BlockLayout& layout,
                                       complex p) {
  if (state.size() != layout.n_elements)
    throw config_error("state size does not match block layout");
  const std::int64_t b = layout.block_size;
  const std::int64_t k = layout.n_blocks;
#pragma omp parallel for schedule(static) if (layout.n_elements >= kernels::parallel_threshold)
  for (std::int64_t blk = 0; blk < k; ++blk) {
    complex* base = state.data() + blk * b;
    const complex mean = kernels::serial::sum(base, b) / static_cast<double>(b);
    kernels::serial::flip_about(base, b, (1.0 - p) * mean);
  }
}

void walsh_hadamard(StateVector& state) {
  const std::int64_t n = state.size();
  if (n <= 0 || (n & (n - 1)) != 0)
    throw config_error("Walsh-Hadamard needs a power-of-two dimension");
  for (std::int64_t half = 1; half < n; half *= 2)
    kernels::hadamard_stage(state.data(), n, half);
}

double probability_of_set(const StateVector& state,
                          std::span<const std::int64_t> indices) {
  const std::int64_t n = state.size();
  double acc = 0.0;
  for (std::int64_t idx : indices) {
    if (idx < 0 || idx >= n) throw config_error("probability index out of range");
    acc += std::norm(state[idx]);
  }
  return acc;
}

double probability_of_set(const StateVector& state,
                          const std::vector<std::int64_t>& indices) {
  return probability_of_set(state, std::span<const std::int64_t>(indices));
}

std::vector<double> block_probabilities(const StateVector& state,
                                        const BlockLayout& layout) {
  if (state.size() != layout.n_elements)
    throw config_error("state size does not match block layout");
  std::vector<double> probs(static_cast<std::size_t>(layout.n_blocks));
  const std::int64_t b = layout.block_size;
#pragma omp parallel for schedule(static) if (layout.n_elements >= kernels::parallel_threshold)
  for (std::int64_t blk = 0; blk < layout.n_blocks; ++blk)
    probs[static_cast<std::size_t>(blk)] =
        kernels::serial::norm_sq(state.data() + blk * b, b);
  return probs;
}

}  // namespace qsearch
