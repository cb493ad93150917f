#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

// Core state module: dense complex state vectors over a search space of N
// elements, the reflections and diffusions every search pipeline is built
// from, and the block layout used by the two-stage (partial) searches.

namespace qsearch {

using complex = std::complex<double>;

// A search instance: N elements, a sorted set of marked ("target") indices.
struct SearchSpace {
  std::int64_t n_elements = 0;
  std::vector<std::int64_t> marked;  // sorted, unique, all in [0, N)

  SearchSpace(std::int64_t n, std::vector<std::int64_t> marked_indices);

  std::int64_t n_targets() const { return static_cast<std::int64_t>(marked.size()); }
};

// Partition of N elements into K contiguous blocks of size B = N / K.
// target_blocks lists the blocks that contain targets; each of them holds
// exactly targets_per_block targets, placed at the first indices of the
// block. Total targets M = |target_blocks| * targets_per_block.
struct BlockLayout {
  std::int64_t n_elements = 0;       // N
  std::int64_t n_blocks = 0;         // K, divides N, K >= 2
  std::int64_t block_size = 0;       // B = N / K
  std::vector<std::int64_t> target_blocks;  // sorted, unique, in [0, K)
  std::int64_t targets_per_block = 0;       // B_T in [1, B]

  BlockLayout(std::int64_t n, std::int64_t k,
              std::vector<std::int64_t> target_block_indices,
              std::int64_t targets_per_block_count);

  // Layout with target blocks {0, .., k_t - 1}.
  static BlockLayout leading(std::int64_t n, std::int64_t k,
                             std::int64_t k_t = 1, std::int64_t b_t = 1);

  std::int64_t n_target_blocks() const {
    return static_cast<std::int64_t>(target_blocks.size());
  }
  std::int64_t n_targets() const { return n_target_blocks() * targets_per_block; }

  // Marked-index view of the same instance.
  SearchSpace search_space() const;
  std::vector<std::int64_t> marked_indices() const;
  bool is_target_block(std::int64_t block) const;

  // Subspace angles of the exact three-dimensional reduction.
  //   sin(theta)  = sqrt(M / N)        global target fraction
  //   sin(theta1) = sqrt(B_T / B)      target fraction inside a target block
  //   sin(gamma)  = sqrt(K_T / K)      target-block fraction
  double theta() const;
  double theta1() const;
  double gamma() const;
};

// Counts oracle queries. Every operation that consults the marking oracle
// increments it exactly once per application.
struct QueryCounter {
  std::int64_t queries = 0;
};

// Dense complex amplitude vector.
class StateVector {
public:
  StateVector() = default;
  explicit StateVector(std::int64_t n) : amp_(static_cast<std::size_t>(n)) {}

  std::int64_t size() const { return static_cast<std::int64_t>(amp_.size()); }
  complex& operator[](std::int64_t i) { return amp_[static_cast<std::size_t>(i)]; }
  const complex& operator[](std::int64_t i) const {
    return amp_[static_cast<std::size_t>(i)];
  }
  complex* data() { return amp_.data(); }
  const complex* data() const { return amp_.data(); }
  std::vector<complex>& amplitudes() { return amp_; }
  const std::vector<complex>& amplitudes() const { return amp_; }

  double norm_sq() const;

private:
  std::vector<complex> amp_;
};

// |Theta>: the uniform superposition, amplitude 1/sqrt(N) everywhere.
StateVector uniform_state(const SearchSpace& space);
StateVector uniform_state(std::int64_t n);

// Marking oracle as a phase flip: negates the amplitude of every marked
// index. Counts one query.
void reflect_marked(StateVector& state, const SearchSpace& space, QueryCounter& counter);

// Phased marking oracle: multiplies marked amplitudes by `phase` instead of
// -1. Counts one query. reflect_marked is the phase = -1 case.
void reflect_marked_phased(StateVector& state, const SearchSpace& space,
                           complex phase, QueryCounter& counter);

// Inversion about the average: c_i <- 2 * mean - c_i. Equals -I_Theta, the
// negated reflection about the uniform state. No query.
void invert_about_average(StateVector& state);

// Phased diffusion: c_i <- (1 - p) * mean - c_i, where p is the diffusion
// phase factor. p = -1 recovers invert_about_average.
void invert_about_average_phased(StateVector& state, complex p);

// Blockwise inversion about the average: within every block of the layout,
// c_i <- 2 * block_mean - c_i. No query.
void block_invert_about_average(StateVector& state, const BlockLayout& layout);
void block_invert_about_average_phased(StateVector& state, const BlockLayout& layout,
                                       complex p);

// In-place Walsh-Hadamard transform; requires N to be a power of two.
void walsh_hadamard(StateVector& state);

// Sum of |c_i|^2 over the given indices (must lie in range).
double probability_of_set(const StateVector& state, std::span<const std::int64_t> indices);
double probability_of_set(const StateVector& state, const std::vector<std::int64_t>& indices);

// Probability mass of each block under the layout.
std::vector<double> block_probabilities(const StateVector& state, const BlockLayout& layout);

}  // namespace qsearch
