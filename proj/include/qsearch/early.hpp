#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsearch/state.hpp"

// Promise-problem oracles and the three single-query algorithms that run on
// them: the one-bit constant/balanced test, its n-bit generalization, and
// hidden-linear-string recovery. All three simulate the standard circuit
// (Hadamard layer, phase oracle, Hadamard layer) on a dense state vector;
// the oracle ancilla is never represented because the phase-kickback form
// (-1)^f(x) is equivalent.

namespace qsearch {

enum class OraclePromise {
  None,
  ConstantOrBalanced,  // f is constant or takes each value on half the inputs
  Linear,              // f(x) = a . x mod 2 for a hidden string a
};

enum class Classification { Constant, Balanced };

// Boolean function on n bits given by its full truth table (size 2^n,
// values 0/1, index i holds f(i)). The declared promise is validated
// eagerly at construction.
class BooleanOracle {
public:
  BooleanOracle(int n_bits, std::vector<std::uint8_t> truth_table,
                OraclePromise promise);

  // Truth table from a text file holding one '0'/'1' character per input in
  // ascending index order (whitespace ignored).
  static BooleanOracle from_file(const std::string& path, OraclePromise promise);

  static BooleanOracle constant(int n_bits, bool value);
  // f(x) = x_bit (bit counted from the least significant position).
  static BooleanOracle balanced_bit(int n_bits, int bit);
  // f(x) = a . x mod 2.
  static BooleanOracle linear(int n_bits, std::uint64_t a);

  int n_bits() const { return n_bits_; }
  std::int64_t n_inputs() const { return std::int64_t{1} << n_bits_; }
  OraclePromise promise() const { return promise_; }
  bool value(std::int64_t x) const { return truth_table_[static_cast<std::size_t>(x)] != 0; }
  const std::vector<std::uint8_t>& truth_table() const { return truth_table_; }

  // Phase-oracle application: negates amplitudes where f(x) = 1. One query.
  void apply_phase(StateVector& state, QueryCounter& counter) const;

private:
  void validate_promise() const;

  int n_bits_;
  std::vector<std::uint8_t> truth_table_;
  OraclePromise promise_;
};

// One-bit constant/balanced decision with a single query (n_bits must be 1).
Classification classify_deutsch(const BooleanOracle& oracle, QueryCounter& counter);

// n-bit constant/balanced decision with a single query: the all-zero
// amplitude after the final Hadamard layer is 1 for constant and 0 for
// balanced functions.
Classification classify_deutsch_jozsa(const BooleanOracle& oracle, QueryCounter& counter);

// Recovers the hidden string of a linear oracle with a single query; the
// final state is the basis state |a> itself.
std::uint64_t recover_hidden_string(const BooleanOracle& oracle, QueryCounter& counter);

// Bit-string rendering of an n-bit index, most significant bit first.
std::string bit_string(std::uint64_t value, int n_bits);

}  // namespace qsearch
