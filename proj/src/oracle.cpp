#include <bit>
#include <cctype>
#include <fstream>
#include <string>

#include "qsearch/early.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/kernels.hpp"

namespace qsearch {

BooleanOracle::BooleanOracle(int n_bits, std::vector<std::uint8_t> truth_table,
                             OraclePromise promise)
    : n_bits_(n_bits), truth_table_(std::move(truth_table)), promise_(promise) {
  if (n_bits_ < 1 || n_bits_ > 30)
    throw config_error("oracle bit count must lie in [1, 30]");
  const std::size_t expected = std::size_t{1} << n_bits_;
  if (truth_table_.size() != expected)
    throw config_error("truth table holds " + std::to_string(truth_table_.size()) +
                       " entries, expected " + std::to_string(expected));
  for (std::uint8_t v : truth_table_)
    if (v > 1) throw config_error("truth table entries must be 0 or 1");
  validate_promise();
}

void BooleanOracle::validate_promise() const {
  if (promise_ == OraclePromise::None) return;
  std::int64_t ones = 0;
  for (std::uint8_t v : truth_table_) ones += v;
  const std::int64_t n = n_inputs();
  if (promise_ == OraclePromise::ConstantOrBalanced) {
    if (ones != 0 && ones != n && ones != n / 2)
      throw config_error("function is neither constant nor balanced (" +
                         std::to_string(ones) + " ones out of " + std::to_string(n) + ")");
    return;
  }
  // Linear: f(x) = a . x with a read off from the single-bit inputs, then
  // checked everywhere.
  std::uint64_t a = 0;
  if (truth_table_[0] != 0) throw config_error("linear function must vanish at 0");
  for (int bit = 0; bit < n_bits_; ++bit)
    if (truth_table_[std::size_t{1} << bit]) a |= std::uint64_t{1} << bit;
  for (std::int64_t x = 0; x < n; ++x) {
    const int expected =
        std::popcount(static_cast<std::uint64_t>(x) & a) & 1;
    if (truth_table_[static_cast<std::size_t>(x)] != expected)
      throw config_error("function is not linear: mismatch at input " + std::to_string(x));
  }
}

BooleanOracle BooleanOracle::from_file(const std::string& path, OraclePromise promise) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open truth table file: " + path);
  std::vector<std::uint8_t> table;
  char c;
  while (in.get(c)) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '0')
      table.push_back(0);
    else if (c == '1')
      table.push_back(1);
    else
      throw config_error(std::string("unexpected character '") + c +
                         "' in truth table file");
  }
  if (table.empty() || (table.size() & (table.size() - 1)) != 0)
    throw config_error("truth table file must hold a power-of-two number of digits");
  const int n_bits = std::countr_zero(table.size());
  return BooleanOracle(n_bits, std::move(table), promise);
}

BooleanOracle BooleanOracle::constant(int n_bits, bool value) {
  std::vector<std::uint8_t> table(std::size_t{1} << n_bits,
                                  static_cast<std::uint8_t>(value ? 1 : 0));
  return BooleanOracle(n_bits, std::move(table), OraclePromise::ConstantOrBalanced);
}

BooleanOracle BooleanOracle::balanced_bit(int n_bits, int bit) {
  if (bit < 0 || bit >= n_bits) throw config_error("balanced bit index out of range");
  std::vector<std::uint8_t> table(std::size_t{1} << n_bits);
  for (std::size_t x = 0; x < table.size(); ++x)
    table[x] = static_cast<std::uint8_t>((x >> bit) & 1);
  return BooleanOracle(n_bits, std::move(table), OraclePromise::ConstantOrBalanced);
}

BooleanOracle BooleanOracle::linear(int n_bits, std::uint64_t a) {
  if (n_bits < 64 && a >= (std::uint64_t{1} << n_bits))
    throw config_error("hidden string does not fit in the bit count");
  std::vector<std::uint8_t> table(std::size_t{1} << n_bits);
  for (std::size_t x = 0; x < table.size(); ++x)
    table[x] = static_cast<std::uint8_t>(std::popcount(x & a) & 1);
  return BooleanOracle(n_bits, std::move(table), OraclePromise::Linear);
}

void BooleanOracle::apply_phase(StateVector& state, QueryCounter& counter) const {
  const std::int64_t n = n_inputs();
  if (state.size() != n) throw config_error("state size does not match oracle");
#pragma omp parallel for schedule(static) if (n >= kernels::parallel_threshold)
  for (std::int64_t x = 0; x < n; ++x)
    if (truth_table_[static_cast<std::size_t>(x)]) state[x] = -state[x];
  counter.queries += 1;
}

std::string bit_string(std::uint64_t value, int n_bits) {
  std::string out(static_cast<std::size_t>(n_bits), '0');
  for (int bit = 0; bit < n_bits; ++bit)
    if ((value >> bit) & 1) out[static_cast<std::size_t>(n_bits - 1 - bit)] = '1';
  return out;
}

}  // namespace qsearch
