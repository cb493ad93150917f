#include "doctest.h"

#include <bit>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qsearch/early.hpp"
#include "qsearch/errors.hpp"

using qsearch::BooleanOracle;
using qsearch::Classification;
using qsearch::OraclePromise;
using qsearch::QueryCounter;

TEST_CASE("one-bit test distinguishes all four functions in one query") {
  // The four one-bit functions: two constant, two balanced (identity, not).
  const auto check = [](BooleanOracle oracle, Classification expected) {
    QueryCounter counter;
    CHECK(qsearch::classify_deutsch(oracle, counter) == expected);
    CHECK(counter.queries == 1);
  };
  check(BooleanOracle::constant(1, false), Classification::Constant);
  check(BooleanOracle::constant(1, true), Classification::Constant);
  check(BooleanOracle(1, {0, 1}, OraclePromise::ConstantOrBalanced),
        Classification::Balanced);
  check(BooleanOracle(1, {1, 0}, OraclePromise::ConstantOrBalanced),
        Classification::Balanced);
}

TEST_CASE("constant versus balanced: exhaustive families up to ten bits") {
  for (int bits = 1; bits <= 10; ++bits) {
    for (const bool value : {false, true}) {
      QueryCounter counter;
      CHECK(qsearch::classify_deutsch_jozsa(BooleanOracle::constant(bits, value),
                                            counter) == Classification::Constant);
      CHECK(counter.queries == 1);
    }
    for (int bit = 0; bit < bits; ++bit) {
      QueryCounter counter;
      CHECK(qsearch::classify_deutsch_jozsa(BooleanOracle::balanced_bit(bits, bit),
                                            counter) == Classification::Balanced);
      CHECK(counter.queries == 1);
    }
  }
}

TEST_CASE("hidden strings: all masks recovered exactly, one query each") {
  for (int bits = 1; bits <= 10; ++bits) {
    const std::uint64_t limit = std::uint64_t{1} << bits;
    for (std::uint64_t a = 0; a < limit; ++a) {
      QueryCounter counter;
      const std::uint64_t recovered =
          qsearch::recover_hidden_string(BooleanOracle::linear(bits, a), counter);
      REQUIRE(recovered == a);
      REQUIRE(counter.queries == 1);
    }
  }
}

TEST_CASE("parity functions are a balanced subset of the classifier domain") {
  // Every nonzero linear mask is balanced, so the n-bit classifier must say so.
  for (int bits = 2; bits <= 8; ++bits) {
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;  // full parity
    BooleanOracle linear = BooleanOracle::linear(bits, mask);
    BooleanOracle as_promise(bits,
                             std::vector<std::uint8_t>(
                                 linear.truth_table().begin(), linear.truth_table().end()),
                             OraclePromise::ConstantOrBalanced);
    QueryCounter counter;
    CHECK(qsearch::classify_deutsch_jozsa(as_promise, counter) ==
          Classification::Balanced);
  }
}

TEST_CASE("phase oracle multiplies amplitudes by the function sign") {
  const BooleanOracle oracle = BooleanOracle::balanced_bit(3, 1);
  qsearch::StateVector state = qsearch::uniform_state(8);
  QueryCounter counter;
  oracle.apply_phase(state, counter);
  CHECK(counter.queries == 1);
  for (std::int64_t x = 0; x < 8; ++x) {
    const double expected = ((x >> 1) & 1) ? -1.0 : 1.0;
    CHECK(state[x].real() ==
          doctest::Approx(expected / std::sqrt(8.0)).epsilon(1e-14));
  }
}

TEST_CASE("promise validation rejects functions outside the declared class") {
  // 3 ones out of 4 inputs: neither constant nor balanced.
  CHECK_THROWS_AS(BooleanOracle(2, {1, 1, 1, 0}, OraclePromise::ConstantOrBalanced),
                  qsearch::config_error);
  // Not linear: f(0) = 1.
  CHECK_THROWS_AS(BooleanOracle(2, {1, 0, 0, 1}, OraclePromise::Linear),
                  qsearch::config_error);
  // Not linear: violates additivity even though f(0) = 0.
  CHECK_THROWS_AS(BooleanOracle(2, {0, 1, 1, 1}, OraclePromise::Linear),
                  qsearch::config_error);
  // Wrong table size.
  CHECK_THROWS_AS(BooleanOracle(2, {0, 1}, OraclePromise::None), qsearch::config_error);
}

TEST_CASE("truth tables load from disk and honor the promise") {
  const std::string good = "qsearch_test_good_table.txt";
  {
    std::ofstream out(good);
    out << "0 1\n1 0\n";  // balanced on 2 bits
  }
  const BooleanOracle oracle = BooleanOracle::from_file(good, OraclePromise::ConstantOrBalanced);
  CHECK(oracle.n_bits() == 2);
  QueryCounter counter;
  CHECK(qsearch::classify_deutsch_jozsa(oracle, counter) == Classification::Balanced);
  std::remove(good.c_str());

  const std::string bad = "qsearch_test_bad_table.txt";
  {
    std::ofstream out(bad);
    out << "0 1 1\n";  // not a power of two
  }
  CHECK_THROWS_AS(BooleanOracle::from_file(bad, OraclePromise::None),
                  qsearch::config_error);
  std::remove(bad.c_str());
  CHECK_THROWS_AS(BooleanOracle::from_file("no_such_file_here.txt", OraclePromise::None),
                  qsearch::config_error);
}

TEST_CASE("bit strings render most significant bit first") {
  CHECK(qsearch::bit_string(0b0101, 4) == "0101");
  CHECK(qsearch::bit_string(0, 3) == "000");
  CHECK(qsearch::bit_string(0b1, 1) == "1");
}
