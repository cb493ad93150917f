#pragma once

#include <stdexcept>
#include <string>

namespace qsearch {

// Base class for all library errors. The CLI maps subclasses onto process
// exit codes, so new error types should derive from one of the three
// categories below rather than from error directly.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or out-of-domain argument: bad sizes, broken
// promises, malformed truth tables, parameters outside a formula's domain.
// CLI exit code 2.
class config_error : public error {
public:
  explicit config_error(const std::string& what) : error(what) {}
};

// The requested algorithm has no solution for this configuration (for
// example no phase pair closes the search at any allowed iteration count).
// CLI exit code 3.
class infeasible_error : public error {
public:
  explicit infeasible_error(const std::string& what) : error(what) {}
};

// Numerical failure: norm drift beyond tolerance, non-convergence of an
// iterative solver, a residual check that should have passed. CLI exit
// code 4.
class numeric_error : public error {
public:
  explicit numeric_error(const std::string& what) : error(what) {}
};

}  // namespace qsearch
