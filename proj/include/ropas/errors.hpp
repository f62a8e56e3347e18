#pragma once

#include <stdexcept>
#include <string>

namespace ropas {

// Invariant/contract failures: malformed dags, invalid instances, regimen
// mismatches, out-of-range file contents.  The CLI maps these to exit code 2.
struct validation_error : std::invalid_argument {
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Resource-limit refusals (evolution node_limit, per-node assignment_limit,
// simulation round cap).  The CLI maps these to exit code 3.
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable/unwritable files and JSON syntax errors.  Exit code 1.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ropas
