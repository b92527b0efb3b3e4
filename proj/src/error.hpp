#pragma once

#include <stdexcept>
#include <string>

namespace anarchy {

// Bad user input: malformed files, invalid tables, out-of-range arguments.
// The C API maps this to ANARCHY_ERR_INPUT.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A computation refused to proceed because it would blow a stated limit
// (exhaustive enumeration cap, too many Steiner terminals, ...).
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anarchy
