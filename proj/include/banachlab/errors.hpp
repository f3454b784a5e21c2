#pragma once

#include <stdexcept>
#include <string>

namespace banach {

// Bad arguments or malformed inputs (CLI exit code 2).
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a hard resource cap, e.g. 2^n sign enumeration with n > 24
// (CLI exit code 3).
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A randomized construction exhausted its retry budget (CLI exit code 4).
class construction_error : public std::runtime_error {
 public:
  explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace banach
