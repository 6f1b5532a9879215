#pragma once

#include <stdexcept>
#include <string>

namespace spatialvote {

// Bad arguments or malformed data (out-of-range candidate, empty committee, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact search exhausted its node or enumeration budget before proving optimality.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact rule was requested on an instance larger than the configured limits.
class InfeasibleScale : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spatialvote
