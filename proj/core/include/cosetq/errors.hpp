#pragma once

#include <stdexcept>
#include <string>

namespace cosetq {

/// Invalid input to a public operation (bad label, negative factorial, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A consistency check inside a computation failed. Never caused by valid input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cosetq
