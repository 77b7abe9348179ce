#pragma once

#include <stdexcept>
#include <string>

namespace cryoctl {

/// A value violates a documented invariant (negative voltage, resolution out
/// of range, ...). The message names the violated invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: scenario JSON, budget JSON or a stimulus file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cryoctl
