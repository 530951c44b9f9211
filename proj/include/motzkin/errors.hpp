#pragma once

#include <stdexcept>
#include <string>

namespace motzkin {

/// Caller violated a precondition (bad size, mismatched orders, unknown selector).
class usage_error : public std::invalid_argument {
 public:
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Input lies outside the domain of a mathematical operation.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// An algebraic invariant that must hold by construction was violated.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace motzkin
