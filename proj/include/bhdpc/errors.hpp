#pragma once

#include <stdexcept>
#include <string>

namespace bhdpc {

/// Malformed vertex, instance, or file contents supplied by a caller.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search ran past its time budget. Never means "no solution".
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction step reached a state its invariants rule out.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bhdpc
