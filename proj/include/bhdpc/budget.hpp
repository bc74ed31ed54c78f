#pragma once

#include <chrono>
#include <string>

#include "bhdpc/errors.hpp"

namespace bhdpc {

/// Wall-clock budget for a search. Polls the clock every 1024 ticks.
class Deadline {
 public:
  explicit Deadline(std::chrono::milliseconds budget)
      : end_(std::chrono::steady_clock::now() + budget) {}

  bool expired() {
    if (++ticks_ % 1024 != 0) return false;
    return std::chrono::steady_clock::now() > end_;
  }

  void check(const std::string& what) {
    if (expired()) throw BudgetExceeded(what + ": time budget exceeded");
  }

 private:
  std::chrono::steady_clock::time_point end_;
  unsigned long ticks_ = 0;
};

}  // namespace bhdpc
