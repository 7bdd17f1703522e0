#pragma once

#include <cstdint>

namespace ebc {

// Field-operation tallies. Every Field::add/sub/mul/div/inv call bumps the
// counters of the calling thread, so wall-clock timings can be replaced by
// deterministic operation counts.
struct OpCounts {
  std::uint64_t mul = 0;  // multiplications, divisions and inversions
  std::uint64_t add = 0;  // additions and subtractions

  std::uint64_t total() const noexcept { return mul + add; }

  OpCounts& operator+=(const OpCounts& o) noexcept {
    mul += o.mul;
    add += o.add;
    return *this;
  }
  friend OpCounts operator-(OpCounts a, const OpCounts& b) noexcept {
    a.mul -= b.mul;
    a.add -= b.add;
    return a;
  }
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

inline OpCounts& thread_op_counts() noexcept {
  thread_local OpCounts counts;
  return counts;
}

// Measures the operations performed on this thread since construction.
class OpMeter {
 public:
  OpMeter() noexcept : start_(thread_op_counts()) {}
  OpCounts elapsed() const noexcept { return thread_op_counts() - start_; }

 private:
  OpCounts start_;
};

}  // namespace ebc
