#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ebc/matrix.hpp"

namespace ebc {

// Incremental bookkeeping of a user's knowledge space.
//
// Keeps an invertible N×N matrix C̃ whose first r rows are the received
// packets (up to row swaps) and its inverse B̃. The last N-r columns of B̃
// span the null space of the received rows, so innovativeness of w is the
// test  w·b_j != 0  for some j >= r. Each update costs O(N²).
class NullTracker {
 public:
  NullTracker() = default;
  NullTracker(Field field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t rank() const noexcept { return rank_; }
  bool complete() const noexcept { return rank_ == n_; }

  bool is_innovative(std::span<const Elem> w) const;

  // Adds w to the knowledge space. Throws NotInnovative if w is already in it.
  void update(std::span<const Elem> w);
  // Returns false instead of throwing.
  bool try_update(std::span<const Elem> w);

  const Matrix& c_tilde() const noexcept { return c_; }
  const Matrix& b_tilde() const noexcept { return b_; }
  // (N-r)×N matrix whose rows are the columns b_r..b_{N-1} of B̃.
  Matrix null_basis() const;
  // Received packets in arrival order.
  const Matrix& received() const noexcept { return received_; }
  // perm()[j] is the original identity index now sitting at column j of B̃.
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }

 private:
  // Lowest j >= rank with w·b_j != 0, or n when none.
  std::size_t first_hit(std::span<const Elem> w) const;

  Field field_;
  std::size_t n_ = 0;
  std::size_t rank_ = 0;
  Matrix c_;
  Matrix b_;
  Matrix received_;
  std::vector<std::size_t> perm_;
};

}  // namespace ebc
