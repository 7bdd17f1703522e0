#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ebc/matrix.hpp"
#include "ebc/null_tracker.hpp"

namespace ebc {

// One receiver's coding state: the received encoding vectors C_k, a basis
// B_k of their orthogonal complement, and the support mask b̃_k of B_k.
class UserState {
 public:
  UserState() = default;

  // C is reduced to its linearly independent rows; B_k is derived from it.
  static UserState from_received(const Matrix& c);
  // Uses the rows of b as B_k (dependent rows are dropped) and derives C_k as
  // its null space. Row order of b is kept, which matters for row selection.
  static UserState from_basis(const Matrix& b);
  // Snapshot of a tracker: C_k = received rows, B_k = trailing columns of B̃.
  static UserState from_tracker(const NullTracker& t);

  const Field& field() const noexcept { return received_.field(); }
  std::size_t n() const noexcept { return received_.cols(); }
  std::size_t rank() const noexcept { return received_.rows(); }
  bool finished() const noexcept { return rank() == n(); }

  const Matrix& received() const noexcept { return received_; }
  const Matrix& basis() const noexcept { return basis_; }
  // btilde()[j] == 1 iff column j of basis() is nonzero.
  const std::vector<std::uint8_t>& btilde() const noexcept { return btilde_; }

  // Re-checks independence, orthogonality, rank sum and the mask; throws
  // DimensionMismatch on violation.
  void validate() const;

 private:
  UserState(Matrix received, Matrix basis);

  Matrix received_;
  Matrix basis_;
  std::vector<std::uint8_t> btilde_;
};

// A set of unfinished users sharing the field and packet count.
struct Scenario {
  Field field;
  std::size_t n = 0;
  std::vector<UserState> users;

  std::size_t k() const noexcept { return users.size(); }
  // Appends the user unless it has already decoded everything.
  void add(UserState u);
};

// Text format: "q N K [poly=<hex>]", then per user a line "r_k" followed by
// r_k rows of C_k. Users with r_k = N are dropped on read.
Scenario read_scenario(std::istream& in);
void write_scenario(std::ostream& out, const Scenario& s);

// Coefficients α_kl of K linear forms in L variables; every row nonzero.
struct LinearForms {
  Matrix coeffs;

  std::size_t k() const noexcept { return coeffs.rows(); }
  std::size_t l() const noexcept { return coeffs.cols(); }
  // Throws ZeroRow if some form is identically zero.
  void validate() const;
};

}  // namespace ebc
