#include "ebc/null_tracker.hpp"

#include <numeric>
#include <utility>

namespace ebc {

NullTracker::NullTracker(Field field, std::size_t n)
    : field_(field),
      n_(n),
      c_(Matrix::identity(field, n)),
      b_(Matrix::identity(field, n)),
      received_(field, 0, n),
      perm_(n) {
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
}

std::size_t NullTracker::first_hit(std::span<const Elem> w) const {
  if (w.size() != n_) throw DimensionMismatch("vector length differs from tracker dimension");
  for (std::size_t j = rank_; j < n_; ++j) {
    Elem acc = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (w[i] != 0 && b_(i, j) != 0) acc = field_.add(acc, field_.mul(w[i], b_(i, j)));
    if (acc != 0) return j;
  }
  return n_;
}

bool NullTracker::is_innovative(std::span<const Elem> w) const { return first_hit(w) < n_; }

bool NullTracker::try_update(std::span<const Elem> w) {
  const std::size_t j = first_hit(w);
  if (j == n_) return false;
  const std::size_t r = rank_;

  // Bring the hit column into position r; C̃ stays the inverse of B̃ when
  // its rows are swapped alike.
  if (j != r) {
    for (std::size_t i = 0; i < n_; ++i) std::swap(b_(i, r), b_(i, j));
    c_.swap_rows(r, j);
    std::swap(perm_[r], perm_[j]);
  }

  // u = wᵀB̃; replacing row r of C̃ by w is the rank-one change
  // C̃' = C̃ + e_r (w - c_r), whose inverse is B̃ - b_r (u - e_r) / u_r.
  Vec u(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (w[i] == 0) continue;
    for (std::size_t k = 0; k < n_; ++k)
      if (b_(i, k) != 0) u[k] = field_.add(u[k], field_.mul(w[i], b_(i, k)));
  }
  const Elem d_inv = field_.inv(u[r]);
  u[r] = field_.sub(u[r], 1);
  for (auto& v : u) v = v == 0 ? 0 : field_.mul(v, d_inv);

  Vec br(n_);
  for (std::size_t i = 0; i < n_; ++i) br[i] = b_(i, r);
  for (std::size_t i = 0; i < n_; ++i) {
    if (br[i] == 0) continue;
    for (std::size_t k = 0; k < n_; ++k)
      if (u[k] != 0) b_(i, k) = field_.sub(b_(i, k), field_.mul(br[i], u[k]));
  }
  std::copy(w.begin(), w.end(), c_.row(r).begin());
  received_.append_row(w);
  ++rank_;
  return true;
}

void NullTracker::update(std::span<const Elem> w) {
  if (!try_update(w)) throw NotInnovative();
}

Matrix NullTracker::null_basis() const {
  Matrix out(field_, n_ - rank_, n_);
  for (std::size_t j = rank_; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i) out(j - rank_, i) = b_(i, j);
  return out;
}

}  // namespace ebc
